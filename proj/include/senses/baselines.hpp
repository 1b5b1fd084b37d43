#pragma once

#include <cstdint>
#include <vector>

#include "senses/config.hpp"
#include "senses/marl.hpp"
#include "senses/sim.hpp"

namespace senses {

// Comp: sensors stay wide open, every datum is uploaded, and each edge
// server hash-dedups what it stores and forwards.
inline SlotDecision comp_step(const Topology& topo, const SimState&) {
  SlotDecision d;
  d.actions.assign(topo.sensors.size(), RadiusAction::Increase);
  d.dedup = DedupMode::ServerHash;
  return d;
}

// Load: sensors stay wide open; devices whose battery has fallen below the
// offload threshold push formatting to their server and ship raw bytes.
inline SlotDecision load_step(const Topology& topo, const SimState& st,
                              double offload_soc) {
  SlotDecision d;
  d.actions.assign(topo.sensors.size(), RadiusAction::Increase);
  d.dedup = DedupMode::Retain;
  d.offload.resize(topo.devices.size());
  for (std::size_t i = 0; i < topo.devices.size(); ++i)
    d.offload[i] = st.alive[i] && st.batteries[i].soc < offload_soc;
  return d;
}

// Shared policy-function factory. Senses and Senses-re require trained
// parameters; the caller owns surcharge flags via SimParams.
inline PolicyFn make_policy(PolicyKind kind, const Topology& topo,
                            const SimParams& params, const PolicyParams* trained) {
  switch (kind) {
    case PolicyKind::Comp:
      return [](const Topology& t, const SimState& st, Rng&) {
        return comp_step(t, st);
      };
    case PolicyKind::Load: {
      const double threshold = params.offload_soc;
      return [threshold](const Topology& t, const SimState& st, Rng&) {
        return load_step(t, st, threshold);
      };
    }
    case PolicyKind::Senses:
    case PolicyKind::SensesRe: {
      if (!trained)
        throw MissingParams(std::string("policy '") + policy_name(kind) +
                            "' requires trained parameters");
      // Senses-re keeps the learned coverage control but retains every
      // fixed-sensor duplicate instead of staging.
      const DedupMode mode = kind == PolicyKind::Senses ? DedupMode::Staged
                                                        : DedupMode::Retain;
      return make_marl_policy(topo, *trained, mode, params.weak_threshold,
                              params.rescue_soc, params.horizon);
    }
  }
  throw ValidationError("make_policy: unknown policy kind");
}

// Per-policy parameter adjustments: only the learned policies run inference
// on the edge servers.
inline SimParams params_for_policy(PolicyKind kind, SimParams base) {
  base.inference_surcharge =
      kind == PolicyKind::Senses || kind == PolicyKind::SensesRe;
  return base;
}

}  // namespace senses
