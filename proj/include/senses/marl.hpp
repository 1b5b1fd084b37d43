#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "senses/hyperparams.hpp"
#include "senses/mlp.hpp"
#include "senses/sim.hpp"

namespace senses {

// One agent per edge server. It controls the adjustable sensors owned by the
// control devices linked to that server.
struct AgentLayout {
  int server = 0;
  std::vector<int> devices;        // linked control devices
  std::vector<int> owned_sensors;  // every sensor owned by those devices
  std::vector<int> sensors;        // the adjustable subset the agent steers
  int obs_size = 0;
};

inline std::vector<AgentLayout> build_agents(const Topology& topo) {
  std::vector<AgentLayout> agents(topo.servers.size());
  for (std::size_t j = 0; j < topo.servers.size(); ++j) agents[j].server = static_cast<int>(j);
  for (const ControlDevice& d : topo.devices)
    agents[d.server_links.front().server].devices.push_back(d.id);
  for (const Sensor& s : topo.sensors) {
    const int j = topo.devices[s.owner_device].server_links.front().server;
    agents[j].owned_sensors.push_back(s.id);
    if (s.adjustable) agents[j].sensors.push_back(s.id);
  }
  for (AgentLayout& a : agents)
    a.obs_size = static_cast<int>(a.owned_sensors.size() + 2 * a.devices.size()) + 3;
  return agents;
}

struct Observations {
  std::vector<std::vector<double>> per_agent;
  std::vector<double> global;  // concatenation, in agent order
  double coverage = 0;
};

// Per-agent view: owned radii (normalized), device soc, device loads, own
// server load, area coverage, episode progress. All entries land in [0, 1].
inline Observations build_observations(const Topology& topo, const SimState& st,
                                       const std::vector<AgentLayout>& agents,
                                       int horizon) {
  Observations obs;
  obs.coverage = coverage_fraction(topo, effective_radii(topo, st), st.alive);
  const double slot_norm =
      horizon > 0 ? std::min(1.0, static_cast<double>(st.slot) / horizon) : 0.0;
  obs.per_agent.reserve(agents.size());
  for (const AgentLayout& a : agents) {
    std::vector<double> v;
    v.reserve(a.obs_size);
    for (int s : a.owned_sensors)
      v.push_back(topo.sensors[s].adjustable
                      ? st.radii[s] / topo.sensors[s].r_max
                      : 1.0);
    for (int d : a.devices) v.push_back(st.batteries[d].soc);
    for (int d : a.devices) v.push_back(st.device_loads[d]);
    v.push_back(st.server_loads[a.server]);
    v.push_back(obs.coverage);
    v.push_back(slot_norm);
    obs.per_agent.push_back(std::move(v));
  }
  for (const auto& v : obs.per_agent)
    obs.global.insert(obs.global.end(), v.begin(), v.end());
  return obs;
}

// Softmax over each sensor's 3 logits.
inline std::vector<std::array<double, 3>> policy_distribution(
    const Mlp& actor, std::span<const double> obs) {
  const std::vector<double> logits = actor.forward(obs);
  if (logits.size() % 3 != 0)
    throw ShapeMismatch("policy_distribution: actor output not a multiple of 3");
  std::vector<std::array<double, 3>> dist(logits.size() / 3);
  for (std::size_t s = 0; s < dist.size(); ++s) {
    const double* l = &logits[3 * s];
    const double m = std::max({l[0], l[1], l[2]});
    double z = 0;
    for (int k = 0; k < 3; ++k) {
      dist[s][k] = std::exp(l[k] - m);
      z += dist[s][k];
    }
    for (int k = 0; k < 3; ++k) dist[s][k] /= z;
  }
  return dist;
}

// Generalized advantage estimates over one episode segment. values carries a
// trailing bootstrap entry, so |values| = |rewards| + 1.
inline std::vector<double> gae(std::span<const double> rewards,
                               std::span<const double> values, double gamma,
                               double lambda) {
  if (values.size() != rewards.size() + 1)
    throw LengthMismatch("gae: |values| must equal |rewards| + 1");
  const std::size_t n = rewards.size();
  std::vector<double> adv(n, 0.0);
  double tail = 0;
  for (std::size_t t = n; t-- > 0;) {
    const double delta = rewards[t] + gamma * values[t + 1] - values[t];
    tail = delta + gamma * lambda * tail;
    adv[t] = tail;
  }
  return adv;
}

// GAE-consistent value targets: G = A + V.
inline std::vector<double> gae_returns(std::span<const double> advantages,
                                       std::span<const double> values) {
  if (advantages.size() != values.size())
    throw LengthMismatch("gae_returns: length mismatch");
  std::vector<double> g(advantages.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = advantages[i] + values[i];
  return g;
}

struct LossGrad {
  double loss = 0;
  std::vector<double> grad;
};

// Squared-error critic objective: sum (G - V)^2, gradient w.r.t. V.
inline LossGrad critic_loss(std::span<const double> returns,
                            std::span<const double> values) {
  if (returns.size() != values.size())
    throw LengthMismatch("critic_loss: length mismatch");
  LossGrad out;
  out.grad.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double diff = returns[i] - values[i];
    out.loss += diff * diff;
    out.grad[i] = -2.0 * diff;
  }
  return out;
}

// Clipped surrogate objective, negated for minimization. The gradient
// w.r.t. each ratio vanishes when the clipped branch is active and binding.
inline LossGrad actor_loss(std::span<const double> ratios,
                           std::span<const double> advantages, double eps) {
  if (ratios.size() != advantages.size())
    throw LengthMismatch("actor_loss: length mismatch");
  LossGrad out;
  out.grad.assign(ratios.size(), 0.0);
  if (ratios.empty()) return out;
  const double inv_n = 1.0 / static_cast<double>(ratios.size());
  double objective = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double r = ratios[i], a = advantages[i];
    const double clipped = std::clamp(r, 1.0 - eps, 1.0 + eps);
    const double term_raw = r * a;
    const double term_clip = clipped * a;
    if (term_raw <= term_clip) {
      objective += term_raw;
      out.grad[i] = -a * inv_n;
    } else {
      objective += term_clip;  // clip binds: zero gradient w.r.t. the ratio
    }
  }
  out.loss = -objective * inv_n;
  return out;
}

// Participation mask for one agent's controlled sensors. High server load
// freezes the agent except where a dying owner device still needs rescue.
inline std::vector<std::uint8_t> weak_agent_gate(double server_load, double threshold,
                                                 std::span<const double> owner_soc,
                                                 double rescue_soc) {
  std::vector<std::uint8_t> mask(owner_soc.size(), 1);
  if (server_load <= threshold) return mask;
  for (std::size_t i = 0; i < owner_soc.size(); ++i)
    mask[i] = owner_soc[i] < rescue_soc ? 1 : 0;
  return mask;
}

// Actor and critic parameters for one topology.
struct PolicyParams {
  std::vector<Mlp> actors;  // per agent; empty Mlp when an agent steers nothing
  Mlp critic;
};

inline PolicyParams init_policy_params(const std::vector<AgentLayout>& agents,
                                       const Hyperparams& hp, Rng& rng) {
  PolicyParams pp;
  int global_size = 0;
  for (const AgentLayout& a : agents) global_size += a.obs_size;
  pp.critic = Mlp::init(
      {global_size, hp.hidden1, hp.hidden2, static_cast<int>(agents.size())}, rng);
  pp.actors.reserve(agents.size());
  for (const AgentLayout& a : agents) {
    if (a.sensors.empty()) {
      pp.actors.emplace_back();
      continue;
    }
    pp.actors.push_back(Mlp::init(
        {a.obs_size, hp.hidden1, hp.hidden2, 3 * static_cast<int>(a.sensors.size())},
        rng));
  }
  return pp;
}

// ---- parameter (de)serialization: versioned text, layer sizes then
// row-major weights and biases per layer ----

namespace detail {

inline void write_net(std::ostream& out, const std::string& name, const Mlp& net) {
  out << "net " << name << " " << net.layer_sizes().size();
  for (int s : net.layer_sizes()) out << " " << s;
  out << "\n";
  out << std::setprecision(17);
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    out << "W";
    for (double w : net.weights()[l]) out << " " << w;
    out << "\nb";
    for (double b : net.biases()[l]) out << " " << b;
    out << "\n";
  }
}

inline Mlp read_net(std::istream& in, const std::string& expect_name) {
  std::string tag, name;
  std::size_t nsizes = 0;
  if (!(in >> tag >> name >> nsizes) || tag != "net" || name != expect_name)
    throw MissingParams("params file: expected net '" + expect_name + "'");
  if (nsizes == 0) return Mlp{};
  std::vector<int> sizes(nsizes);
  for (int& s : sizes)
    if (!(in >> s) || s <= 0) throw MissingParams("params file: bad layer size");
  Rng dummy(0);
  Mlp net = Mlp::init(sizes, dummy);
  for (std::size_t l = 0; l + 1 < nsizes; ++l) {
    if (!(in >> tag) || tag != "W") throw MissingParams("params file: expected W block");
    for (double& w : net.mutable_weights()[l])
      if (!(in >> w)) throw MissingParams("params file: truncated W block");
    if (!(in >> tag) || tag != "b") throw MissingParams("params file: expected b block");
    for (double& b : net.mutable_biases()[l])
      if (!(in >> b)) throw MissingParams("params file: truncated b block");
  }
  return net;
}

}  // namespace detail

inline void save_policy_params(const PolicyParams& pp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write params file '" + path + "'");
  out << "senses-policy-v1\n";
  out << "agents " << pp.actors.size() << "\n";
  detail::write_net(out, "critic", pp.critic);
  for (std::size_t i = 0; i < pp.actors.size(); ++i)
    detail::write_net(out, "actor" + std::to_string(i), pp.actors[i]);
}

inline PolicyParams load_policy_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingParams("cannot open params file '" + path + "'");
  std::string magic, tag;
  std::size_t agents = 0;
  if (!(in >> magic) || magic != "senses-policy-v1")
    throw MissingParams("params file: bad magic (expected senses-policy-v1)");
  if (!(in >> tag >> agents) || tag != "agents")
    throw MissingParams("params file: missing agents header");
  PolicyParams pp;
  pp.critic = detail::read_net(in, "critic");
  for (std::size_t i = 0; i < agents; ++i)
    pp.actors.push_back(detail::read_net(in, "actor" + std::to_string(i)));
  return pp;
}

// Checks a loaded parameter set against the topology's agent layout.
inline void validate_policy_params(const PolicyParams& pp,
                                   const std::vector<AgentLayout>& agents) {
  if (pp.actors.size() != agents.size())
    throw MissingParams("params: actor count does not match topology");
  int global_size = 0;
  for (const AgentLayout& a : agents) global_size += a.obs_size;
  if (pp.critic.empty() || pp.critic.input_size() != global_size)
    throw MissingParams("params: critic input size does not match topology");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (agents[i].sensors.empty()) {
      if (!pp.actors[i].empty())
        throw MissingParams("params: unexpected actor for idle agent");
      continue;
    }
    if (pp.actors[i].empty() ||
        pp.actors[i].input_size() != agents[i].obs_size ||
        pp.actors[i].output_size() != 3 * static_cast<int>(agents[i].sensors.size()))
      throw MissingParams("params: actor " + std::to_string(i) +
                          " does not match topology");
  }
}

// ---- action selection ----

struct AgentAct {
  std::vector<int> actions;  // per controlled sensor, 0/1/2
  double log_prob = 0;
};

// Samples (or greedily picks) one action per controlled sensor, then applies
// the weak-agent gate. log_prob is for the executed actions.
inline AgentAct select_actions(const Mlp& actor, const AgentLayout& layout,
                               const Topology& topo, const SimState& st,
                               std::span<const double> obs, double weak_threshold,
                               double rescue_soc, bool greedy, Rng* rng) {
  AgentAct act;
  if (layout.sensors.empty()) return act;
  const auto dist = policy_distribution(actor, obs);
  std::vector<double> owner_soc(layout.sensors.size());
  for (std::size_t i = 0; i < layout.sensors.size(); ++i)
    owner_soc[i] = st.batteries[topo.sensors[layout.sensors[i]].owner_device].soc;
  const auto mask = weak_agent_gate(st.server_loads[layout.server], weak_threshold,
                                    owner_soc, rescue_soc);
  act.actions.resize(layout.sensors.size());
  for (std::size_t i = 0; i < layout.sensors.size(); ++i) {
    int a;
    if (greedy) {
      a = 0;
      if (dist[i][1] > dist[i][a]) a = 1;
      if (dist[i][2] > dist[i][a]) a = 2;
    } else {
      const double u = rng->uniform01();
      a = u < dist[i][0] ? 0 : (u < dist[i][0] + dist[i][1] ? 1 : 2);
    }
    if (!mask[i]) a = static_cast<int>(RadiusAction::Keep);
    act.actions[i] = a;
    act.log_prob += std::log(std::max(dist[i][a], 1e-300));
  }
  return act;
}

// ---- training ----

struct TrainEpisodeStat {
  int episode = 0;
  double mean_reward = 0;
  double actor_loss = 0;
  double critic_loss = 0;
};

struct TrainResult {
  PolicyParams params;
  std::vector<TrainEpisodeStat> log;
};

// One replay-buffer entry for one agent.
struct Transition {
  std::vector<double> obs;
  std::vector<int> actions;
  double reward = 0;
  std::vector<double> next_obs;
  double value_estimate = 0;
  double log_prob = 0;
};

namespace detail {

struct ActorSample {
  std::vector<double> obs;
  std::vector<int> actions;
  double log_prob_old = 0;
  double advantage = 0;
};

struct CriticSample {
  std::vector<double> global_obs;
  std::vector<double> returns;  // per agent
};

struct FlushBuffer {
  std::vector<std::vector<ActorSample>> per_agent;
  std::vector<CriticSample> critic;
  std::size_t total = 0;

  void clear() {
    for (auto& v : per_agent) v.clear();
    critic.clear();
    total = 0;
  }
};

constexpr double kGradClipNorm = 0.5;

// One full-batch gradient pass over every actor and the critic. Returns
// (mean actor loss over acting agents, critic loss).
inline std::pair<double, double> update_networks(PolicyParams& pp,
                                                 const FlushBuffer& buf,
                                                 const Hyperparams& hp) {
  double actor_loss_sum = 0;
  int acting_agents = 0;
  for (std::size_t a = 0; a < buf.per_agent.size(); ++a) {
    const auto& samples = buf.per_agent[a];
    if (samples.empty() || pp.actors[a].empty()) continue;
    Mlp& actor = pp.actors[a];
    const std::size_t n = samples.size();
    std::vector<double> ratios(n), advs(n);
    std::vector<Mlp::Trace> traces(n);
    std::vector<std::vector<std::array<double, 3>>> dists(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> logits = actor.forward_trace(samples[i].obs, traces[i]);
      auto& dist = dists[i];
      dist.resize(logits.size() / 3);
      double logp = 0;
      for (std::size_t s = 0; s < dist.size(); ++s) {
        const double* l = &logits[3 * s];
        const double mx = std::max({l[0], l[1], l[2]});
        double z = 0;
        for (int k = 0; k < 3; ++k) {
          dist[s][k] = std::exp(l[k] - mx);
          z += dist[s][k];
        }
        for (int k = 0; k < 3; ++k) dist[s][k] /= z;
        logp += std::log(std::max(dist[s][samples[i].actions[s]], 1e-300));
      }
      ratios[i] = std::exp(logp - samples[i].log_prob_old);
      advs[i] = samples[i].advantage;
    }
    const LossGrad lg = actor_loss(ratios, advs, hp.clip_eps);
    if (!std::isfinite(lg.loss))
      throw DivergedLoss("actor loss diverged for agent " + std::to_string(a));
    Mlp::Grads grads = Mlp::Grads::zeros_like(actor);
    std::vector<double> upstream;
    for (std::size_t i = 0; i < n; ++i) {
      if (lg.grad[i] == 0.0) continue;
      const double dl_dratio = lg.grad[i];
      upstream.assign(static_cast<std::size_t>(actor.output_size()), 0.0);
      for (std::size_t s = 0; s < dists[i].size(); ++s) {
        const int taken = samples[i].actions[s];
        for (int k = 0; k < 3; ++k) {
          const double dlogp = (k == taken ? 1.0 : 0.0) - dists[i][s][k];
          upstream[3 * s + k] = dl_dratio * ratios[i] * dlogp;
        }
      }
      actor.backward(traces[i], upstream, grads);
    }
    actor.apply_gradients(grads, hp.alpha, kGradClipNorm);
    actor_loss_sum += lg.loss;
    ++acting_agents;
  }

  double critic_total = 0;
  Mlp::Grads cgrads = Mlp::Grads::zeros_like(pp.critic);
  Mlp::Trace trace;
  for (const CriticSample& cs : buf.critic) {
    const std::vector<double> v = pp.critic.forward_trace(cs.global_obs, trace);
    const LossGrad lg = critic_loss(cs.returns, v);
    critic_total += lg.loss;
    pp.critic.backward(trace, lg.grad, cgrads);
  }
  if (!std::isfinite(critic_total)) throw DivergedLoss("critic loss diverged");
  pp.critic.apply_gradients(cgrads, hp.alpha, kGradClipNorm);

  return {acting_agents > 0 ? actor_loss_sum / acting_agents : 0.0, critic_total};
}

}  // namespace detail

// Centralized-training / decentralized-execution loop: per-agent actors roll
// out against the simulator, a shared critic scores the concatenated global
// state, and clipped updates run against the policy frozen at collection
// time. Deterministic for a given seed.
inline TrainResult train(const Topology& topo, SimParams params,
                         const Hyperparams& hp, std::uint64_t seed) {
  const std::vector<AgentLayout> agents = build_agents(topo);
  params.radius_step = hp.delta;
  params.weak_threshold = hp.weak_threshold;
  params.rescue_soc = hp.rescue_soc;
  params.inference_surcharge = true;
  params.horizon = hp.train_horizon;

  Rng rng(seed);
  TrainResult result;
  result.params = init_policy_params(agents, hp, rng);
  PolicyParams& pp = result.params;

  detail::FlushBuffer buf;
  buf.per_agent.resize(agents.size());
  long long steps_done = 0;
  double last_actor_loss = 0, last_critic_loss = 0;

  for (int ep = 0; ep < hp.episodes; ++ep) {
    if (steps_done >= hp.step_max) break;
    SimState st = initial_state(topo);
    std::vector<std::vector<Transition>> episode(agents.size());
    std::vector<detail::CriticSample> episode_critic;
    double reward_sum = 0;
    std::size_t reward_n = 0;
    bool terminal = false;

    Observations obs = build_observations(topo, st, agents, hp.train_horizon);
    while (st.slot < hp.train_horizon && steps_done < hp.step_max && !terminal) {
      const std::vector<double> values = pp.critic.forward(obs.global);

      SlotDecision decision;
      decision.actions.assign(topo.sensors.size(), RadiusAction::Keep);
      decision.dedup = DedupMode::Staged;
      std::vector<AgentAct> acts(agents.size());
      for (std::size_t a = 0; a < agents.size(); ++a) {
        if (agents[a].sensors.empty()) continue;
        acts[a] = select_actions(pp.actors[a], agents[a], topo, st, obs.per_agent[a],
                                 hp.weak_threshold, hp.rescue_soc,
                                 /*greedy=*/false, &rng);
        for (std::size_t i = 0; i < agents[a].sensors.size(); ++i)
          decision.actions[agents[a].sensors[i]] =
              static_cast<RadiusAction>(acts[a].actions[i]);
      }

      const SlotMetrics m = step(st, decision, topo, params);
      ++steps_done;
      Observations next_obs = build_observations(topo, st, agents, hp.train_horizon);

      for (std::size_t a = 0; a < agents.size(); ++a) {
        Transition tr;
        tr.obs = obs.per_agent[a];
        tr.actions = acts[a].actions;
        tr.reward = m.agent_rewards[agents[a].server];
        tr.next_obs = next_obs.per_agent[a];
        tr.value_estimate = values[a];
        tr.log_prob = acts[a].log_prob;
        episode[a].push_back(std::move(tr));
        reward_sum += m.agent_rewards[agents[a].server];
        ++reward_n;
      }
      detail::CriticSample cs;
      cs.global_obs = std::move(obs.global);
      episode_critic.push_back(std::move(cs));

      if (next_obs.coverage < params.coverage_target &&
          !rescue_feasible(topo, st, params.coverage_target))
        terminal = true;
      obs = std::move(next_obs);
    }

    // advantage estimation per agent, bootstrap from the critic unless the
    // episode hit a terminal state
    std::vector<double> bootstrap(agents.size(), 0.0);
    if (!terminal && !episode_critic.empty())
      bootstrap = pp.critic.forward(obs.global);
    const std::size_t T = episode_critic.size();
    for (std::size_t a = 0; a < agents.size(); ++a) {
      std::vector<double> rewards(T), values(T + 1);
      for (std::size_t t = 0; t < T; ++t) {
        rewards[t] = episode[a][t].reward;
        values[t] = episode[a][t].value_estimate;
      }
      values[T] = bootstrap[a];
      const std::vector<double> adv = gae(rewards, values, hp.gamma, hp.lambda);
      const std::vector<double> rets =
          gae_returns(adv, std::span<const double>(values.data(), T));
      for (std::size_t t = 0; t < T; ++t) {
        episode_critic[t].returns.push_back(rets[t]);
        if (!agents[a].sensors.empty()) {
          detail::ActorSample s;
          s.obs = std::move(episode[a][t].obs);
          s.actions = std::move(episode[a][t].actions);
          s.log_prob_old = episode[a][t].log_prob;
          s.advantage = adv[t];
          buf.per_agent[a].push_back(std::move(s));
          ++buf.total;
        }
      }
    }
    for (auto& cs : episode_critic) buf.critic.push_back(std::move(cs));

    if (buf.total >= static_cast<std::size_t>(hp.batch_size)) {
      // normalize advantages across the whole flush
      double mean = 0;
      std::size_t n = 0;
      for (const auto& v : buf.per_agent)
        for (const auto& s : v) {
          mean += s.advantage;
          ++n;
        }
      if (n > 0) {
        mean /= static_cast<double>(n);
        double var = 0;
        for (const auto& v : buf.per_agent)
          for (const auto& s : v) var += (s.advantage - mean) * (s.advantage - mean);
        const double sd = std::sqrt(var / static_cast<double>(n));
        for (auto& v : buf.per_agent)
          for (auto& s : v) s.advantage = (s.advantage - mean) / (sd + 1e-8);
      }
      for (int e = 0; e < hp.epochs; ++e) {
        auto [al, cl] = detail::update_networks(pp, buf, hp);
        last_actor_loss = al;
        last_critic_loss = cl;
      }
      buf.clear();
    }

    TrainEpisodeStat stat;
    stat.episode = ep;
    stat.mean_reward = reward_n > 0 ? reward_sum / static_cast<double>(reward_n) : 0.0;
    stat.actor_loss = last_actor_loss;
    stat.critic_loss = last_critic_loss;
    result.log.push_back(stat);
  }
  return result;
}

// Greedy deployment policy around trained parameters.
inline PolicyFn make_marl_policy(const Topology& topo, const PolicyParams& pp,
                                 DedupMode dedup, double weak_threshold,
                                 double rescue_soc, int horizon,
                                 bool greedy = true) {
  auto agents = std::make_shared<std::vector<AgentLayout>>(build_agents(topo));
  validate_policy_params(pp, *agents);
  auto params = std::make_shared<PolicyParams>(pp);
  return [agents, params, dedup, weak_threshold, rescue_soc, horizon, greedy](
             const Topology& t, const SimState& st, Rng& rng) {
    const Observations obs = build_observations(t, st, *agents, horizon);
    SlotDecision decision;
    decision.actions.assign(t.sensors.size(), RadiusAction::Keep);
    decision.dedup = dedup;
    for (std::size_t a = 0; a < agents->size(); ++a) {
      const AgentLayout& layout = (*agents)[a];
      if (layout.sensors.empty()) continue;
      const AgentAct act =
          select_actions(params->actors[a], layout, t, st, obs.per_agent[a],
                         weak_threshold, rescue_soc, greedy, &rng);
      for (std::size_t i = 0; i < layout.sensors.size(); ++i)
        decision.actions[layout.sensors[i]] = static_cast<RadiusAction>(act.actions[i]);
    }
    return decision;
  };
}

}  // namespace senses
