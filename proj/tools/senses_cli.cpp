// Command-line front end: train a coverage policy, simulate one policy, or
// compare several on the same topology and seed.

#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "senses/experiment.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string params_path;
  std::string policy_list;
  std::vector<std::string> sets;
  long long seed = -1;
  int horizon = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_policy) {
  cmd->add_option("--config", args.config_path, "config file (key = value lines)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override config seed");
  cmd->add_option("--horizon", args.horizon, "override sim.horizon");
  cmd->add_option("--set", args.sets, "extra key=value overrides")->take_all();
  if (with_policy)
    cmd->add_option("--policy", args.policy_list,
                    "policy or comma-separated list "
                    "(senses|senses-re|comp|load)");
  cmd->add_option("--params", args.params_path, "trained parameters file");
}

senses::SimConfig load_config(const CommonArgs& args) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const std::string& kv : args.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw senses::ParseError("--set expects key=value, got '" + kv + "'");
    overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!args.policy_list.empty() && args.policy_list.find(',') == std::string::npos)
    overrides.emplace_back("policy", args.policy_list);
  if (args.seed >= 0) overrides.emplace_back("seed", std::to_string(args.seed));
  if (args.horizon >= 0)
    overrides.emplace_back("sim.horizon", std::to_string(args.horizon));
  return senses::parse_config(args.config_path, overrides);
}

std::vector<senses::PolicyKind> parse_policy_list(const std::string& list,
                                                  senses::PolicyKind fallback) {
  if (list.empty()) return {fallback};
  std::vector<senses::PolicyKind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) kinds.push_back(senses::parse_policy(item));
  if (kinds.empty()) kinds.push_back(fallback);
  return kinds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-IoT energy simulator with learned sensor coverage control"};
  app.require_subcommand(1);

  CommonArgs train_args, sim_args, cmp_args;
  CLI::App* train_cmd = app.add_subcommand("train", "train the senses policy");
  add_common(train_cmd, train_args, /*with_policy=*/false);
  CLI::App* sim_cmd = app.add_subcommand("simulate", "run one policy");
  add_common(sim_cmd, sim_args, /*with_policy=*/true);
  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "run several policies on one topology");
  add_common(cmp_cmd, cmp_args, /*with_policy=*/true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      senses::SimConfig cfg = load_config(train_args);
      senses::cmd_train(cfg, train_args.out_dir);
    } else if (sim_cmd->parsed()) {
      if (sim_args.policy_list.find(',') != std::string::npos)
        throw senses::ValidationError(
            "simulate takes a single --policy; use compare for a list");
      senses::SimConfig cfg = load_config(sim_args);
      senses::cmd_simulate(cfg, sim_args.out_dir, sim_args.params_path);
    } else if (cmp_cmd->parsed()) {
      senses::SimConfig cfg = load_config(cmp_args);
      auto kinds = parse_policy_list(cmp_args.policy_list, cfg.policy);
      senses::cmd_compare(cfg, kinds, cmp_args.out_dir, cmp_args.params_path);
    }
  } catch (const senses::DivergedLoss& e) {
    std::cerr << "training diverged: " << e.what() << "\n";
    return 3;
  } catch (const senses::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const senses::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const senses::MissingParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
