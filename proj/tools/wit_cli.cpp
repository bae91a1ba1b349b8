// Copyright 2026 The witlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wit/workflow.hpp"

namespace {

struct Cli {
  std::string config_path;
  std::string seed, shots, points, retrials, topology, out, mitigation, insertion, basis,
      trials, g_min, g_max, layout, routing;
  int candidates = 10;
  int select = -1;
  int steps = 6;
};

void add_shared(CLI::App* app, Cli& cli) {
  app->add_option("--config", cli.config_path, "key = value config file");
  app->add_option("--seed", cli.seed, "master RNG seed");
  app->add_option("--shots", cli.shots, "shots per circuit");
  app->add_option("--points", cli.points, "number of g values");
  app->add_option("--retrials", cli.retrials, "repetitions per g value");
  app->add_option("--topology", cli.topology, "topology name or JSON path");
  app->add_option("--out", cli.out, "output directory");
  app->add_option("--mitigation", cli.mitigation, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  app->add_option("--insert-message-with", cli.insertion, "swap|reset")
      ->check(CLI::IsMember({"swap", "reset"}));
  app->add_option("--basis", cli.basis, "superconducting|trapped_ion");
  app->add_option("--trials", cli.trials, "transpilation trials");
  app->add_option("--g-min", cli.g_min, "sweep start coupling");
  app->add_option("--g-max", cli.g_max, "sweep end coupling");
  app->add_option("--layout", cli.layout, "trivial|degree_greedy|noise_aware");
  app->add_option("--routing", cli.routing, "greedy_path|sabre_lite");
}

wit::ExperimentConfig build_config(const Cli& cli) {
  std::map<std::string, std::string> kv;
  if (!cli.config_path.empty()) {
    std::ifstream f(cli.config_path);
    if (!f) throw std::invalid_argument("cannot open config file: " + cli.config_path);
    kv = wit::parse_key_values(f);
  }
  auto put = [&](const char* k, const std::string& v) {
    if (!v.empty()) kv[k] = v;
  };
  put("seed", cli.seed);
  put("shots", cli.shots);
  put("points", cli.points);
  put("retrials", cli.retrials);
  put("topology", cli.topology);
  put("out", cli.out);
  put("mitigation", cli.mitigation);
  put("insertion", cli.insertion);
  put("basis", cli.basis);
  put("trials", cli.trials);
  put("g_min", cli.g_min);
  put("g_max", cli.g_max);
  put("layout", cli.layout);
  put("routing", cli.routing);
  return wit::ExperimentConfig::from_kv(kv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"witlab: wormhole-inspired teleportation protocol laboratory"};
  app.require_subcommand(1);
  Cli cli;

  CLI::App* sweep = app.add_subcommand("sweep", "coupling sweep of the output expectation");
  CLI::App* tomo = app.add_subcommand("tomography", "Pauli transfer matrix of the channel");
  CLI::App* ops = app.add_subcommand("operators", "Heisenberg growth and phase report");
  CLI::App* tp = app.add_subcommand("transpile", "decompose and route onto a topology");
  CLI::App* rank = app.add_subcommand("rank-layouts", "probe initial layouts under noise");
  for (CLI::App* s : {sweep, tomo, ops, tp, rank}) add_shared(s, cli);
  ops->add_option("--steps", cli.steps, "growth table depth");
  rank->add_option("--candidates", cli.candidates, "number of candidate layouts");
  rank->add_option("--select", cli.select, "write the chosen layout by rank");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    wit::ExperimentConfig cfg = build_config(cli);
    if (sweep->parsed()) {
      wit::cmd_sweep(cfg);
    } else if (tomo->parsed()) {
      wit::cmd_tomography(cfg);
    } else if (ops->parsed()) {
      wit::cmd_operators(cfg, cli.steps);
    } else if (tp->parsed()) {
      wit::cmd_transpile(cfg);
    } else if (rank->parsed()) {
      wit::cmd_rank_layouts(cfg, cli.candidates, cli.select);
    }
    return 0;
  } catch (const wit::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
