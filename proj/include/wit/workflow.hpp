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

#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wit/bkp.hpp"
#include "wit/channel.hpp"
#include "wit/config.hpp"
#include "wit/coupling_graph.hpp"
#include "wit/mitigation.hpp"
#include "wit/noise.hpp"
#include "wit/operator_dynamics.hpp"
#include "wit/transpiler.hpp"

namespace wit {

/// Raised when a requested verification fails; maps to a distinct CLI
/// exit code.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

/// Timestamps live here and only here, so data files stay byte-identical
/// across reruns with the same config and seed.
inline void write_metadata(const ExperimentConfig& cfg, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  auto now = std::chrono::system_clock::now();
  j["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  write_file(std::filesystem::path(cfg.out_dir) / "metadata.json", j.dump(2) + "\n");
}

inline std::string fmt(double v, int prec = 12) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

inline std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0, 0};
  double m = 0;
  for (double x : v) m += x;
  m /= double(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, v.size() > 1 ? std::sqrt(s / double(v.size() - 1)) : 0.0};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sweep

struct SweepRecord {
  double g = 0;
  int trial = 0;
  double ideal = 0, raw = 0, mitigated = 0;
};

struct SweepOutcome {
  std::vector<SweepRecord> records;
  std::vector<double> g_values;
};

inline SweepOutcome cmd_sweep(const ExperimentConfig& cfg, std::ostream& log = std::cout) {
  cfg.validate();
  detail::write_metadata(cfg, "sweep");
  SweepOutcome out;
  out.g_values = cfg.points == 1 ? std::vector<double>{cfg.g_min}
                                 : linspace(cfg.g_min, cfg.g_max, cfg.points);

  log << "Qubits per side:  " << cfg.wit.params.n << "\n"
      << "Time steps:  " << cfg.wit.params.T << "\n"
      << "Message insertion method:  "
      << (cfg.wit.insertion == Insertion::Swap ? "swap" : "reset") << "\n\n";

  WitConfig base = cfg.wit;
  std::vector<SweepPoint> exact = sweep(base, out.g_values);
  MitigationConfig mit = cfg.mitigation_on ? cfg.mitigation : MitigationConfig::off();

  log << " g       ideal    raw      mitigated\n";
  for (size_t gi = 0; gi < out.g_values.size(); ++gi) {
    std::vector<double> raws, mits;
    for (int trial = 0; trial < cfg.retrials; ++trial) {
      WitConfig wc = base;
      wc.g = out.g_values[gi];
      PipelineResult pr = pipeline(wc, cfg.noise, mit, cfg.shots,
                                   detail::derive_seed(cfg.seed, gi * 1000 + trial));
      out.records.push_back({out.g_values[gi], trial, exact[gi].z, pr.raw, pr.mitigated});
      raws.push_back(pr.raw);
      mits.push_back(pr.mitigated);
    }
    auto [rm, rs] = detail::mean_std(raws);
    auto [mm, ms] = detail::mean_std(mits);
    (void)rs;
    (void)ms;
    log << " " << std::fixed << std::setprecision(2) << out.g_values[gi] << "    "
        << std::setprecision(4) << std::setw(7) << exact[gi].z << "  " << std::setw(7) << rm
        << "  " << std::setw(7) << mm << "\n";
    log.unsetf(std::ios::fixed);
  }

  // Long-format records.
  std::ostringstream csv;
  csv << "g,trial,kind,value,shots\n";
  for (const auto& r : out.records) {
    csv << detail::fmt(r.g) << "," << r.trial << ",ideal," << detail::fmt(r.ideal) << ","
        << cfg.shots << "\n";
    csv << detail::fmt(r.g) << "," << r.trial << ",raw," << detail::fmt(r.raw) << ","
        << cfg.shots << "\n";
    csv << detail::fmt(r.g) << "," << r.trial << ",mitigated," << detail::fmt(r.mitigated)
        << "," << cfg.shots << "\n";
  }
  detail::write_file(std::filesystem::path(cfg.out_dir) / "sweep.csv", csv.str());

  // Wide-format aggregates.
  std::ostringstream agg;
  agg << "g,ideal,raw_mean,raw_std,mitigated_mean,mitigated_std\n";
  nlohmann::json jpoints = nlohmann::json::array();
  for (size_t gi = 0; gi < out.g_values.size(); ++gi) {
    std::vector<double> raws, mits;
    for (const auto& r : out.records)
      if (r.g == out.g_values[gi]) {
        raws.push_back(r.raw);
        mits.push_back(r.mitigated);
      }
    auto [rm, rs] = detail::mean_std(raws);
    auto [mm, ms] = detail::mean_std(mits);
    agg << detail::fmt(out.g_values[gi]) << "," << detail::fmt(exact[gi].z) << ","
        << detail::fmt(rm) << "," << detail::fmt(rs) << "," << detail::fmt(mm) << ","
        << detail::fmt(ms) << "\n";
    jpoints.push_back({{"g", out.g_values[gi]},
                       {"ideal", exact[gi].z},
                       {"x", exact[gi].x},
                       {"y", exact[gi].y},
                       {"raw_mean", rm},
                       {"raw_std", rs},
                       {"mitigated_mean", mm},
                       {"mitigated_std", ms}});
  }
  detail::write_file(std::filesystem::path(cfg.out_dir) / "sweep_aggregate.csv", agg.str());

  nlohmann::json j;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  j["shots"] = cfg.shots;
  j["retrials"] = cfg.retrials;
  j["points"] = jpoints;
  detail::write_file(std::filesystem::path(cfg.out_dir) / "sweep.json", j.dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// tomography

struct TomographyOutcome {
  std::vector<double> g_values;
  std::vector<PauliTransferMatrix> ptms;
};

inline TomographyOutcome cmd_tomography(const ExperimentConfig& cfg,
                                        std::ostream& log = std::cout) {
  cfg.validate();
  detail::write_metadata(cfg, "tomography");
  TomographyOutcome out;
  out.g_values = cfg.points == 1 ? std::vector<double>{cfg.g_min}
                                 : linspace(cfg.g_min, cfg.g_max, cfg.points);
  nlohmann::json jm = nlohmann::json::array();
  for (double g : out.g_values) {
    WitConfig wc = cfg.wit;
    wc.g = g;
    PauliTransferMatrix m = tomography(wc);
    out.ptms.push_back(m);
    log << "g = " << detail::fmt(g, 6) << "\n" << m.str() << "\n";
    nlohmann::json rows = nlohmann::json::array();
    for (int a = 0; a < 4; ++a)
      rows.push_back({m.r[a][0], m.r[a][1], m.r[a][2], m.r[a][3]});
    jm.push_back({{"g", g}, {"ptm", rows}});
  }
  nlohmann::json j;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  j["channels"] = jm;
  detail::write_file(std::filesystem::path(cfg.out_dir) / "tomography.json", j.dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// operators

struct OperatorsOutcome {
  GrowthTable table;
  std::vector<PhaseRow> phases;
};

inline OperatorsOutcome cmd_operators(const ExperimentConfig& cfg, int table_steps = 6,
                                      std::ostream& log = std::cout) {
  cfg.validate();
  detail::write_metadata(cfg, "operators");
  OperatorsOutcome out;
  out.table = growth_table(cfg.wit.params, table_steps);
  out.phases = phase_report(cfg.wit);
  log << out.table.str() << "\n" << phase_report_csv(out.phases);
  detail::write_file(std::filesystem::path(cfg.out_dir) / "growth_table.txt", out.table.str());
  detail::write_file(std::filesystem::path(cfg.out_dir) / "growth_table.csv", out.table.csv());
  detail::write_file(std::filesystem::path(cfg.out_dir) / "phase_report.csv",
                     phase_report_csv(out.phases));
  return out;
}

// ---------------------------------------------------------------------------
// transpile

struct TranspileOutcome {
  RoutedCircuit routed;
  Circuit flat;        // routed circuit expanded into the basis, cleaned up
  bool verified = false;
  GateReport report;
};

inline TranspileOutcome cmd_transpile(const ExperimentConfig& cfg,
                                      std::ostream& log = std::cout) {
  cfg.validate();
  detail::write_metadata(cfg, "transpile");
  CouplingGraph graph = load_topology(cfg.topology);
  BasisGateSet basis = basis_from_name(cfg.basis);

  Circuit high = build_wit(cfg.wit, /*include_measure=*/true);
  Circuit flat = cancel_adjacent(decompose(high, basis));
  Layout lay = layout_init(flat, graph, layout_strategy_from(cfg.layout_strategy));
  log << "Building the library of transpiled circuits...\n"
      << " ... layout: " << lay.str() << "\n";

  TranspileOutcome out;
  out.routed = route_best(flat, graph, lay, routing_heuristic_from(cfg.routing), cfg.trials,
                          cfg.seed);
  if (!check_coupling(out.routed.circuit, graph))
    throw VerificationError("routed circuit violates the coupling constraint");
  out.verified = verify_equivalence(flat, out.routed);
  out.flat = cancel_adjacent(decompose(out.routed.circuit, basis));
  out.report = out.flat.report();

  auto count = [&](const char* k) {
    auto it = out.report.counts.find(k);
    return it == out.report.counts.end() ? 0 : it->second;
  };
  log << " g     CX    SX    RZ    Depth Size\n"
      << " " << std::fixed << std::setprecision(2) << cfg.wit.g << "  " << std::setw(4)
      << count("cx") << "  " << std::setw(4) << count("sx") << "  " << std::setw(4)
      << count("rz") << "  " << std::setw(5) << out.report.depth << " " << std::setw(5)
      << out.report.size << "\n";
  log.unsetf(std::ios::fixed);
  log << " reference heavy-hex compilations: 73-92 CX basic, best known 34\n"
      << " equivalence check: " << (out.verified ? "pass" : "FAIL") << "\n";

  detail::write_file(std::filesystem::path(cfg.out_dir) / "routed_circuit.txt",
                     out.flat.serialize());
  std::ostringstream csv;
  csv << "g,cx,sx,rz,rzz,depth,size,swaps,verified\n"
      << detail::fmt(cfg.wit.g) << "," << count("cx") << "," << count("sx") << ","
      << count("rz") << "," << count("rzz") << "," << out.report.depth << ","
      << out.report.size << "," << out.routed.swaps_inserted << ","
      << (out.verified ? "true" : "false") << "\n";
  detail::write_file(std::filesystem::path(cfg.out_dir) / "transpile_report.csv", csv.str());
  if (!out.verified) throw VerificationError("routed circuit failed dense equivalence");
  return out;
}

// ---------------------------------------------------------------------------
// rank-layouts

struct RankOutcome {
  std::vector<RankedLayout> ranked;
  int selected = -1;
};

/// Seeded random layouts along BFS orders from random start nodes; used to
/// pad the strategy-derived candidates.
inline Layout random_connected_layout(const Circuit& c, const CouplingGraph& graph,
                                      std::mt19937_64& rng) {
  const int L = c.qubit_count();
  for (int attempt = 0; attempt < 64; ++attempt) {
    int start = static_cast<int>(rng() % graph.node_count());
    std::vector<int> order;
    std::vector<bool> seen(graph.node_count(), false);
    std::vector<int> queue = {start};
    seen[start] = true;
    while (!queue.empty() && static_cast<int>(order.size()) < L) {
      int u = queue.front();
      queue.erase(queue.begin());
      order.push_back(u);
      auto nb = graph.neighbors(u);
      std::shuffle(nb.begin(), nb.end(), rng);
      for (int v : nb)
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
    }
    if (static_cast<int>(order.size()) == L) return Layout{order};
  }
  throw std::runtime_error("no connected region large enough for the circuit");
}

inline RankOutcome cmd_rank_layouts(const ExperimentConfig& cfg, int candidates = 10,
                                    int select = -1, std::ostream& log = std::cout) {
  cfg.validate();
  if (candidates < 1) throw std::invalid_argument("candidates >= 1");
  detail::write_metadata(cfg, "rank-layouts");
  CouplingGraph graph = load_topology(cfg.topology);
  Circuit flat =
      cancel_adjacent(decompose(build_wit(cfg.wit, true), superconducting_basis()));

  // Default probing noise when the config carries none.
  NoiseModel noise = cfg.noise;
  if (noise.trivial()) {
    noise.p1 = 0.001;
    noise.p2 = 0.01;
    noise.prep_excite = 0.01;
    noise.readout = {{{0.98, 0.02}, {0.02, 0.98}}};
  }

  std::vector<Layout> cands;
  cands.push_back(layout_init(flat, graph, LayoutStrategy::DegreeGreedy));
  if (graph.has_error_data() && candidates > 1)
    cands.push_back(layout_init(flat, graph, LayoutStrategy::NoiseAware));
  std::mt19937_64 rng(cfg.seed);
  while (static_cast<int>(cands.size()) < candidates)
    cands.push_back(random_connected_layout(flat, graph, rng));

  for (size_t i = 0; i < cands.size(); ++i)
    log << " ... " << (i + 1) << ": " << cands[i].str() << "\n";
  log << "\nProbing registered initial layouts on default noise model:\n\n";

  RankOutcome out;
  out.ranked = rank_layouts(flat, graph, noise, cands, cfg.shots, cfg.seed);

  log << " L  <Z>      dev      CXs\n";
  std::ostringstream csv;
  csv << "rank,z_noisy,z_ideal,deviation,cx,layout\n";
  for (size_t i = 0; i < out.ranked.size(); ++i) {
    const auto& r = out.ranked[i];
    log << " " << i << "  " << std::fixed << std::setprecision(3) << std::setw(6) << r.z_noisy
        << "  " << std::setw(6) << r.deviation << "  " << std::setw(4) << r.cx_count << "  "
        << r.layout.str() << "\n";
    log.unsetf(std::ios::fixed);
    csv << i << "," << detail::fmt(r.z_noisy) << "," << detail::fmt(r.z_ideal) << ","
        << detail::fmt(r.deviation) << "," << r.cx_count << ",\"" << r.layout.str() << "\"\n";
  }
  detail::write_file(std::filesystem::path(cfg.out_dir) / "rank_layouts.csv", csv.str());

  if (select >= 0) {
    if (select >= static_cast<int>(out.ranked.size()))
      throw std::invalid_argument("--select index out of range");
    out.selected = select;
    nlohmann::json j;
    j["config_hash"] = cfg.hash();
    j["selected_rank"] = select;
    j["layout"] = out.ranked[select].layout.phys;
    detail::write_file(std::filesystem::path(cfg.out_dir) / "chosen_layout.json",
                       j.dump(2) + "\n");
    log << "\nChoose your layout #: " << select << "\n";
  }
  return out;
}

}  // namespace wit
