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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wit/bkp.hpp"
#include "wit/mitigation.hpp"
#include "wit/noise.hpp"

namespace wit {

/// Everything a CLI run needs, read from one flat key-value file plus
/// command-line overrides.
struct ExperimentConfig {
  WitConfig wit = bkp_star();
  NoiseModel noise;
  MitigationConfig mitigation = MitigationConfig::off();
  bool mitigation_on = false;

  double g_min = 0;
  double g_max = M_PI;
  int points = 14;
  uint64_t shots = 8192;
  int retrials = 1;
  uint64_t seed = 1;

  std::string topology = "heavy-hex-27";
  std::string basis = "superconducting";
  std::string layout_strategy = "degree_greedy";
  std::string routing = "greedy_path";
  int trials = 1;
  std::string out_dir = "results";

  void validate() const {
    wit.validate();
    noise.validate();
    mitigation.validate();
    if (points < 1) throw std::invalid_argument("points >= 1 required");
    if (retrials < 1) throw std::invalid_argument("retrials >= 1 required");
    if (shots < 1) throw std::invalid_argument("shots >= 1 required");
    if (trials < 1) throw std::invalid_argument("trials >= 1 required");
    if (g_max < g_min) throw std::invalid_argument("g_max >= g_min required");
  }

  static ExperimentConfig from_kv(const std::map<std::string, std::string>& kv) {
    ExperimentConfig c;
    c.wit = wit_config_from_kv(kv);
    c.noise = NoiseModel::from_kv(kv);
    c.mitigation = MitigationConfig::from_kv(kv);
    auto get = [&](const char* k) -> const std::string* {
      auto it = kv.find(k);
      return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("mitigation")) c.mitigation_on = (*v == "on" || *v == "true");
    if (auto* v = get("g_min")) c.g_min = std::stod(*v);
    if (auto* v = get("g_max")) c.g_max = std::stod(*v);
    if (auto* v = get("points")) c.points = std::stoi(*v);
    if (auto* v = get("shots")) c.shots = std::stoull(*v);
    if (auto* v = get("retrials")) c.retrials = std::stoi(*v);
    if (auto* v = get("seed")) c.seed = std::stoull(*v);
    if (auto* v = get("topology")) c.topology = *v;
    if (auto* v = get("basis")) c.basis = *v;
    if (auto* v = get("layout")) c.layout_strategy = *v;
    if (auto* v = get("routing")) c.routing = *v;
    if (auto* v = get("trials")) c.trials = std::stoi(*v);
    if (auto* v = get("out")) c.out_dir = *v;
    c.validate();
    return c;
  }

  static ExperimentConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    return from_kv(parse_key_values(f));
  }

  /// Canonical serialization; the basis of the config hash embedded in
  /// every output file.
  std::string canonical() const {
    std::ostringstream os;
    os.precision(17);
    os << wit_config_to_kv(wit) << noise.to_kv()
       << "mitigation = " << (mitigation_on ? "on" : "off") << "\n"
       << "heralding = " << (mitigation.heralding ? "on" : "off") << "\n"
       << "readout_correction = " << (mitigation.readout_correction ? "on" : "off") << "\n"
       << "rc_randomizations = " << mitigation.rc_randomizations << "\n"
       << "estimation_circuits = " << (mitigation.estimation_circuits ? "on" : "off") << "\n"
       << "zne_factors = ";
    for (size_t i = 0; i < mitigation.zne_factors.size(); ++i)
      os << (i ? "," : "") << mitigation.zne_factors[i];
    os << "\nzne_fit = " << mitigation.zne_fit << "\n"
       << "g_min = " << g_min << "\ng_max = " << g_max << "\npoints = " << points
       << "\nshots = " << shots << "\nretrials = " << retrials << "\nseed = " << seed
       << "\ntopology = " << topology << "\nbasis = " << basis
       << "\nlayout = " << layout_strategy << "\nrouting = " << routing
       << "\ntrials = " << trials << "\n";
    return os.str();
  }

  /// FNV-1a over the canonical form, rendered as 16 hex digits.
  std::string hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical()) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }
};

}  // namespace wit
