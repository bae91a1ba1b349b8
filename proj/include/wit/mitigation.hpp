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
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wit/bkp.hpp"
#include "wit/circuit.hpp"
#include "wit/noise.hpp"
#include "wit/pauli.hpp"
#include "wit/transpiler.hpp"

namespace wit {

struct MitigationConfig {
  bool heralding = true;
  bool readout_correction = true;
  int rc_randomizations = 16;     // 0 disables randomized compiling
  bool estimation_circuits = true;
  std::vector<int> zne_factors = {1, 3, 5};  // empty disables ZNE
  std::string zne_fit = "linear";            // linear | exponential
  double estimation_floor = 0.02;

  void validate() const {
    if (rc_randomizations < 0) throw std::invalid_argument("rc_randomizations >= 0");
    int prev = 0;
    for (size_t i = 0; i < zne_factors.size(); ++i) {
      int f = zne_factors[i];
      if (f < 1 || f % 2 == 0) throw std::invalid_argument("zne_factors must be odd >= 1");
      if (i == 0 && f != 1) throw std::invalid_argument("zne_factors must start at 1");
      if (f <= prev && i > 0) throw std::invalid_argument("zne_factors must increase");
      prev = f;
    }
    if (zne_fit != "linear" && zne_fit != "exponential")
      throw std::invalid_argument("zne_fit must be linear|exponential");
  }

  bool all_off() const {
    return !heralding && !readout_correction && rc_randomizations == 0 &&
           !estimation_circuits && zne_factors.empty();
  }

  static MitigationConfig from_kv(const std::map<std::string, std::string>& kv) {
    MitigationConfig m;
    auto flag = [&](const char* k, bool& v) {
      auto it = kv.find(k);
      if (it != kv.end()) v = it->second == "on" || it->second == "true" || it->second == "1";
    };
    flag("heralding", m.heralding);
    flag("readout_correction", m.readout_correction);
    flag("estimation_circuits", m.estimation_circuits);
    if (auto it = kv.find("rc_randomizations"); it != kv.end())
      m.rc_randomizations = std::stoi(it->second);
    if (auto it = kv.find("zne_factors"); it != kv.end()) {
      m.zne_factors.clear();
      std::istringstream is(it->second);
      std::string tok;
      while (std::getline(is, tok, ',')) m.zne_factors.push_back(std::stoi(tok));
    }
    if (auto it = kv.find("zne_fit"); it != kv.end()) m.zne_fit = it->second;
    m.validate();
    return m;
  }

  /// Everything disabled; pipeline returns the raw value only.
  static MitigationConfig off() {
    MitigationConfig m;
    m.heralding = false;
    m.readout_correction = false;
    m.rc_randomizations = 0;
    m.estimation_circuits = false;
    m.zne_factors.clear();
    return m;
  }
};

// ---------------------------------------------------------------------------
// Randomized compiling

namespace detail {

// Heisenberg propagation of a Pauli pair through CX (control, target),
// in symplectic (x, z) coordinates; signs are global phase here.
inline std::pair<PauliLetter, PauliLetter> cx_conjugate(PauliLetter c, PauliLetter t) {
  auto bits = [](PauliLetter l) -> std::pair<int, int> {
    switch (l) {
      case PauliLetter::I: return {0, 0};
      case PauliLetter::X: return {1, 0};
      case PauliLetter::Z: return {0, 1};
      case PauliLetter::Y: return {1, 1};
    }
    return {0, 0};
  };
  auto letter = [](int x, int z) {
    if (x && z) return PauliLetter::Y;
    if (x) return PauliLetter::X;
    if (z) return PauliLetter::Z;
    return PauliLetter::I;
  };
  auto [xc, zc] = bits(c);
  auto [xt, zt] = bits(t);
  return {letter(xc, zc ^ zt), letter(xt ^ xc, zt)};
}

/// Pauli as native gates: Z = RZ(pi), Y = RZ(pi) then X, up to phase.
inline void append_pauli_gates(Circuit& out, int q, PauliLetter l) {
  switch (l) {
    case PauliLetter::I: break;
    case PauliLetter::X: out.append(Gate::x(q)); break;
    case PauliLetter::Z: out.append(Gate::rz(q, M_PI)); break;
    case PauliLetter::Y:
      out.append(Gate::rz(q, M_PI));
      out.append(Gate::x(q));
      break;
  }
}

}  // namespace detail

/// Pauli-twirls every CX: random Pauli pair before, the CX-conjugated pair
/// after, so each instance equals the original up to global phase.
inline std::vector<Circuit> randomized_compile(const Circuit& c, int count, uint64_t seed) {
  if (count < 1) throw std::invalid_argument("randomized_compile: count >= 1");
  std::vector<Circuit> out;
  const bool single_cx = c.count(GateKind::CX) == 1;
  for (int inst = 0; inst < count; ++inst) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * inst);
    Circuit twirled(c.qubit_count(), c.classical_slots());
    for (const auto& g : c.gates()) {
      if (g.kind != GateKind::CX) {
        twirled.append(g);
        continue;
      }
      // A lone CX cycles through all 16 frames under sequential instances.
      int k = static_cast<int>(single_cx ? inst % 16 : rng() % 16);
      PauliLetter pc = static_cast<PauliLetter>(k & 3);
      PauliLetter pt = static_cast<PauliLetter>((k >> 2) & 3);
      auto [qc, qt] = detail::cx_conjugate(pc, pt);
      detail::append_pauli_gates(twirled, g.q0, pc);
      detail::append_pauli_gates(twirled, g.q1, pt);
      twirled.append(g);
      detail::append_pauli_gates(twirled, g.q0, qc);
      detail::append_pauli_gates(twirled, g.q1, qt);
    }
    out.push_back(std::move(twirled));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Estimation circuits

/// Target circuit with every CX replaced by a noisy identity placeholder
/// (RZZ(0)): same two-qubit noise insertion slots, trivial unitary.
inline Circuit estimation_circuit(const Circuit& c) {
  Circuit out(c.qubit_count(), c.classical_slots());
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::CX) out.append(Gate::rzz(g.q0, g.q1, 0.0));
    else out.append(g);
  }
  return out;
}

/// Global noise factor f = measured/ideal <Z> of the estimation circuit.
inline double estimation_estimate(const Circuit& c, const NoiseModel& noise, uint64_t shots,
                                  uint64_t seed, int slot = 0, double floor = 0.02) {
  Circuit est = estimation_circuit(c);
  double ideal = 0;
  for (const auto& [bits, p] : slot_distribution(est))
    ideal += (bits.at(slot) == '0' ? p : -p);
  if (std::abs(ideal) < 1e-9)
    throw std::runtime_error("estimation circuit has no ideal signal to normalize by");
  double measured = histogram_z(noisy_sample(est, noise, shots, seed), slot);
  double f = measured / ideal;
  if (std::abs(f) < floor)
    throw std::runtime_error("estimation factor below reliability floor");
  return f;
}

inline double estimation_correct(double raw_expectation, double f) {
  if (f == 0) throw std::invalid_argument("estimation_correct: f must be nonzero");
  return raw_expectation / f;
}

// ---------------------------------------------------------------------------
// Zero-noise extrapolation

/// Each CX replaced by `factor` consecutive CXs (odd factor, unitary
/// unchanged, noise amplified).
inline Circuit zne_fold(const Circuit& c, int factor) {
  if (factor < 1 || factor % 2 == 0)
    throw std::invalid_argument("zne_fold: factor must be odd >= 1");
  Circuit out(c.qubit_count(), c.classical_slots());
  for (const auto& g : c.gates()) {
    int reps = g.kind == GateKind::CX ? factor : 1;
    for (int i = 0; i < reps; ++i) out.append(g);
  }
  return out;
}

struct ZneFit {
  double value = 0;
  std::string fit_used;     // may fall back to linear
  double residual = 0;      // linear fit only
  bool fallback = false;
};

inline ZneFit zne_extrapolate(const std::vector<std::pair<int, double>>& points,
                              const std::string& fit = "linear") {
  if (points.size() < 2) throw std::invalid_argument("zne_extrapolate: >= 2 points");
  auto linear = [&]() {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(points.size());
    for (auto [x, y] : points) {
      sx += x;
      sy += y;
      sxx += double(x) * x;
      sxy += double(x) * y;
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double res = 0;
    for (auto [x, y] : points) {
      double e = y - (intercept + slope * x);
      res += e * e;
    }
    return std::pair<double, double>{intercept, std::sqrt(res / n)};
  };
  if (fit == "exponential" && points.size() == 3) {
    // a e^{-b x} + c on uniformly spaced factors (1, 3, 5).
    double y1 = points[0].second, y3 = points[1].second, y5 = points[2].second;
    double d1 = y1 - y3, d2 = y3 - y5;
    if (std::abs(d1) > 1e-12) {
      double u = d2 / d1;  // e^{-2b}
      if (u > 1e-9 && u < 1.0) {
        double b = -std::log(u) / 2;
        double eb = std::exp(-b);
        double a = d1 / (eb * (1 - u));
        double cc = y1 - a * eb;
        return {a + cc, "exponential", 0, false};
      }
    }
    auto [v, res] = linear();
    return {v, "linear", res, true};
  }
  auto [v, res] = linear();
  return {v, "linear", res, fit == "exponential"};
}

// ---------------------------------------------------------------------------
// Full pipeline

struct PipelineDiagnostics {
  std::vector<double> retained;            // herald retained fraction per factor
  std::vector<double> estimation_factors;  // f per factor
  std::vector<std::pair<int, double>> zne_points;
  std::string zne_fit_used;
  double zne_residual = 0;
  std::vector<std::string> warnings;
};

struct PipelineResult {
  double ideal = 0;
  double raw = 0;
  double mitigated = 0;
  PipelineDiagnostics diagnostics;
};

namespace detail {

inline uint64_t derive_seed(uint64_t master, uint64_t idx) {
  uint64_t z = master + 0x9e3779b97f4a7c15ULL * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// The full mitigation chain on the decomposed protocol circuit, composed
/// as: ZNE folding -> randomized compiling -> heralded noisy sampling ->
/// readout correction -> estimation-circuit correction -> extrapolation.
inline PipelineResult pipeline(const WitConfig& cfg, const NoiseModel& noise,
                               const MitigationConfig& mit, uint64_t shots, uint64_t seed) {
  cfg.validate();
  noise.validate();
  mit.validate();
  PipelineResult res;

  Circuit base = decompose(build_wit(cfg, /*include_measure=*/true), superconducting_basis());
  for (const auto& [bits, p] : slot_distribution(base))
    res.ideal += (bits.at(0) == '0' ? p : -p);

  res.raw = histogram_z(noisy_sample(base, noise, shots, detail::derive_seed(seed, 0)), 0);
  if (mit.all_off()) {
    res.mitigated = res.raw;
    return res;
  }

  std::vector<std::vector<double>> R;
  if (mit.readout_correction)
    R = readout_calibrate(noise, {wit_layout(cfg).output()}, shots,
                          detail::derive_seed(seed, 1));

  std::vector<int> factors = mit.zne_factors.empty() ? std::vector<int>{1} : mit.zne_factors;
  std::vector<std::pair<int, double>> points;
  uint64_t item = 2;
  for (int factor : factors) {
    Circuit folded = zne_fold(base, factor);
    std::vector<Circuit> instances =
        mit.rc_randomizations > 0
            ? randomized_compile(folded, mit.rc_randomizations, detail::derive_seed(seed, item++))
            : std::vector<Circuit>{folded};
    uint64_t per = std::max<uint64_t>(1, shots / instances.size());
    Histogram merged;
    uint64_t kept_total = 0, all_total = 0;
    for (size_t i = 0; i < instances.size(); ++i) {
      Circuit run = mit.heralding ? herald(instances[i]) : instances[i];
      Histogram h = noisy_sample(run, noise, per, detail::derive_seed(seed, item++));
      if (mit.heralding) {
        uint64_t total = 0;
        for (const auto& [k, v] : h) total += v;
        HeraldResult hr = herald_filter(h, instances[i].classical_slots());
        all_total += total;
        kept_total += uint64_t(std::llround(hr.retained * double(total)));
        for (const auto& [k, v] : hr.filtered) merged[k] += v;
      } else {
        for (const auto& [k, v] : h) merged[k] += v;
      }
    }
    if (mit.heralding)
      res.diagnostics.retained.push_back(double(kept_total) / double(all_total));

    double z;
    if (mit.readout_correction) {
      std::vector<double> p = histogram_marginal(merged, {0});
      std::vector<double> x = readout_correct(p, R);
      z = x[0] - x[1];
    } else {
      z = histogram_z(merged, 0);
    }

    if (mit.estimation_circuits) {
      try {
        double f = estimation_estimate(folded, noise, shots, detail::derive_seed(seed, item++),
                                       0, mit.estimation_floor);
        res.diagnostics.estimation_factors.push_back(f);
        z = estimation_correct(z, f);
      } catch (const std::exception& e) {
        res.diagnostics.warnings.push_back(std::string("estimation skipped: ") + e.what());
      }
    }
    points.push_back({factor, z});
  }

  res.diagnostics.zne_points = points;
  if (points.size() >= 2) {
    ZneFit fit = zne_extrapolate(points, mit.zne_fit);
    res.mitigated = fit.value;
    res.diagnostics.zne_fit_used = fit.fit_used;
    res.diagnostics.zne_residual = fit.residual;
    if (fit.fallback)
      res.diagnostics.warnings.push_back("exponential fit unavailable; linear fallback");
  } else {
    res.mitigated = points.front().second;
    res.diagnostics.zne_fit_used = "none";
  }
  return res;
}

}  // namespace wit
