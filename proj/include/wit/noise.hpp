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

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wit/bkp.hpp"
#include "wit/circuit.hpp"
#include "wit/statevector.hpp"
#include "wit/tableau.hpp"

namespace wit {

/// Synthetic device noise: depolarizing insertion after every unitary gate
/// (p1 single-qubit, p2 two-qubit), state-preparation excitation, and a
/// per-qubit readout confusion matrix m[i][j] = P(read i | true j),
/// uniform across qubits.
struct NoiseModel {
  double p1 = 0;
  double p2 = 0;
  double prep_excite = 0;
  std::array<std::array<double, 2>, 2> readout = {{{1, 0}, {0, 1}}};

  void validate() const {
    auto prob = [](double p) { return p >= 0 && p <= 1; };
    if (!prob(p1) || !prob(p2) || !prob(prep_excite))
      throw std::invalid_argument("NoiseModel: probabilities in [0, 1]");
    for (int j = 0; j < 2; ++j) {
      if (!prob(readout[0][j]) || !prob(readout[1][j]) ||
          std::abs(readout[0][j] + readout[1][j] - 1.0) > 1e-9)
        throw std::invalid_argument("NoiseModel: confusion columns must sum to 1");
    }
  }

  bool trivial() const {
    return p1 == 0 && p2 == 0 && prep_excite == 0 && trivial_readout();
  }
  bool trivial_readout() const { return readout[1][0] == 0 && readout[0][1] == 0; }

  static NoiseModel from_kv(const std::map<std::string, std::string>& kv) {
    NoiseModel m;
    auto get = [&](const char* k, double& v) {
      auto it = kv.find(k);
      if (it != kv.end()) v = std::stod(it->second);
    };
    get("p1", m.p1);
    get("p2", m.p2);
    get("prep_excite", m.prep_excite);
    double r10 = 0, r01 = 0;  // P(read 1 | true 0), P(read 0 | true 1)
    get("readout_10", r10);
    get("readout_01", r01);
    m.readout = {{{1 - r10, r01}, {r10, 1 - r01}}};
    m.validate();
    return m;
  }

  std::string to_kv() const {
    std::ostringstream os;
    os.precision(17);
    os << "p1 = " << p1 << "\np2 = " << p2 << "\nprep_excite = " << prep_excite
       << "\nreadout_10 = " << readout[1][0] << "\nreadout_01 = " << readout[0][1] << "\n";
    return os.str();
  }
};

using Histogram = std::map<std::string, uint64_t>;

/// <Z> of one classical slot from a histogram of slot strings.
inline double histogram_z(const Histogram& hist, int slot = 0) {
  uint64_t total = 0;
  int64_t diff = 0;
  for (const auto& [key, count] : hist) {
    total += count;
    diff += (key.at(slot) == '0' ? int64_t(count) : -int64_t(count));
  }
  if (total == 0) throw std::runtime_error("histogram_z: empty histogram");
  return double(diff) / double(total);
}

/// Exact joint distribution of classical-slot outcomes for a noiseless
/// circuit, by branch enumeration over MEASURE/RESET.
inline std::map<std::string, double> slot_distribution(const Circuit& c) {
  std::map<std::string, double> dist;
  int branch_points = 0;
  for (const auto& g : c.gates())
    if (g.kind == GateKind::MEASURE || g.kind == GateKind::RESET) ++branch_points;
  if (branch_points > 20) throw std::invalid_argument("slot_distribution: too many branch points");

  std::string slots(c.classical_slots(), '0');
  std::function<void(StateVector, size_t, double, std::string&)> walk =
      [&](StateVector sv, size_t from, double weight, std::string& rec) {
        const auto& gs = c.gates();
        for (size_t i = from; i < gs.size(); ++i) {
          const Gate& g = gs[i];
          if (g.kind == GateKind::MEASURE || g.kind == GateKind::RESET) {
            for (int b = 0; b < 2; ++b) {
              double p = sv.prob_of_bit(g.q0, b);
              if (p < 1e-14) continue;
              StateVector sub = sv;
              sub.project(g.q0, b);
              if (g.kind == GateKind::RESET && b == 1) sub.apply_1q(gates::x(), g.q0);
              char saved = 0;
              if (g.kind == GateKind::MEASURE) {
                saved = rec[g.slot];
                rec[g.slot] = char('0' + b);
              }
              walk(std::move(sub), i + 1, weight * p, rec);
              if (g.kind == GateKind::MEASURE) rec[g.slot] = saved;
            }
            return;
          }
          apply_gate(sv, g);
        }
        dist[rec] += weight;
      };
  walk(StateVector(c.qubit_count()), 0, 1.0, slots);
  return dist;
}

namespace detail {

struct ErrorPlan {
  std::vector<int> prep;                         // excited qubits
  std::vector<std::pair<size_t, int>> gate_err;  // (gate index, pauli code)
  bool clean() const { return prep.empty() && gate_err.empty(); }
};

/// Precomputed fault-location lists so a per-shot plan costs O(#errors)
/// geometric skips instead of one uniform draw per gate.
class PlanSampler {
 public:
  PlanSampler(const Circuit& c, const NoiseModel& noise)
      : qubits_(c.qubit_count()), prep_(noise.prep_excite), p1_(noise.p1), p2_(noise.p2) {
    const auto& gs = c.gates();
    for (size_t i = 0; i < gs.size(); ++i) {
      const Gate& g = gs[i];
      if (g.kind == GateKind::MEASURE || g.kind == GateKind::RESET) continue;
      (g.two_qubit() ? two_ : one_).push_back(i);
    }
  }

  ErrorPlan sample(std::mt19937_64& rng) const {
    ErrorPlan plan;
    if (prep_ > 0)
      for (size_t q = skip(rng, prep_); q < size_t(qubits_); q += 1 + skip(rng, prep_))
        plan.prep.push_back(int(q));
    size_t a = one_.empty() || p1_ <= 0 ? SIZE_MAX : skip(rng, p1_);
    size_t b = two_.empty() || p2_ <= 0 ? SIZE_MAX : skip(rng, p2_);
    while ((a != SIZE_MAX && a < one_.size()) || (b != SIZE_MAX && b < two_.size())) {
      bool take_one = a < one_.size() && (b >= two_.size() || one_[a] < two_[b]);
      if (take_one) {
        plan.gate_err.push_back({one_[a], 1 + int(rng() % 3)});
        a += 1 + skip(rng, p1_);
      } else {
        plan.gate_err.push_back({two_[b], 1 + int(rng() % 15)});
        b += 1 + skip(rng, p2_);
      }
    }
    return plan;
  }

 private:
  // Geometric number of fault-free locations before the next fault.
  static size_t skip(std::mt19937_64& rng, double p) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    if (u <= 0) return SIZE_MAX;
    double k = std::log(u) / std::log1p(-p);
    return k >= double(SIZE_MAX) ? SIZE_MAX : size_t(k);
  }

  int qubits_;
  double prep_, p1_, p2_;
  std::vector<size_t> one_, two_;
};

inline ErrorPlan sample_plan(const Circuit& c, const NoiseModel& noise, std::mt19937_64& rng) {
  return PlanSampler(c, noise).sample(rng);
}

inline void apply_pauli_code_sv(StateVector& sv, const Gate& g, int code) {
  int m = sv.qubit_count();
  PauliString p(m);
  p.set(g.q0, static_cast<PauliLetter>(code & 3));
  if (g.two_qubit()) p.set(g.q1, static_cast<PauliLetter>((code >> 2) & 3));
  sv.apply_pauli(p);
}

inline void apply_readout(std::string& bits, const NoiseModel& noise, std::mt19937_64& rng) {
  if (noise.trivial_readout()) return;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (char& ch : bits) {
    int truth = ch - '0';
    // column `truth`: P(read 1 | truth)
    if (unit(rng) < noise.readout[1][truth]) ch = '1';
    else ch = '0';
  }
}

inline std::string run_trajectory_sv(const Circuit& c, const ErrorPlan& plan,
                                     std::mt19937_64& rng) {
  uint64_t basis = 0;
  for (int q : plan.prep) basis |= uint64_t(1) << q;
  StateVector sv(c.qubit_count(), basis);
  std::string bits(c.classical_slots(), '0');
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  size_t err_idx = 0;
  const auto& gs = c.gates();
  for (size_t i = 0; i < gs.size(); ++i) {
    const Gate& g = gs[i];
    if (g.kind == GateKind::RESET) {
      double p0 = sv.prob_of_bit(g.q0, 0);
      int b = unit(rng) < p0 ? 0 : 1;
      sv.project(g.q0, b);
      if (b == 1) sv.apply_1q(gates::x(), g.q0);
    } else if (g.kind == GateKind::MEASURE) {
      double p0 = sv.prob_of_bit(g.q0, 0);
      int b = unit(rng) < p0 ? 0 : 1;
      sv.project(g.q0, b);
      bits[g.slot] = char('0' + b);
    } else {
      apply_gate(sv, g);
      if (err_idx < plan.gate_err.size() && plan.gate_err[err_idx].first == i)
        apply_pauli_code_sv(sv, g, plan.gate_err[err_idx++].second);
    }
  }
  return bits;
}

inline std::string run_trajectory_tableau(const Circuit& c, const ErrorPlan& plan,
                                          std::mt19937_64& rng) {
  TableauSimulator sim(c.qubit_count());
  for (int q : plan.prep) sim.pauli_x(q);
  std::string bits(c.classical_slots(), '0');
  size_t err_idx = 0;
  const auto& gs = c.gates();
  for (size_t i = 0; i < gs.size(); ++i) {
    const Gate& g = gs[i];
    int m = -1;
    sim.apply(g, rng, &m);
    if (g.kind == GateKind::MEASURE) bits[g.slot] = char('0' + m);
    if (err_idx < plan.gate_err.size() && plan.gate_err[err_idx].first == i) {
      int code = plan.gate_err[err_idx++].second;
      sim.apply_pauli(g.q0, static_cast<PauliLetter>(code & 3));
      if (g.two_qubit()) sim.apply_pauli(g.q1, static_cast<PauliLetter>((code >> 2) & 3));
    }
  }
  return bits;
}

/// Pauli-frame fast path for Clifford circuits whose recorded measurements
/// are all deterministic in the clean circuit: a shot is the clean outcome
/// with the sampled Pauli errors conjugated forward as an (x, z) bit frame
/// and XORed into the measured bits. Resets absorb the frame on their wire.
class FrameSampler {
 public:
  explicit FrameSampler(const Circuit& c) {
    const auto& gs = c.gates();
    if (c.qubit_count() > 32 || !is_clifford_circuit(c)) return;
    TableauSimulator sim(c.qubit_count());
    std::mt19937_64 rng(0);  // resets may branch; recorded bits may not
    clean_bits_.assign(c.classical_slots(), '0');
    ops_.reserve(gs.size());
    for (const auto& g : gs) {
      if (g.kind == GateKind::MEASURE && sim.measurement_random(g.q0)) return;
      int m = -1;
      sim.apply(g, rng, &m);
      if (g.kind == GateKind::MEASURE) clean_bits_[g.slot] = char('0' + m);
      ops_.push_back(compile(g));
    }
    ok_ = true;
  }

  bool usable() const { return ok_; }

  std::string run(const ErrorPlan& plan) const {
    std::string bits = clean_bits_;
    uint64_t fx = 0, fz = 0;
    size_t err_idx = 0, i = 0;
    if (plan.prep.empty()) {
      if (plan.gate_err.empty()) return bits;
      // The frame is empty until the first error fires; skip the prefix.
      i = plan.gate_err[0].first;
      inject(fx, fz, plan.gate_err[0]);
      ++i;
      err_idx = 1;
    } else {
      for (int q : plan.prep) fx |= uint64_t(1) << q;
    }
    for (; i < ops_.size(); ++i) {
      const Op& o = ops_[i];
      const uint64_t ba = uint64_t(1) << o.a;
      switch (o.kind) {
        case OpKind::Nop: break;
        case OpKind::Hadamard: {
          uint64_t x = fx & ba, z = fz & ba;
          fx ^= x ^ z;
          fz ^= x ^ z;
          break;
        }
        case OpKind::XtoY:  // S-like: X picks up Z
          fz ^= fx & ba;
          break;
        case OpKind::ZtoY:  // sqrt(X)-like: Z picks up X
          fx ^= fz & ba;
          break;
        case OpKind::Cnot: {
          uint64_t bb = uint64_t(1) << o.b;
          if (fx & ba) fx ^= bb;
          if (fz & bb) fz ^= ba;
          break;
        }
        case OpKind::Swap: {
          uint64_t bb = uint64_t(1) << o.b;
          uint64_t xa = (fx & ba) != 0, xb = (fx & bb) != 0;
          uint64_t za = (fz & ba) != 0, zb = (fz & bb) != 0;
          if (xa != xb) fx ^= ba | bb;
          if (za != zb) fz ^= ba | bb;
          break;
        }
        case OpKind::ZzQuarter: {
          uint64_t bb = uint64_t(1) << o.b;
          bool t = ((fx & ba) != 0) != ((fx & bb) != 0);
          if (t) fz ^= ba | bb;
          break;
        }
        case OpKind::Reset:
          fx &= ~ba;
          fz &= ~ba;
          break;
        case OpKind::Measure:
          if (fx & ba) bits[o.b] = char('0' + (1 - (bits[o.b] - '0')));
          break;
      }
      if (err_idx < plan.gate_err.size() && plan.gate_err[err_idx].first == i)
        inject(fx, fz, plan.gate_err[err_idx++]);
    }
    return bits;
  }

 private:
  enum class OpKind { Nop, Hadamard, XtoY, ZtoY, Cnot, Swap, ZzQuarter, Reset, Measure };
  struct Op {
    OpKind kind;
    int a = 0, b = 0;
  };

  static Op compile(const Gate& g) {
    switch (g.kind) {
      case GateKind::H: return {OpKind::Hadamard, g.q0};
      case GateKind::X: return {OpKind::Nop, g.q0};
      case GateKind::SX: return {OpKind::ZtoY, g.q0};
      case GateKind::RX:
        return {quarter_turns(g.theta) % 2 ? OpKind::ZtoY : OpKind::Nop, g.q0};
      case GateKind::RY:
        return {quarter_turns(g.theta) % 2 ? OpKind::Hadamard : OpKind::Nop, g.q0};
      case GateKind::RZ:
        return {quarter_turns(g.theta) % 2 ? OpKind::XtoY : OpKind::Nop, g.q0};
      case GateKind::CX: return {OpKind::Cnot, g.q0, g.q1};
      case GateKind::SWAP: return {OpKind::Swap, g.q0, g.q1};
      case GateKind::RZZ:
        return {quarter_turns(g.theta) % 2 ? OpKind::ZzQuarter : OpKind::Nop, g.q0, g.q1};
      case GateKind::RESET: return {OpKind::Reset, g.q0};
      case GateKind::MEASURE: return {OpKind::Measure, g.q0, g.slot};
    }
    return {OpKind::Nop, 0};
  }

  // Error codes follow sample_plan: low 2 bits on q0, next 2 bits on q1
  // (zero for one-qubit gates, so the second letter is a no-op).
  void inject(uint64_t& fx, uint64_t& fz, const std::pair<size_t, int>& err) const {
    const Op& o = ops_[err.first];
    auto letter = [&](int l, int q) {
      if (l == 1 || l == 2) fx ^= uint64_t(1) << q;
      if (l == 3 || l == 2) fz ^= uint64_t(1) << q;
    };
    letter(err.second & 3, o.a);
    letter((err.second >> 2) & 3, o.b);
  }

  bool ok_ = false;
  std::string clean_bits_;
  std::vector<Op> ops_;
};

/// Cumulative distribution for drawing clean-shot outcomes directly.
struct CleanSampler {
  std::vector<std::pair<double, std::string>> cdf;

  explicit CleanSampler(const Circuit& c) {
    double acc = 0;
    for (const auto& [bits, p] : slot_distribution(c)) {
      acc += p;
      cdf.push_back({acc, bits});
    }
  }

  const std::string& draw(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng) * cdf.back().first;
    for (const auto& [edge, bits] : cdf)
      if (u <= edge) return bits;
    return cdf.back().second;
  }
};

}  // namespace detail

/// Monte-Carlo trajectory sampling under the noise model: per shot, sample
/// preparation excitations and per-gate depolarizing Pauli insertions, run
/// the trajectory, then pass recorded bits through the readout confusion.
/// Error-free shots draw from the cached exact clean distribution; noisy
/// Clifford circuits run on the stabilizer tableau, everything else on the
/// statevector engine. Deterministic under a fixed seed.
inline Histogram noisy_sample(const Circuit& c, const NoiseModel& noise, uint64_t shots,
                              uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("noisy_sample: shots >= 1");
  noise.validate();
  if (c.classical_slots() < 1)
    throw std::invalid_argument("noisy_sample: circuit measures nothing");
  std::mt19937_64 rng(seed);
  const bool clifford = is_clifford_circuit(c);
  detail::FrameSampler frame(c);
  // The exact clean distribution needs the statevector engine; for circuits
  // beyond its reach, Clifford trajectories cover the error-free shots too.
  std::optional<detail::CleanSampler> clean;
  if (!frame.usable()) {
    try {
      clean.emplace(c);
    } catch (const std::invalid_argument&) {
      if (!clifford) throw;
    }
  }
  Histogram hist;
  detail::PlanSampler plans(c, noise);
  for (uint64_t s = 0; s < shots; ++s) {
    detail::ErrorPlan plan = plans.sample(rng);
    std::string bits = frame.usable() ? frame.run(plan)
                       : plan.clean() && clean ? clean->draw(rng)
                       : clifford ? detail::run_trajectory_tableau(c, plan, rng)
                                  : detail::run_trajectory_sv(c, plan, rng);
    detail::apply_readout(bits, noise, rng);
    ++hist[bits];
  }
  return hist;
}

// ---------------------------------------------------------------------------
// Heralding

/// Circuit with a leading all-qubit measurement round; herald outcomes are
/// appended after the original classical slots so existing slot indices
/// stay valid.
inline Circuit herald(const Circuit& c) {
  Circuit out(c.qubit_count(), c.classical_slots() + c.qubit_count());
  for (int q = 0; q < c.qubit_count(); ++q)
    out.append(Gate::measure(q, c.classical_slots() + q));
  for (const auto& g : c.gates()) out.append(g);
  return out;
}

struct HeraldResult {
  Histogram filtered;       // herald bits stripped
  double retained = 0;      // fraction of shots kept
};

/// Drops shots whose herald bits are not all zero. `payload_slots` is the
/// classical slot count of the original (pre-herald) circuit.
inline HeraldResult herald_filter(const Histogram& raw, int payload_slots) {
  HeraldResult res;
  uint64_t total = 0, kept = 0;
  for (const auto& [bits, count] : raw) {
    total += count;
    bool ok = true;
    for (size_t i = payload_slots; i < bits.size(); ++i)
      if (bits[i] != '0') {
        ok = false;
        break;
      }
    if (ok) {
      kept += count;
      res.filtered[bits.substr(0, payload_slots)] += count;
    }
  }
  if (kept == 0) throw std::runtime_error("herald_filter: all shots discarded");
  res.retained = double(kept) / double(total);
  return res;
}

// ---------------------------------------------------------------------------
// Readout calibration and correction

/// Response matrix over the measured register: column b holds the sampled
/// outcome distribution after preparing computational state |b>.
inline std::vector<std::vector<double>> readout_calibrate(const NoiseModel& noise,
                                                          const std::vector<int>& qubits,
                                                          uint64_t shots, uint64_t seed) {
  const int k = static_cast<int>(qubits.size());
  if (k < 1 || k > 4) throw std::invalid_argument("readout_calibrate: 1..4 qubits");
  int nq = 0;
  for (int q : qubits) nq = std::max(nq, q + 1);
  const size_t d = size_t(1) << k;
  std::vector<std::vector<double>> R(d, std::vector<double>(d, 0.0));
  for (size_t b = 0; b < d; ++b) {
    Circuit c(nq, k);
    for (int j = 0; j < k; ++j)
      if (b & (size_t(1) << j)) c.append(Gate::x(qubits[j]));
    for (int j = 0; j < k; ++j) c.append(Gate::measure(qubits[j], j));
    Histogram h = noisy_sample(c, noise, shots, seed + b);
    uint64_t total = 0;
    for (const auto& [bits, count] : h) total += count;
    for (const auto& [bits, count] : h) {
      size_t row = 0;
      for (int j = 0; j < k; ++j)
        if (bits[j] == '1') row |= size_t(1) << j;
      R[row][b] += double(count) / double(total);
    }
  }
  return R;
}

namespace detail {

/// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0, theta = 0;
  int rho = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / double(i + 1);
    if (u[i] - t > 0) {
      rho = static_cast<int>(i + 1);
      theta = t;
    }
  }
  if (rho == 0) theta = (css - 1.0) / double(u.size());
  for (auto& x : v) x = std::max(0.0, x - theta);
}

inline std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12)
      throw std::runtime_error("readout response matrix is ill-conditioned");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace detail

/// Least-squares inversion of the response matrix followed by projection
/// onto the probability simplex (constrained correction; never emits
/// negative probabilities).
inline std::vector<double> readout_correct(const std::vector<double>& p,
                                           const std::vector<std::vector<double>>& R) {
  const size_t d = p.size();
  if (R.size() != d) throw std::invalid_argument("readout_correct: dimension mismatch");
  // Normal equations R^T R x = R^T p.
  std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
  std::vector<double> b(d, 0.0);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      for (size_t k = 0; k < d; ++k) a[i][j] += R[k][i] * R[k][j];
    }
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) b[i] += R[k][i] * p[k];
  std::vector<double> x = detail::solve_linear(std::move(a), std::move(b));
  detail::project_simplex(x);
  return x;
}

inline std::vector<double> histogram_marginal(const Histogram& hist,
                                              const std::vector<int>& slots) {
  const size_t d = size_t(1) << slots.size();
  std::vector<double> p(d, 0.0);
  uint64_t total = 0;
  for (const auto& [bits, count] : hist) {
    total += count;
    size_t idx = 0;
    for (size_t j = 0; j < slots.size(); ++j)
      if (bits.at(slots[j]) == '1') idx |= size_t(1) << j;
    p[idx] += double(count);
  }
  if (total == 0) throw std::runtime_error("histogram_marginal: empty histogram");
  for (auto& v : p) v /= double(total);
  return p;
}

}  // namespace wit
