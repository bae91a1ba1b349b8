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
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wit/circuit.hpp"
#include "wit/pauli.hpp"

namespace wit {

using cdouble = std::complex<double>;

/// Dense normalized amplitude vector over 2^m basis states. Qubit j maps
/// to bit j of the basis index (qubit 0 is the least significant bit).
class StateVector {
 public:
  explicit StateVector(int qubits, uint64_t basis_index = 0)
      : m_(qubits), amps_(size_t(1) << qubits, cdouble(0)) {
    if (qubits < 0 || qubits > 26) throw std::invalid_argument("qubit count out of range");
    if (basis_index >= amps_.size()) throw std::out_of_range("basis index too large");
    amps_[basis_index] = 1.0;
  }

  StateVector(int qubits, std::vector<cdouble> amps) : m_(qubits), amps_(std::move(amps)) {
    if (amps_.size() != size_t(1) << qubits)
      throw std::invalid_argument("amplitude count must be 2^qubits");
  }

  int qubit_count() const { return m_; }
  size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  cdouble& operator[](size_t i) { return amps_[i]; }
  const cdouble& operator[](size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void normalize() {
    double n = norm();
    if (n <= 0) throw std::runtime_error("cannot normalize zero state");
    for (auto& a : amps_) a /= n;
  }

  void apply_1q(const std::array<cdouble, 4>& u, int q) {
    const uint64_t bit = uint64_t(1) << q;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      cdouble a0 = amps_[i], a1 = amps_[i | bit];
      amps_[i] = u[0] * a0 + u[1] * a1;
      amps_[i | bit] = u[2] * a0 + u[3] * a1;
    }
  }

  /// u is 4x4 row-major over basis |q1 q0> with q0 the low bit.
  void apply_2q(const std::array<cdouble, 16>& u, int q0, int q1) {
    const uint64_t b0 = uint64_t(1) << q0, b1 = uint64_t(1) << q1;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & (b0 | b1)) continue;
      std::array<cdouble, 4> v = {amps_[i], amps_[i | b0], amps_[i | b1], amps_[i | b0 | b1]};
      for (int r = 0; r < 4; ++r) {
        cdouble s = 0;
        for (int c = 0; c < 4; ++c) s += u[4 * r + c] * v[c];
        uint64_t j = i | (r & 1 ? b0 : 0) | (r & 2 ? b1 : 0);
        amps_[j] = s;
      }
    }
  }

  /// Applies a dense 2^k x 2^k row-major unitary to the listed qubits;
  /// qubits[0] is the least significant bit of the local index.
  void apply_unitary(const std::vector<cdouble>& u, const std::vector<int>& qubits) {
    const int k = static_cast<int>(qubits.size());
    const size_t d = size_t(1) << k;
    if (u.size() != d * d) throw std::invalid_argument("unitary dimension mismatch");
    uint64_t mask = 0;
    for (int q : qubits) mask |= uint64_t(1) << q;
    std::vector<cdouble> v(d);
    for (uint64_t base = 0; base < amps_.size(); ++base) {
      if (base & mask) continue;
      for (size_t r = 0; r < d; ++r) {
        uint64_t idx = base;
        for (int j = 0; j < k; ++j)
          if (r & (size_t(1) << j)) idx |= uint64_t(1) << qubits[j];
        v[r] = amps_[idx];
      }
      for (size_t r = 0; r < d; ++r) {
        cdouble s = 0;
        for (size_t c = 0; c < d; ++c) s += u[d * r + c] * v[c];
        uint64_t idx = base;
        for (int j = 0; j < k; ++j)
          if (r & (size_t(1) << j)) idx |= uint64_t(1) << qubits[j];
        amps_[idx] = s;
      }
    }
  }

  /// Applies a signed Pauli word exactly (phase included).
  void apply_pauli(const PauliString& p) {
    if (static_cast<int>(p.size()) != m_)
      throw std::invalid_argument("Pauli length mismatch");
    uint64_t flip = 0;
    // phase(i) accumulated per basis state from Y/Z letters.
    std::vector<std::pair<uint64_t, cdouble>> phase_bits;
    cdouble global = p.phase();
    for (size_t q = 0; q < p.size(); ++q) {
      uint64_t bit = uint64_t(1) << q;
      switch (p.at(q)) {
        case PauliLetter::I: break;
        case PauliLetter::X: flip |= bit; break;
        case PauliLetter::Y:
          flip |= bit;
          phase_bits.push_back({bit, cdouble(0, 1)});  // i if bit set -> factor below
          break;
        case PauliLetter::Z:
          phase_bits.push_back({bit, cdouble(-1, 0)});
          break;
      }
    }
    std::vector<cdouble> out(amps_.size());
    for (uint64_t i = 0; i < amps_.size(); ++i) {
      cdouble f = global;
      for (auto& [bit, factor] : phase_bits) {
        if (factor == cdouble(0, 1)) {
          // Y: |0> -> i|1>, |1> -> -i|0>
          f *= (i & bit) ? cdouble(0, -1) : cdouble(0, 1);
        } else {
          if (i & bit) f *= -1.0;
        }
      }
      out[i ^ flip] = f * amps_[i];
    }
    amps_ = std::move(out);
  }

  double prob_of_bit(int q, int value) const {
    const uint64_t bit = uint64_t(1) << q;
    double p = 0;
    for (uint64_t i = 0; i < amps_.size(); ++i)
      if (((i & bit) != 0) == (value != 0)) p += std::norm(amps_[i]);
    return p;
  }

  /// Projects qubit q onto |value> and renormalizes.
  void project(int q, int value) {
    const uint64_t bit = uint64_t(1) << q;
    double p = prob_of_bit(q, value);
    if (p <= 1e-300) throw std::runtime_error("projection onto zero-probability branch");
    double s = 1.0 / std::sqrt(p);
    for (uint64_t i = 0; i < amps_.size(); ++i) {
      if (((i & bit) != 0) == (value != 0))
        amps_[i] *= s;
      else
        amps_[i] = 0;
    }
  }

  cdouble inner(const StateVector& other) const {
    if (other.m_ != m_) throw std::invalid_argument("dimension mismatch");
    cdouble s = 0;
    for (uint64_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

 private:
  int m_;
  std::vector<cdouble> amps_;
};

namespace gates {

inline std::array<cdouble, 4> rx(double t) {
  cdouble c = std::cos(t / 2), s = cdouble(0, -1) * std::sin(t / 2);
  return {c, s, s, c};
}
inline std::array<cdouble, 4> ry(double t) {
  double c = std::cos(t / 2), s = std::sin(t / 2);
  return {c, -s, s, c};
}
inline std::array<cdouble, 4> rz(double t) {
  return {std::exp(cdouble(0, -t / 2)), 0, 0, std::exp(cdouble(0, t / 2))};
}
inline std::array<cdouble, 4> sx() {
  // sqrt(X): (1/2) [[1+i, 1-i], [1-i, 1+i]]
  cdouble a(0.5, 0.5), b(0.5, -0.5);
  return {a, b, b, a};
}
inline std::array<cdouble, 4> x() { return {0, 1, 1, 0}; }
inline std::array<cdouble, 4> h() {
  double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}
// Basis order |q1 q0>; q0 is the control for cx(control=q0).
inline std::array<cdouble, 16> cx_low_control() {
  return {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0};
}
inline std::array<cdouble, 16> swap() {
  return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
}
inline std::array<cdouble, 16> rzz(double t) {
  cdouble e0 = std::exp(cdouble(0, -t / 2)), e1 = std::exp(cdouble(0, t / 2));
  return {e0, 0, 0, 0, 0, e1, 0, 0, 0, 0, e1, 0, 0, 0, 0, e0};
}

}  // namespace gates

inline void apply_gate(StateVector& sv, const Gate& g) {
  switch (g.kind) {
    case GateKind::RX: sv.apply_1q(gates::rx(g.theta), g.q0); break;
    case GateKind::RY: sv.apply_1q(gates::ry(g.theta), g.q0); break;
    case GateKind::RZ: sv.apply_1q(gates::rz(g.theta), g.q0); break;
    case GateKind::SX: sv.apply_1q(gates::sx(), g.q0); break;
    case GateKind::X: sv.apply_1q(gates::x(), g.q0); break;
    case GateKind::H: sv.apply_1q(gates::h(), g.q0); break;
    case GateKind::CX: sv.apply_2q(gates::cx_low_control(), g.q0, g.q1); break;
    case GateKind::SWAP: sv.apply_2q(gates::swap(), g.q0, g.q1); break;
    case GateKind::RZZ: sv.apply_2q(gates::rzz(g.theta), g.q0, g.q1); break;
    default:
      throw std::invalid_argument("apply_gate: non-unitary gate");
  }
}

struct RunResult {
  StateVector state;
  std::vector<int> measurements;  // one entry per classical slot, -1 if unwritten
};

/// Runs the circuit on a basis state or a caller-provided state. RESET
/// projects onto an rng-chosen branch, renormalizes and forces |0>;
/// MEASURE projects onto the sampled outcome and records it.
inline RunResult run(const Circuit& c, StateVector initial, uint64_t rng_seed = 0) {
  if (initial.qubit_count() != c.qubit_count())
    throw std::invalid_argument("initial state dimension mismatch");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RunResult r{std::move(initial), std::vector<int>(c.classical_slots(), -1)};
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::RESET) {
      double p0 = r.state.prob_of_bit(g.q0, 0);
      int branch = unit(rng) < p0 ? 0 : 1;
      r.state.project(g.q0, branch);
      if (branch == 1) r.state.apply_1q(gates::x(), g.q0);
    } else if (g.kind == GateKind::MEASURE) {
      double p0 = r.state.prob_of_bit(g.q0, 0);
      int outcome = unit(rng) < p0 ? 0 : 1;
      r.state.project(g.q0, outcome);
      r.measurements[g.slot] = outcome;
    } else {
      apply_gate(r.state, g);
    }
    double n = r.state.norm();
    if (!std::isfinite(n)) throw std::runtime_error("NaN amplitude during simulation");
  }
  return r;
}

inline RunResult run(const Circuit& c, uint64_t basis_index = 0, uint64_t rng_seed = 0) {
  return run(c, StateVector(c.qubit_count(), basis_index), rng_seed);
}

/// <psi|P|psi> for Hermitian P (phase +-1). The imaginary part of the raw
/// quadratic form stays below 1e-10 for such P and is discarded.
inline double expectation(const StateVector& sv, const PauliString& p) {
  if (!p.is_hermitian()) throw std::invalid_argument("expectation of non-Hermitian Pauli");
  StateVector copy = sv;
  copy.apply_pauli(p);
  cdouble v = sv.inner(copy);
  return v.real();
}

/// Single-qubit Pauli expectation.
inline double expectation(const StateVector& sv, int qubit, PauliLetter l) {
  return expectation(sv, PauliString::single(sv.qubit_count(), qubit, l));
}

/// Deterministic exact expectation for circuits that may contain RESET:
/// enumerates both reset branches weighted by probability. MEASURE gates
/// are ignored (stripped) on this path.
inline double expectation_exact(const Circuit& c, const PauliString& p,
                                StateVector initial) {
  // Find first RESET; recurse on both branches.
  const auto& gs = c.gates();
  for (size_t i = 0; i < gs.size(); ++i) {
    const Gate& g = gs[i];
    if (g.kind == GateKind::MEASURE) continue;
    if (g.kind == GateKind::RESET) {
      Circuit rest(c.qubit_count(), c.classical_slots());
      for (size_t j = i + 1; j < gs.size(); ++j) rest.append(gs[j]);
      double total = 0;
      for (int branch = 0; branch < 2; ++branch) {
        double pb = initial.prob_of_bit(g.q0, branch);
        if (pb < 1e-14) continue;
        StateVector b = initial;
        b.project(g.q0, branch);
        if (branch == 1) b.apply_1q(gates::x(), g.q0);
        total += pb * expectation_exact(rest, p, std::move(b));
      }
      return total;
    }
    apply_gate(initial, g);
  }
  return expectation(initial, p);
}

inline double expectation_exact(const Circuit& c, const PauliString& p) {
  return expectation_exact(c, p, StateVector(c.qubit_count()));
}

inline double expectation_exact(const Circuit& c, int qubit, PauliLetter l) {
  return expectation_exact(c, PauliString::single(c.qubit_count(), qubit, l));
}

/// Born-rule sampling over a subset of qubits; keys are bitstrings with
/// character i corresponding to measured_qubits[i].
inline std::map<std::string, uint64_t> sample(const StateVector& sv,
                                              const std::vector<int>& measured_qubits,
                                              uint64_t shots, uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots >= 1 required");
  const size_t k = measured_qubits.size();
  std::vector<double> probs(size_t(1) << k, 0.0);
  for (uint64_t i = 0; i < sv.dim(); ++i) {
    double p = std::norm(sv[i]);
    if (p == 0) continue;
    size_t key = 0;
    for (size_t j = 0; j < k; ++j)
      if (i & (uint64_t(1) << measured_qubits[j])) key |= size_t(1) << j;
    probs[key] += p;
  }
  std::vector<double> cdf(probs.size());
  double acc = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<std::string, uint64_t> hist;
  for (uint64_t s = 0; s < shots; ++s) {
    double u = unit(rng) * acc;
    size_t lo = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (lo >= probs.size()) lo = probs.size() - 1;
    std::string key(k, '0');
    for (size_t j = 0; j < k; ++j)
      if (lo & (size_t(1) << j)) key[j] = '1';
    ++hist[key];
  }
  return hist;
}

}  // namespace wit
