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
#include <random>
#include <stdexcept>
#include <vector>

#include "wit/circuit.hpp"
#include "wit/pauli.hpp"

namespace wit {

/// Quarter-turn multiple of a rotation angle, or -1 when the angle is not
/// a Clifford angle (multiple of pi/2 within tolerance).
inline int quarter_turns(double theta, double tol = 1e-9) {
  double k = theta / (M_PI / 2);
  double r = std::round(k);
  if (std::abs(k - r) > tol) return -1;
  int q = static_cast<int>(std::llround(r)) % 4;
  return (q + 4) % 4;
}

/// True when every rotation angle in the circuit is a multiple of pi/2, so
/// the circuit is Clifford and eligible for tableau simulation.
inline bool is_clifford_circuit(const Circuit& c) {
  for (const auto& g : c.gates())
    if (is_rotation(g.kind) && quarter_turns(g.theta) < 0) return false;
  return true;
}

/// Aaronson-Gottesman stabilizer tableau for Clifford circuits up to 32
/// qubits: destabilizer rows 0..n-1, stabilizer rows n..2n-1, one sign bit
/// per row. Used as the fast path for Pauli-trajectory noise sampling.
class TableauSimulator {
 public:
  explicit TableauSimulator(int qubits) : n_(qubits) {
    if (qubits < 1 || qubits > 32) throw std::invalid_argument("tableau: 1..32 qubits");
    x_.assign(2 * n_, 0);
    z_.assign(2 * n_, 0);
    r_.assign(2 * n_, 0);
    for (int i = 0; i < n_; ++i) {
      x_[i] = bit(i);        // destabilizer X_i
      z_[n_ + i] = bit(i);   // stabilizer Z_i
    }
  }

  int qubit_count() const { return n_; }

  void h(int a) {
    for (int i = 0; i < 2 * n_; ++i) {
      r_[i] ^= get(x_[i], a) & get(z_[i], a);
      uint32_t xa = get(x_[i], a), za = get(z_[i], a);
      put(x_[i], a, za);
      put(z_[i], a, xa);
    }
  }

  void s(int a) {
    for (int i = 0; i < 2 * n_; ++i) {
      r_[i] ^= get(x_[i], a) & get(z_[i], a);
      z_[i] ^= (x_[i] & bit(a));
    }
  }

  void sdg(int a) { pauli_z(a); s(a); }

  void cnot(int a, int b) {
    for (int i = 0; i < 2 * n_; ++i) {
      r_[i] ^= get(x_[i], a) & get(z_[i], b) & (get(x_[i], b) ^ get(z_[i], a) ^ 1u);
      if (get(x_[i], a)) x_[i] ^= bit(b);
      if (get(z_[i], b)) z_[i] ^= bit(a);
    }
  }

  // Applying a Pauli flips the sign of every anticommuting row.
  void pauli_x(int a) {
    for (int i = 0; i < 2 * n_; ++i) r_[i] ^= get(z_[i], a);
  }
  void pauli_z(int a) {
    for (int i = 0; i < 2 * n_; ++i) r_[i] ^= get(x_[i], a);
  }
  void pauli_y(int a) {
    for (int i = 0; i < 2 * n_; ++i) r_[i] ^= get(x_[i], a) ^ get(z_[i], a);
  }

  void apply_pauli(int a, PauliLetter l) {
    switch (l) {
      case PauliLetter::I: break;
      case PauliLetter::X: pauli_x(a); break;
      case PauliLetter::Y: pauli_y(a); break;
      case PauliLetter::Z: pauli_z(a); break;
    }
  }

  /// True when measuring qubit `a` now would give a random outcome.
  bool measurement_random(int a) const {
    for (int i = n_; i < 2 * n_; ++i)
      if (get(x_[i], a)) return true;
    return false;
  }

  int measure(int a, std::mt19937_64& rng) {
    int p = -1;
    for (int i = n_; i < 2 * n_; ++i)
      if (get(x_[i], a)) {
        p = i;
        break;
      }
    if (p >= 0) {
      // Random outcome.
      for (int i = 0; i < 2 * n_; ++i)
        if (i != p && get(x_[i], a)) rowmul(i, p);
      x_[p - n_] = x_[p];
      z_[p - n_] = z_[p];
      r_[p - n_] = r_[p];
      x_[p] = 0;
      z_[p] = bit(a);
      r_[p] = (rng() >> 33) & 1u;
      return static_cast<int>(r_[p]);
    }
    // Deterministic outcome via scratch row.
    uint32_t sx = 0, sz = 0;
    int sr2 = 0;  // phase exponent of i, mod 4
    for (int i = 0; i < n_; ++i)
      if (get(x_[i], a)) accumulate(sx, sz, sr2, x_[n_ + i], z_[n_ + i], r_[n_ + i]);
    return (sr2 >> 1) & 1;
  }

  void reset(int a, std::mt19937_64& rng) {
    if (measure(a, rng) == 1) pauli_x(a);
  }

  /// Executes one Clifford gate, decomposing rotations into {S, H, CX}
  /// sequences; global phase is untracked. Throws on non-Clifford angles.
  void apply(const Gate& g, std::mt19937_64& rng, int* measured = nullptr) {
    switch (g.kind) {
      case GateKind::H: h(g.q0); return;
      case GateKind::X: pauli_x(g.q0); return;
      case GateKind::SX: h(g.q0); s(g.q0); h(g.q0); return;
      case GateKind::CX: cnot(g.q0, g.q1); return;
      case GateKind::SWAP:
        cnot(g.q0, g.q1); cnot(g.q1, g.q0); cnot(g.q0, g.q1);
        return;
      case GateKind::RZ: rz_quarters(g.q0, turns(g.theta)); return;
      case GateKind::RX:
        h(g.q0); rz_quarters(g.q0, turns(g.theta)); h(g.q0);
        return;
      case GateKind::RY:
        // RY = S RX S^dag (rightmost factor acts first).
        sdg(g.q0); h(g.q0); rz_quarters(g.q0, turns(g.theta)); h(g.q0); s(g.q0);
        return;
      case GateKind::RZZ:
        cnot(g.q0, g.q1); rz_quarters(g.q1, turns(g.theta)); cnot(g.q0, g.q1);
        return;
      case GateKind::RESET: reset(g.q0, rng); return;
      case GateKind::MEASURE: {
        int m = measure(g.q0, rng);
        if (measured) *measured = m;
        return;
      }
    }
  }

 private:
  static uint32_t bit(int a) { return uint32_t(1) << a; }
  static uint32_t get(uint32_t w, int a) { return (w >> a) & 1u; }
  static void put(uint32_t& w, int a, uint32_t v) { w = (w & ~bit(a)) | (v << a); }

  static int turns(double theta) {
    int q = quarter_turns(theta);
    if (q < 0) throw std::invalid_argument("tableau: non-Clifford rotation angle");
    return q;
  }

  void rz_quarters(int a, int q) {
    switch (q) {
      case 0: return;
      case 1: s(a); return;
      case 2: pauli_z(a); return;
      case 3: sdg(a); return;
    }
  }

  // Phase exponent of the product of two Pauli letters given as (x, z) bits.
  static int g_exp(uint32_t x1, uint32_t z1, uint32_t x2, uint32_t z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return static_cast<int>(z2) - static_cast<int>(x2);
    if (x1) return static_cast<int>(z2) * (2 * static_cast<int>(x2) - 1);
    return static_cast<int>(x2) * (1 - 2 * static_cast<int>(z2));
  }

  void accumulate(uint32_t& sx, uint32_t& sz, int& sr2, uint32_t hx, uint32_t hz,
                  uint32_t hr) const {
    int phase = 2 * static_cast<int>(hr);
    for (int j = 0; j < n_; ++j)
      phase += g_exp(get(sx, j), get(sz, j), get(hx, j), get(hz, j));
    sr2 = ((sr2 + phase) % 4 + 4) % 4;
    sx ^= hx;
    sz ^= hz;
  }

  // row i *= row p (both stabilizer-convention rows; result phase stays real).
  void rowmul(int i, int p) {
    uint32_t sx = x_[i], sz = z_[i];
    int sr2 = 2 * static_cast<int>(r_[i]);
    accumulate(sx, sz, sr2, x_[p], z_[p], r_[p]);
    x_[i] = sx;
    z_[i] = sz;
    r_[i] = static_cast<uint32_t>((sr2 >> 1) & 1);
  }

  int n_;
  std::vector<uint32_t> x_, z_;
  std::vector<uint32_t> r_;
};

}  // namespace wit
