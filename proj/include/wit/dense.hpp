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
#include <complex>
#include <stdexcept>
#include <vector>

#include "wit/circuit.hpp"
#include "wit/statevector.hpp"

namespace wit {

/// Row-major dense unitary of a measurement-free circuit, built by running
/// each basis column through the statevector engine. Capped at 12 qubits.
inline std::vector<cdouble> circuit_unitary(const Circuit& c) {
  if (c.qubit_count() > 12) throw std::invalid_argument("circuit_unitary: > 12 qubits");
  if (c.has_nonunitary()) throw std::invalid_argument("circuit_unitary: non-unitary circuit");
  const size_t d = size_t(1) << c.qubit_count();
  std::vector<cdouble> u(d * d);
  for (size_t col = 0; col < d; ++col) {
    StateVector sv(c.qubit_count(), col);
    for (const auto& g : c.gates()) apply_gate(sv, g);
    for (size_t row = 0; row < d; ++row) u[d * row + col] = sv[row];
  }
  return u;
}

/// U^dag P U for a dense unitary, as a dense matrix; oracle-side helper.
inline std::vector<cdouble> dense_conjugate(const std::vector<cdouble>& u,
                                            const std::vector<cdouble>& p, size_t d) {
  std::vector<cdouble> tmp(d * d, 0), out(d * d, 0);
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (p[d * i + k] == cdouble(0)) continue;
      for (size_t j = 0; j < d; ++j) tmp[d * i + j] += p[d * i + k] * u[d * k + j];
    }
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      cdouble ud = std::conj(u[d * k + i]);
      if (ud == cdouble(0)) continue;
      for (size_t j = 0; j < d; ++j) out[d * i + j] += ud * tmp[d * k + j];
    }
  return out;
}

/// Dense matrix of a signed Pauli word (qubit 0 = least significant bit).
inline std::vector<cdouble> pauli_matrix(const PauliString& p) {
  const size_t d = size_t(1) << p.size();
  std::vector<cdouble> m(d * d, 0);
  for (size_t col = 0; col < d; ++col) {
    size_t row = col;
    cdouble amp = p.phase();
    for (size_t q = 0; q < p.size(); ++q) {
      size_t bit = size_t(1) << q;
      switch (p.at(q)) {
        case PauliLetter::I: break;
        case PauliLetter::X: row ^= bit; break;
        case PauliLetter::Y:
          amp *= (col & bit) ? cdouble(0, -1) : cdouble(0, 1);
          row ^= bit;
          break;
        case PauliLetter::Z:
          if (col & bit) amp *= -1.0;
          break;
      }
    }
    m[d * row + col] = amp;
  }
  return m;
}

/// True when a = e^{i phi} b for some global phase, entrywise within tol.
inline bool equal_up_to_phase(const std::vector<cdouble>& a, const std::vector<cdouble>& b,
                              double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  cdouble phase = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(b[i]) > 1e-12) {
      phase = a[i] / b[i];
      break;
    }
  }
  if (phase == cdouble(0) || std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - phase * b[i]) > tol) return false;
  return true;
}

}  // namespace wit
