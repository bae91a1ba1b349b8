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
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "wit/bkp.hpp"
#include "wit/circuit.hpp"
#include "wit/statevector.hpp"

namespace wit {

/// 4x4 real channel representation in the Pauli basis {I, X, Y, Z}:
/// R[a][b] = (1/2) Tr(sigma_a E(sigma_b)). Trace preservation pins the
/// first row to (1, 0, 0, 0).
struct PauliTransferMatrix {
  std::array<std::array<double, 4>, 4> r{};

  static PauliTransferMatrix identity() {
    PauliTransferMatrix m;
    for (int i = 0; i < 4; ++i) m.r[i][i] = 1.0;
    return m;
  }

  double& operator()(int a, int b) { return r[a][b]; }
  double operator()(int a, int b) const { return r[a][b]; }

  double max_offdiagonal() const {
    double v = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != b) v = std::max(v, std::abs(r[a][b]));
    return v;
  }

  std::string str() const {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) os << (b ? " " : "") << (r[a][b] >= 0 ? " " : "") << r[a][b];
      os << "\n";
    }
    return os.str();
  }
};

/// Output Bloch vector (<X>, <Y>, <Z>) of the channel for a given cardinal
/// input state. Reset-style insertion produces mixed outputs, so the
/// executor reports expectations rather than a state.
using ChannelExecutor = std::function<std::array<double, 3>(MessageState)>;

inline ChannelExecutor identity_executor() {
  return [](MessageState s) -> std::array<double, 3> {
    switch (s) {
      case MessageState::ZPlus: return {0, 0, 1};
      case MessageState::ZMinus: return {0, 0, -1};
      case MessageState::XPlus: return {1, 0, 0};
      case MessageState::XMinus: return {-1, 0, 0};
      case MessageState::YPlus: return {0, 1, 0};
      case MessageState::YMinus: return {0, -1, 0};
    }
    return {0, 0, 0};
  };
}

/// Executor backed by the exact protocol simulation: inserts the requested
/// cardinal state as the message and reports the output-qubit Bloch vector.
inline ChannelExecutor wit_executor(const WitConfig& base) {
  return [base](MessageState s) -> std::array<double, 3> {
    WitConfig cfg = base;
    cfg.message_state = s;
    Circuit c = build_wit(cfg, /*include_measure=*/false);
    int out = wit_layout(cfg).output();
    return {expectation_exact(c, out, PauliLetter::X),
            expectation_exact(c, out, PauliLetter::Y),
            expectation_exact(c, out, PauliLetter::Z)};
  };
}

/// Process tomography from the four input states {|0>, |1>, |+>, |+i>}
/// and three output expectations each.
inline PauliTransferMatrix tomography(const ChannelExecutor& exec) {
  auto zp = exec(MessageState::ZPlus);
  auto zm = exec(MessageState::ZMinus);
  auto xp = exec(MessageState::XPlus);
  auto yp = exec(MessageState::YPlus);
  PauliTransferMatrix m;
  m.r[0] = {1, 0, 0, 0};
  for (int a = 0; a < 3; ++a) {
    double t = 0.5 * (zp[a] + zm[a]);  // non-unital shift, column I
    m.r[a + 1][0] = t;
    m.r[a + 1][1] = xp[a] - t;
    m.r[a + 1][2] = yp[a] - t;
    m.r[a + 1][3] = 0.5 * (zp[a] - zm[a]);
  }
  return m;
}

inline PauliTransferMatrix tomography(const WitConfig& cfg) {
  return tomography(wit_executor(cfg));
}

struct SweepPoint {
  double g = 0;
  double x = 0, y = 0, z = 0;
};

/// Exact output-qubit expectations across coupling strengths; the z column
/// is the teleportation-fidelity curve.
inline std::vector<SweepPoint> sweep(const WitConfig& base, const std::vector<double>& g_values) {
  std::vector<SweepPoint> out;
  out.reserve(g_values.size());
  for (double g : g_values) {
    WitConfig cfg = base;
    cfg.g = g;
    Circuit c = build_wit(cfg, /*include_measure=*/false);
    int q = wit_layout(cfg).output();
    out.push_back({g, expectation_exact(c, q, PauliLetter::X),
                   expectation_exact(c, q, PauliLetter::Y),
                   expectation_exact(c, q, PauliLetter::Z)});
  }
  return out;
}

inline std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("linspace: points >= 1");
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i)
    v[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  return v;
}

struct CorrelatorResult {
  PauliLetter op = PauliLetter::I;
  double r = 0;       // magnitude, in [0, 1]
  double theta = 0;   // phase in (-pi, pi]
};

/// <phi+| O_L(-t)^dag e^{igV} O_R(t) |phi+> evaluated by building the two
/// states and taking their inner product. O(t)|psi> is computed as
/// C^dag O C |psi> where C is the t-step evolution circuit on that side;
/// both sides use the same direction.
inline CorrelatorResult correlator(PauliLetter O, const WitConfig& cfg) {
  cfg.validate();
  const int n = cfg.params.n;
  const int m = 2 * n;
  WitLayout lay;
  for (int j = 0; j < n; ++j) lay.left.push_back(j);
  for (int j = 0; j < n; ++j) lay.right.push_back(n + j);

  auto bell = [&]() {
    StateVector sv(m);
    Circuit prep(m);
    for (int j = 0; j < n; ++j) {
      prep.append(Gate::h(lay.left[j]));
      prep.append(Gate::cx(lay.left[j], lay.right[j]));
    }
    for (const auto& g : prep.gates()) apply_gate(sv, g);
    return sv;
  };

  auto steps_on = [&](const std::vector<int>& qubits) {
    Circuit c(m);
    return detail::append_steps(std::move(c), cfg.params, qubits, cfg.params.T, false);
  };

  auto heisenberg = [&](StateVector sv, const std::vector<int>& qubits, int site) {
    Circuit fwd = steps_on(qubits);
    Circuit bwd = fwd.inverse();
    for (const auto& g : fwd.gates()) apply_gate(sv, g);
    if (O != PauliLetter::I) sv.apply_pauli(PauliString::single(m, qubits[site], O));
    for (const auto& g : bwd.gates()) apply_gate(sv, g);
    return sv;
  };

  // ket = e^{igV} O_R(t)|phi+>, bra = O_L(-t)|phi+>.
  StateVector ket = heisenberg(bell(), lay.right, 0);
  for (int j = 1; j <= cfg.K; ++j)
    ket.apply_2q(gates::rzz(-2 * cfg.g / cfg.K), lay.left[j], lay.right[j]);
  StateVector bra = heisenberg(bell(), lay.left, 0);

  cdouble v = bra.inner(ket);
  return {O, std::abs(v), std::arg(v)};
}

// ---------------------------------------------------------------------------
// Haar baseline

/// Haar-random unitary of dimension d (row-major), sampled by QR of a
/// complex Gaussian matrix with the R diagonal fixed positive.
inline std::vector<cdouble> haar_unitary(size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<cdouble>> col(d, std::vector<cdouble>(d));
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < d; ++i) col[j][i] = cdouble(gauss(rng), gauss(rng));
  // Modified Gram-Schmidt; positive real diagonal of R keeps Q Haar.
  for (size_t j = 0; j < d; ++j) {
    for (size_t k = 0; k < j; ++k) {
      cdouble proj = 0;
      for (size_t i = 0; i < d; ++i) proj += std::conj(col[k][i]) * col[j][i];
      for (size_t i = 0; i < d; ++i) col[j][i] -= proj * col[k][i];
    }
    double nrm = 0;
    for (size_t i = 0; i < d; ++i) nrm += std::norm(col[j][i]);
    nrm = std::sqrt(nrm);
    for (size_t i = 0; i < d; ++i) col[j][i] /= nrm;
  }
  std::vector<cdouble> u(d * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) u[d * i + j] = col[j][i];
  return u;
}

inline std::vector<cdouble> dagger(const std::vector<cdouble>& u, size_t d) {
  std::vector<cdouble> v(d * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) v[d * i + j] = std::conj(u[d * j + i]);
  return v;
}

/// Protocol channel with the chain evolution replaced by a Haar-random
/// n-qubit unitary (backward = U^dag on the left, forward = U on both
/// sides), averaged over num_samples draws.
inline PauliTransferMatrix haar_channel(int n, double g, int num_samples, uint64_t seed,
                                        int K = -1) {
  if (n < 2 || n > 5) throw std::invalid_argument("haar_channel: n in [2, 5]");
  if (num_samples < 1) throw std::invalid_argument("haar_channel: num_samples >= 1");
  if (K < 0) K = n - 1;
  const size_t d = size_t(1) << n;
  const int m = 2 * n + 1;  // swap-style insertion via ancilla
  const int anc = 2 * n;
  std::vector<int> left(n), right(n);
  for (int j = 0; j < n; ++j) left[j] = j, right[j] = n + j;

  std::mt19937_64 rng(seed);
  PauliTransferMatrix acc{};
  for (int s = 0; s < num_samples; ++s) {
    auto u = haar_unitary(d, rng);
    auto udag = dagger(u, d);
    ChannelExecutor exec = [&](MessageState ms) -> std::array<double, 3> {
      StateVector sv(m);
      Circuit prep(m);
      for (int j = 0; j < n; ++j) {
        prep.append(Gate::h(left[j]));
        prep.append(Gate::cx(left[j], right[j]));
      }
      prep = detail::append_state_prep(std::move(prep), anc, ms);
      prep.append(Gate::swap(anc, left[0]));
      size_t split = size_t(2) * n;  // Bell pairs | insertion
      size_t idx = 0;
      for (const auto& gate : prep.gates()) {
        if (idx++ == split) sv.apply_unitary(udag, left);  // backward evolution
        apply_gate(sv, gate);
      }
      sv.apply_unitary(u, left);
      for (int j = 1; j <= K; ++j)
        sv.apply_2q(gates::rzz(-2 * g / K), left[j], right[j]);
      sv.apply_unitary(u, right);
      return {expectation(sv, right[0], PauliLetter::X),
              expectation(sv, right[0], PauliLetter::Y),
              expectation(sv, right[0], PauliLetter::Z)};
    };
    PauliTransferMatrix p = tomography(exec);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) acc.r[a][b] += p.r[a][b];
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) acc.r[a][b] /= num_samples;
  return acc;
}

}  // namespace wit
