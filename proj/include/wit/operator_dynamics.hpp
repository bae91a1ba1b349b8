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
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wit/bkp.hpp"
#include "wit/pauli.hpp"

namespace wit {

namespace detail {

inline void require_clifford(const BkpParams& p) {
  if (!p.clifford_point())
    throw std::invalid_argument("operator dynamics require |b| = |J| = pi/4, h = 0");
}

/// Conjugation of P by exp(i (pi/4) A) for a Pauli word A: P unchanged if
/// [P, A] = 0, else P -> P * (iA); the dagger direction uses -iA.
inline void quarter_conj(PauliString& p, const PauliString& a, bool dag) {
  int anti = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    PauliLetter x = p.at(i), y = a.at(i);
    if (x != PauliLetter::I && y != PauliLetter::I && x != y) ++anti;
  }
  if (anti % 2 == 0) return;
  PauliString f = a;
  f.mul_phase_power(dag ? 1 : 3);
  p = p * f;
}

}  // namespace detail

/// U_K^dag P U_K with U_K = exp(ib sum X_j) at b = pi/4: letterwise
/// X -> X, Y -> Z, Z -> -Y. inverse=true applies the opposite direction.
inline PauliString conj_kick(PauliString p, bool inverse = false) {
  const size_t n = p.size();
  for (size_t j = 0; j < n; ++j)
    detail::quarter_conj(p, PauliString::single(n, j, PauliLetter::X), !inverse);
  return p;
}

/// U_I^dag P U_I with U_I = exp(iJ sum Z_j Z_{j+1}) at J = pi/4 on an open
/// chain over the first `chain` sites (whole word by default). Z letters
/// are fixed; each anticommuting bond contributes a factor i Z_j Z_{j+1}.
inline PauliString conj_ising(PauliString p, bool inverse = false, int chain = -1) {
  const size_t n = chain < 0 ? p.size() : size_t(chain);
  if (n > p.size()) throw std::invalid_argument("conj_ising: chain longer than word");
  for (size_t j = 0; j + 1 < n; ++j) {
    PauliString bond(p.size());
    bond.set(j, PauliLetter::Z);
    bond.set(j + 1, PauliLetter::Z);
    detail::quarter_conj(p, bond, !inverse);
  }
  return p;
}

/// Q^dag P Q for the two-sided coupling at g = pi/2: each carrier pair
/// (l, r) contributes a Clifford factor exp(i pi/4 Z_l Z_r), so
/// X_L -> Y_L Z_R, Y_L -> -X_L Z_R, Z_L -> Z_L and symmetrically on R.
inline PauliString conj_coupling(PauliString p,
                                 const std::vector<std::pair<int, int>>& carrier_pairs,
                                 double g = M_PI / 2, bool inverse = false) {
  if (std::abs(g - M_PI / 2) > 1e-12)
    throw std::invalid_argument("conj_coupling: only g = pi/2 is a Clifford point");
  for (auto [l, r] : carrier_pairs) {
    PauliString bond(p.size());
    bond.set(l, PauliLetter::Z);
    bond.set(r, PauliLetter::Z);
    detail::quarter_conj(p, bond, !inverse);
  }
  return p;
}

/// Heisenberg evolution of a Pauli word by t steps of the chain dynamics.
/// Negative t yields the backward-evolved operators O(-t): one backward
/// step is conj_ising followed by conj_kick; positive t inverts both in
/// the opposite order.
inline PauliString evolve(PauliString p, int t, const BkpParams& params) {
  detail::require_clifford(params);
  if (static_cast<int>(p.size()) < params.n)
    throw std::invalid_argument("evolve: word shorter than chain");
  if (t < 0) {
    for (int s = 0; s < -t; ++s) p = conj_kick(conj_ising(std::move(p), false, params.n));
  } else {
    for (int s = 0; s < t; ++s) p = conj_ising(conj_kick(std::move(p), true), true, params.n);
  }
  return p;
}

/// Number of letters that fail to commute with Z on the carrier qubits
/// (the X and Y letters at carrier positions).
inline int z_size(const PauliString& p, const std::set<int>& carriers) {
  int s = 0;
  for (int q : carriers) {
    PauliLetter l = p.at(q);
    if (l == PauliLetter::X || l == PauliLetter::Y) ++s;
  }
  return s;
}

/// Eigenvalue of V = (1/K) sum Z_L Z_R on the state P_R|phi+>: each of the
/// S carrier letters anticommuting with Z flips one ZZ stabilizer, giving
/// (K - 2S)/K.
inline double coupling_eigenvalue(const PauliString& p, const std::set<int>& carriers, int K) {
  if (K < 1) throw std::invalid_argument("coupling_eigenvalue: K >= 1");
  return double(K - 2 * z_size(p, carriers)) / K;
}

struct WeightedPauli {
  std::complex<double> c;
  PauliString p;
};

/// q(l) = sum of c_P^2 and Q(l) = sum of |c_P|^2 over words of weight l.
struct SizeDistribution {
  std::vector<double> q;
  std::vector<double> Q;
};

inline SizeDistribution size_distribution(const std::vector<WeightedPauli>& op) {
  if (op.empty()) throw std::invalid_argument("size_distribution: empty operator");
  size_t m = op.front().p.size();
  SizeDistribution d;
  d.q.assign(m + 1, 0.0);
  d.Q.assign(m + 1, 0.0);
  for (const auto& [c, p] : op) {
    if (p.size() != m) throw std::invalid_argument("size_distribution: mixed word lengths");
    std::complex<double> cc = c * p.phase();
    size_t l = p.weight();
    d.q[l] += (cc * cc).real();
    d.Q[l] += std::norm(cc);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Growth table

struct GrowthTable {
  int T = 0;
  // rows[t][k]: evolved word for seed {I, X, Y, Z}[k] at backward time t.
  std::vector<std::array<PauliString, 4>> rows;

  std::string str(size_t width = 6) const {
    std::ostringstream os;
    os << "t";
    for (const char* h : {"I", "X", "Y", "Z"}) os << "\t" << h;
    os << "\n";
    for (int t = 0; t <= T; ++t) {
      os << t;
      for (int k = 0; k < 4; ++k) os << "\t" << rows[t][k].str(width);
      os << "\n";
    }
    return os.str();
  }

  std::string csv(size_t width = 6) const {
    std::ostringstream os;
    os << "t,I,X,Y,Z\n";
    for (int t = 0; t <= T; ++t) {
      os << t;
      for (int k = 0; k < 4; ++k) os << "," << rows[t][k].str(width);
      os << "\n";
    }
    return os.str();
  }
};

/// Backward-evolved message operators O_L(-t) for t = 0..T, seeded with
/// each single-site Pauli on the first chain site.
inline GrowthTable growth_table(const BkpParams& params, int T) {
  detail::require_clifford(params);
  if (T < 0) throw std::invalid_argument("growth_table: T >= 0");
  GrowthTable table;
  table.T = T;
  std::array<PauliString, 4> cur;
  for (int k = 0; k < 4; ++k)
    cur[k] = PauliString::single(params.n, 0, static_cast<PauliLetter>(k));
  table.rows.push_back(cur);
  for (int t = 1; t <= T; ++t) {
    for (int k = 0; k < 4; ++k) cur[k] = evolve(cur[k], -1, params);
    table.rows.push_back(cur);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Phase alignment

struct PhaseRow {
  PauliLetter op;
  int z_size = 0;
  double theta = 0;  // in (-pi, pi]
  bool aligned = false;
};

inline double wrap_angle(double a) {
  a = std::remainder(a, 2 * M_PI);
  if (a <= -M_PI) a += 2 * M_PI;
  return a;
}

/// Correlator phases from the Clifford operator picture: the backward
/// evolved word picks up e^{ig(K-2S)/K} from the coupling plus pi when its
/// sign is negative. Alignment with the identity row is judged modulo pi:
/// a relative sign on the teleported operator is a fixed Pauli correction,
/// not a loss of fidelity.
inline std::vector<PhaseRow> phase_report(const WitConfig& cfg, double tol = 1e-9) {
  cfg.validate();
  detail::require_clifford(cfg.params);
  std::set<int> carriers;
  for (int j = 1; j <= cfg.K; ++j) carriers.insert(j);
  std::vector<PhaseRow> rows;
  double theta_i = 0;
  for (int k = 0; k < 4; ++k) {
    PauliString seed = PauliString::single(cfg.params.n, 0, static_cast<PauliLetter>(k));
    PauliString ev = evolve(seed, -cfg.params.T, cfg.params);
    int s = z_size(ev, carriers);
    double theta = cfg.g * coupling_eigenvalue(ev, carriers, cfg.K);
    if (ev.phase_power() == 2) theta += M_PI;
    theta = wrap_angle(theta);
    if (k == 0) theta_i = theta;
    double rel = std::remainder(theta - theta_i, M_PI);
    rows.push_back({static_cast<PauliLetter>(k), s, theta, std::abs(rel) < tol});
  }
  return rows;
}

inline std::string phase_report_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream os;
  os << "operator,z_size,theta,aligned\n";
  os.precision(12);
  for (const auto& r : rows)
    os << to_char(r.op) << "," << r.z_size << "," << r.theta << ","
       << (r.aligned ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace wit
