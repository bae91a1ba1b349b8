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

#include <catch2/catch_amalgamated.hpp>

#include "oracle_common.hpp"
#include "wit/bkp.hpp"
#include "wit/operator_dynamics.hpp"
#include "wit/statevector.hpp"

using namespace wit;

namespace {

// U^dag P U densely, with U given as an Eigen matrix.
bool conjugation_matches(const PauliString& evolved, const PauliString& seed,
                         const oracle::Mat& u, double tol = 1e-10) {
  oracle::Mat expect = u.adjoint() * oracle::pauli_word(seed) * u;
  return (expect - oracle::pauli_word(evolved)).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("kick conjugation matches the dense exponential") {
  // [DERIVED] U_K = exp(i pi/4 sum X_j) on 2 and 3 sites, all single seeds.
  for (int n : {2, 3}) {
    oracle::Mat hk = oracle::Mat::Zero(1 << n, 1 << n);
    for (int j = 0; j < n; ++j) hk += oracle::embed(oracle::pauli('X'), j, n);
    oracle::Mat u = oracle::expm(cdouble(0, M_PI / 4) * hk);
    for (int site = 0; site < n; ++site)
      for (int k = 1; k < 4; ++k) {
        PauliString seed = PauliString::single(n, site, static_cast<PauliLetter>(k));
        REQUIRE(conjugation_matches(conj_kick(seed), seed, u));
        // inverse direction conjugates by U^dag
        REQUIRE(conjugation_matches(conj_kick(seed, true), seed, u.adjoint()));
      }
  }
}

TEST_CASE("ising conjugation matches the dense exponential") {
  // [DERIVED] U_I = exp(i pi/4 sum Z_j Z_{j+1}) on open chains of 2 and 3.
  for (int n : {2, 3}) {
    oracle::Mat hi = oracle::Mat::Zero(1 << n, 1 << n);
    for (int j = 0; j + 1 < n; ++j)
      hi += oracle::embed(oracle::pauli('Z'), j, n) *
            oracle::embed(oracle::pauli('Z'), j + 1, n);
    oracle::Mat u = oracle::expm(cdouble(0, M_PI / 4) * hi);
    for (int site = 0; site < n; ++site)
      for (int k = 1; k < 4; ++k) {
        PauliString seed = PauliString::single(n, site, static_cast<PauliLetter>(k));
        REQUIRE(conjugation_matches(conj_ising(seed), seed, u));
        REQUIRE(conjugation_matches(conj_ising(seed, true), seed, u.adjoint()));
      }
  }
}

TEST_CASE("coupling conjugation matches the dense exponential") {
  // [DERIVED] Q = prod exp(i pi/4 Z_l Z_r) over carrier pairs, 2-qubit and
  // 4-qubit (two pairs) systems.
  {
    oracle::Mat u = oracle::expm(cdouble(0, M_PI / 4) *
                                 oracle::embed(oracle::pauli('Z'), 0, 2) *
                                 oracle::embed(oracle::pauli('Z'), 1, 2));
    for (int site = 0; site < 2; ++site)
      for (int k = 1; k < 4; ++k) {
        PauliString seed = PauliString::single(2, site, static_cast<PauliLetter>(k));
        REQUIRE(conjugation_matches(conj_coupling(seed, {{0, 1}}), seed, u));
      }
  }
  {
    oracle::Mat zz01 = oracle::embed(oracle::pauli('Z'), 0, 4) *
                       oracle::embed(oracle::pauli('Z'), 2, 4);
    oracle::Mat zz13 = oracle::embed(oracle::pauli('Z'), 1, 4) *
                       oracle::embed(oracle::pauli('Z'), 3, 4);
    oracle::Mat u = oracle::expm(cdouble(0, M_PI / 4) * zz01) *
                    oracle::expm(cdouble(0, M_PI / 4) * zz13);
    for (int site = 0; site < 4; ++site)
      for (int k = 1; k < 4; ++k) {
        PauliString seed = PauliString::single(4, site, static_cast<PauliLetter>(k));
        REQUIRE(conjugation_matches(conj_coupling(seed, {{0, 2}, {1, 3}}), seed, u));
      }
  }
  CHECK_THROWS_AS(conj_coupling(PauliString(2), {{0, 1}}, 0.3), std::invalid_argument);
}

TEST_CASE("forward and backward evolution invert each other") {
  BkpParams p = bkp_star().params;
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PauliLetter> l(3);
    for (auto& x : l) x = static_cast<PauliLetter>(rng() % 4);
    PauliString seed(l, 2 * int(rng() % 2));
    int t = 1 + int(rng() % 6);
    REQUIRE(evolve(evolve(seed, -t, p), t, p) == seed);
  }
  CHECK_THROWS_AS(evolve(PauliString(3), 1, BkpParams{3, 0.3, 0.3, {0, 0, 0}, 1}),
                  std::invalid_argument);
}

TEST_CASE("published growth table entries") {
  // [PAPER] all 28 entries, byte-exact including signs.
  GrowthTable t = growth_table(bkp_star().params, 6);
  const char* expect[7][4] = {
      {"IIIIII", "XIIIII", "YIIIII", "ZIIIII"},
      {"IIIIII", "-ZYIIII", "XYIIII", "-YIIIII"},
      {"IIIIII", "-IZYIII", "XXYIII", "-XYIIII"},
      {"IIIIII", "IIXIII", "XXZIII", "-XXYIII"},
      {"IIIIII", "-IYZIII", "XZIIII", "-XXZIII"},
      {"IIIIII", "-YZIIII", "ZIIIII", "-XZIIII"},
      {"IIIIII", "XIIIII", "-YIIIII", "-ZIIIII"},
  };
  for (int time = 0; time <= 6; ++time)
    for (int k = 0; k < 4; ++k) {
      INFO("t=" << time << " col=" << k);
      REQUIRE(t.rows[time][k].str(6) == expect[time][k]);
    }
  // Rendered table carries the same strings.
  std::string text = t.str();
  CHECK(text.find("-ZYIIII") != std::string::npos);
  CHECK(text.find("-XXYIII") != std::string::npos);
}

TEST_CASE("z-size and coupling eigenvalue") {
  std::set<int> carriers = {1, 2};
  // [PAPER] t=3 sizes (I, X, Y, Z) -> (0, 1, 1, 2).
  GrowthTable t = growth_table(bkp_star().params, 3);
  int expect_sizes[4] = {0, 1, 1, 2};
  for (int k = 0; k < 4; ++k) REQUIRE(z_size(t.rows[3][k], carriers) == expect_sizes[k]);

  CHECK(coupling_eigenvalue(t.rows[3][0], carriers, 2) == 1.0);
  CHECK(coupling_eigenvalue(t.rows[3][1], carriers, 2) == 0.0);
  CHECK(coupling_eigenvalue(t.rows[3][3], carriers, 2) == -1.0);
}

TEST_CASE("coupling eigenvalue from dense application of V") {
  // [DERIVED] V P_L |phi+> = ((K - 2S)/K) P_L |phi+> for all 16 carrier
  // words, n = 3, K = 2, left qubits {1, 2} paired with right {4, 5}.
  const int n = 3, m = 6, K = 2;
  StateVector bell(m);
  for (int j = 0; j < n; ++j) {
    apply_gate(bell, Gate::h(j));
    apply_gate(bell, Gate::cx(j, n + j));
  }
  std::set<int> carriers = {1, 2};
  for (int w = 0; w < 16; ++w) {
    PauliString p(m);
    p.set(1, static_cast<PauliLetter>(w & 3));
    p.set(2, static_cast<PauliLetter>((w >> 2) & 3));
    StateVector st = bell;
    st.apply_pauli(p);
    // V st = (1/K) (Z1 Z4 + Z2 Z5) st
    StateVector t1 = st, t2 = st;
    PauliString zz1(m), zz2(m);
    zz1.set(1, PauliLetter::Z);
    zz1.set(4, PauliLetter::Z);
    zz2.set(2, PauliLetter::Z);
    zz2.set(5, PauliLetter::Z);
    t1.apply_pauli(zz1);
    t2.apply_pauli(zz2);
    double lambda = coupling_eigenvalue(p, carriers, K);
    for (size_t i = 0; i < st.dim(); ++i) {
      cdouble v = (t1[i] + t2[i]) / double(K);
      REQUIRE(std::abs(v - lambda * st[i]) < 1e-12);
    }
  }
}

TEST_CASE("size distribution weightings") {
  std::vector<WeightedPauli> op = {
      {cdouble(0.6, 0), PauliString::parse("XI")},
      {cdouble(0, 0.8), PauliString::parse("XY")},
  };
  SizeDistribution d = size_distribution(op);
  CHECK(std::abs(d.q[1] - 0.36) < 1e-12);
  CHECK(std::abs(d.Q[1] - 0.36) < 1e-12);
  CHECK(std::abs(d.q[2] + 0.64) < 1e-12);  // imaginary coefficient flips q
  CHECK(std::abs(d.Q[2] - 0.64) < 1e-12);
}

TEST_CASE("phase report at the special point") {
  // [PAPER] g = pi/2: Z and I aligned, X and Y not.
  auto rows = phase_report(bkp_star(M_PI / 2));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].aligned);
  CHECK_FALSE(rows[1].aligned);
  CHECK_FALSE(rows[2].aligned);
  CHECK(rows[3].aligned);
  CHECK(std::abs(rows[0].theta - M_PI / 2) < 1e-9);
  CHECK(std::abs(rows[3].theta - M_PI / 2) < 1e-9);
  CHECK(rows[3].z_size == 2);

  // g = 0: trivially aligned across the board.
  for (const auto& r : phase_report(bkp_star(0.0))) CHECK(r.aligned);
}
