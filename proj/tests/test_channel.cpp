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

#include "wit/channel.hpp"
#include "wit/operator_dynamics.hpp"

using namespace wit;

TEST_CASE("tomography of the identity channel") {
  PauliTransferMatrix m = tomography(identity_executor());
  PauliTransferMatrix id = PauliTransferMatrix::identity();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) REQUIRE(std::abs(m.r[a][b] - id.r[a][b]) < 1e-12);
}

TEST_CASE("perfectly dephasing flip channel at the special point") {
  // [PAPER] PTM = diag(1, 0, 0, -1) at BKP*, g = pi/2.
  PauliTransferMatrix m = tomography(bkp_star(M_PI / 2));
  double target[4] = {1, 0, 0, -1};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      REQUIRE(std::abs(m.r[a][b] - (a == b ? target[a] : 0.0)) < 1e-9);
  CHECK(m.max_offdiagonal() < 1e-9);
}

TEST_CASE("sweep returns -sin^2 with vanishing transverse components") {
  WitConfig base = bkp_star();
  auto pts = sweep(base, linspace(0, M_PI, 14));
  REQUIRE(pts.size() == 14);
  for (const auto& p : pts) {
    REQUIRE(std::abs(p.z - (-std::sin(p.g) * std::sin(p.g))) < 1e-9);
    REQUIRE(std::abs(p.x) < 1e-9);
    REQUIRE(std::abs(p.y) < 1e-9);
  }
}

TEST_CASE("correlator magnitudes and phases at the special point") {
  // [DERIVED] r = 1 for every message operator; theta_I = g, theta_Z = pi - g,
  // theta_X = theta_Y = 0 at BKP*.
  for (double g : {0.4, 1.1, M_PI / 2}) {
    WitConfig cfg = bkp_star(g);
    auto ci = correlator(PauliLetter::I, cfg);
    auto cx = correlator(PauliLetter::X, cfg);
    auto cy = correlator(PauliLetter::Y, cfg);
    auto cz = correlator(PauliLetter::Z, cfg);
    REQUIRE(std::abs(ci.r - 1.0) < 1e-9);
    REQUIRE(std::abs(cx.r - 1.0) < 1e-9);
    REQUIRE(std::abs(cy.r - 1.0) < 1e-9);
    REQUIRE(std::abs(cz.r - 1.0) < 1e-9);
    REQUIRE(std::abs(wrap_angle(ci.theta - g)) < 1e-9);
    REQUIRE(std::abs(wrap_angle(cz.theta - (M_PI - g))) < 1e-9);
    REQUIRE(std::abs(cx.theta) < 1e-9);
    REQUIRE(std::abs(cy.theta) < 1e-9);
  }
}

TEST_CASE("channel is periodic with period six in the step count") {
  // [PAPER] "the evolution is also periodic": T and T + 6 give the same PTM.
  WitConfig a = bkp_star(1.2);
  WitConfig b = a;
  b.params.T = a.params.T + 6;
  PauliTransferMatrix ma = tomography(a), mb = tomography(b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) REQUIRE(std::abs(ma.r[i][j] - mb.r[i][j]) < 1e-10);
}

TEST_CASE("haar unitaries are unitary") {
  std::mt19937_64 rng(17);
  for (size_t d : {2, 4, 8}) {
    auto u = haar_unitary(d, rng);
    auto ud = dagger(u, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        cdouble s = 0;
        for (size_t k = 0; k < d; ++k) s += u[d * i + k] * ud[d * k + j];
        REQUIRE(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("haar channel keeps the trace row and shrinks coherences") {
  PauliTransferMatrix m = haar_channel(2, M_PI / 2, 40, 21);
  REQUIRE(m.r[0][0] == 1.0);
  for (int b = 1; b < 4; ++b) REQUIRE(m.r[0][b] == 0.0);
  // 40 samples: coherent off-diagonals average down, diagonals keep the
  // depolarizing-with-Y-flip sign pattern (-, +, -).
  CHECK(m.max_offdiagonal() < 0.35);
  CHECK(m.r[1][1] <= 0.1);
  CHECK(m.r[2][2] >= -0.1);
  CHECK(m.r[3][3] <= 0.1);
}
