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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "wit/noise.hpp"
#include "wit/statevector.hpp"
#include "wit/tableau.hpp"

using namespace wit;

namespace {

Circuit random_clifford_circuit(int m, int gates, std::mt19937_64& rng) {
  Circuit c(m, m);
  const double half = M_PI / 2;
  for (int i = 0; i < gates; ++i) {
    int pick = int(rng() % 8);
    int q = int(rng() % m);
    int r = int(rng() % m);
    if (r == q) r = (q + 1) % m;
    switch (pick) {
      case 0: c.append(Gate::h(q)); break;
      case 1: c.append(Gate::rz(q, half)); break;
      case 2: c.append(Gate::rx(q, -half)); break;
      case 3: c.append(Gate::ry(q, half * (1 + int(rng() % 3)))); break;
      case 4: c.append(Gate::sx(q)); break;
      case 5: c.append(Gate::cx(q, r)); break;
      case 6: c.append(Gate::rzz(q, r, -half)); break;
      case 7: c.append(Gate::swap(q, r)); break;
    }
  }
  for (int q = 0; q < m; ++q) c.append(Gate::measure(q, q));
  return c;
}

}  // namespace

TEST_CASE("clifford angle detection") {
  CHECK(quarter_turns(0.0) == 0);
  CHECK(quarter_turns(M_PI / 2) == 1);
  CHECK(quarter_turns(-M_PI / 2) == 3);
  CHECK(quarter_turns(M_PI) == 2);
  CHECK(quarter_turns(0.3) == -1);
  Circuit c(1);
  c.append(Gate::rz(0, 0.3));
  CHECK_FALSE(is_clifford_circuit(c));
  c = Circuit(1);
  c.append(Gate::rz(0, -M_PI));
  CHECK(is_clifford_circuit(c));
}

TEST_CASE("deterministic stabilizer measurements") {
  std::mt19937_64 rng(1);
  // |1> measures 1.
  TableauSimulator sim(2);
  sim.apply(Gate::x(0), rng);
  CHECK(sim.measure(0, rng) == 1);
  CHECK(sim.measure(1, rng) == 0);

  // Bell pair: first outcome random, second equal to it.
  for (int trial = 0; trial < 50; ++trial) {
    TableauSimulator bell(2);
    bell.apply(Gate::h(0), rng);
    bell.apply(Gate::cx(0, 1), rng);
    int a = bell.measure(0, rng);
    int b = bell.measure(1, rng);
    REQUIRE(a == b);
  }
}

TEST_CASE("rotation decompositions agree with the statevector engine") {
  // [DERIVED] every Clifford rotation angle on every gate type: marginal
  // single-qubit probabilities must match the exact state.
  std::mt19937_64 seeds(42);
  for (int trial = 0; trial < 60; ++trial) {
    std::mt19937_64 build(seeds());
    Circuit c = random_clifford_circuit(4, 24, build);
    Circuit unitary_part = c.without_measurements();

    // Exact marginals from the statevector.
    StateVector sv(4);
    for (const auto& g : unitary_part.gates()) apply_gate(sv, g);
    std::array<double, 4> p_exact{};
    for (int q = 0; q < 4; ++q) p_exact[q] = sv.prob_of_bit(q, 1);

    // Tableau sampling: deterministic outcomes must match exactly, random
    // ones statistically.
    std::array<double, 4> p_sim{};
    const int shots = 400;
    std::mt19937_64 rng(7 + trial);
    for (int s = 0; s < shots; ++s) {
      TableauSimulator sim(4);
      for (const auto& g : unitary_part.gates()) sim.apply(g, rng);
      for (int q = 0; q < 4; ++q) p_sim[q] += sim.measure(q, rng);
    }
    for (int q = 0; q < 4; ++q) {
      double freq = p_sim[q] / shots;
      if (p_exact[q] < 1e-9 || p_exact[q] > 1 - 1e-9) {
        REQUIRE(std::abs(freq - p_exact[q]) < 1e-12);
      } else {
        // Random stabilizer outcomes are exactly 1/2.
        REQUIRE(std::abs(p_exact[q] - 0.5) < 1e-9);
        REQUIRE(std::abs(freq - 0.5) < 0.15);
      }
    }
  }
}

TEST_CASE("full-register distribution matches exact branch enumeration") {
  std::mt19937_64 seeds(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::mt19937_64 build(seeds());
    Circuit c = random_clifford_circuit(3, 16, build);
    auto exact = slot_distribution(c);
    std::map<std::string, uint64_t> hist;
    std::mt19937_64 rng(5 + trial);
    const int shots = 4000;
    for (int s = 0; s < shots; ++s) {
      TableauSimulator sim(3);
      std::string bits(3, '0');
      for (const auto& g : c.gates()) {
        int m = -1;
        sim.apply(g, rng, &m);
        if (g.kind == GateKind::MEASURE) bits[g.slot] = char('0' + m);
      }
      ++hist[bits];
    }
    for (const auto& [bits, count] : hist) {
      REQUIRE(exact.count(bits));  // support must agree exactly
      REQUIRE(std::abs(double(count) / shots - exact.at(bits)) < 0.06);
    }
  }
}

TEST_CASE("reset and non-clifford rejection") {
  std::mt19937_64 rng(2);
  TableauSimulator sim(1);
  sim.apply(Gate::x(0), rng);
  sim.apply(Gate::reset(0), rng);
  CHECK(sim.measure(0, rng) == 0);
  CHECK_THROWS_AS(sim.apply(Gate::rz(0, 0.3), rng), std::invalid_argument);
}
