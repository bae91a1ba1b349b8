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

#include "oracle_common.hpp"
#include "wit/dense.hpp"
#include "wit/statevector.hpp"

using namespace wit;

namespace {

// Random normalized state for oracle comparisons.
StateVector random_state(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  std::vector<cdouble> a(size_t(1) << m);
  for (auto& x : a) x = cdouble(g(rng), g(rng));
  StateVector sv(m, std::move(a));
  sv.normalize();
  return sv;
}

Eigen::VectorXcd to_eigen(const StateVector& sv) {
  Eigen::VectorXcd v(sv.dim());
  for (size_t i = 0; i < sv.dim(); ++i) v(i) = sv[i];
  return v;
}

}  // namespace

TEST_CASE("every gate matches its matrix-exponential oracle") {
  // [DERIVED] gate application vs exp(-i theta A / 2) built with Eigen.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  const int m = 3;
  std::vector<Gate> gs = {Gate::rx(0, ang(rng)), Gate::ry(1, ang(rng)),
                          Gate::rz(2, ang(rng)), Gate::sx(1),      Gate::x(2),
                          Gate::h(0),            Gate::cx(0, 2),   Gate::cx(2, 0),
                          Gate::swap(1, 2),      Gate::rzz(0, 1, ang(rng))};
  for (const auto& g : gs) {
    StateVector sv = random_state(m, rng);
    Eigen::VectorXcd expect = oracle::gate_matrix(g, m) * to_eigen(sv);
    apply_gate(sv, g);
    Eigen::VectorXcd got = to_eigen(sv);
    INFO(kind_name(g.kind));
    REQUIRE((got - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("apply_unitary on qubit subsets") {
  std::mt19937_64 rng(5);
  // SWAP as a dense 2-qubit unitary applied to qubits {2, 0} of 3.
  std::vector<cdouble> sw = {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
  StateVector sv = random_state(3, rng);
  StateVector ref = sv;
  sv.apply_unitary(sw, {2, 0});
  apply_gate(ref, Gate::swap(2, 0));
  for (size_t i = 0; i < sv.dim(); ++i) REQUIRE(std::abs(sv[i] - ref[i]) < 1e-12);
}

TEST_CASE("apply_pauli matches the dense word") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PauliLetter> l(3);
    for (auto& x : l) x = static_cast<PauliLetter>(rng() % 4);
    PauliString p(l, int(rng() % 4));
    StateVector sv = random_state(3, rng);
    Eigen::VectorXcd expect = oracle::pauli_word(p) * to_eigen(sv);
    sv.apply_pauli(p);
    REQUIRE((to_eigen(sv) - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bell state and expectations") {
  Circuit c(2);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  RunResult r = run(c);
  CHECK(std::abs(r.state[0] - cdouble(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(r.state[3] - cdouble(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(expectation(r.state, PauliString::parse("XX")) - 1.0) < 1e-12);
  CHECK(std::abs(expectation(r.state, PauliString::parse("ZZ")) - 1.0) < 1e-12);
  CHECK(std::abs(expectation(r.state, PauliString::parse("YY")) + 1.0) < 1e-12);
  CHECK(std::abs(expectation(r.state, 0, PauliLetter::Z)) < 1e-12);
  CHECK_THROWS_AS(expectation(r.state, PauliString::parse("iXX")), std::invalid_argument);
}

TEST_CASE("measurement projects and records") {
  Circuit c(2, 2);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  c.append(Gate::measure(0, 0));
  c.append(Gate::measure(1, 1));
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RunResult r = run(c, uint64_t(0), seed);
    REQUIRE(r.measurements[0] == r.measurements[1]);  // Bell correlation
  }
}

TEST_CASE("reset forces zero and expectation_exact branches") {
  Circuit c(1);
  c.append(Gate::h(0));
  c.append(Gate::reset(0));
  CHECK(std::abs(expectation_exact(c, 0, PauliLetter::Z) - 1.0) < 1e-12);

  // |1> -> reset -> X gives |1> deterministically.
  Circuit d(1);
  d.append(Gate::x(0));
  d.append(Gate::reset(0));
  d.append(Gate::x(0));
  CHECK(std::abs(expectation_exact(d, 0, PauliLetter::Z) + 1.0) < 1e-12);

  // Entangled reset: |phi+>, reset qubit 0 -> qubit 1 is maximally mixed.
  Circuit e(2);
  e.append(Gate::h(0));
  e.append(Gate::cx(0, 1));
  e.append(Gate::reset(0));
  CHECK(std::abs(expectation_exact(e, 1, PauliLetter::Z)) < 1e-12);
  CHECK(std::abs(expectation_exact(e, 1, PauliLetter::X)) < 1e-12);
}

TEST_CASE("sampling frequencies track Born probabilities") {
  Circuit c(2);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  RunResult r = run(c);
  auto hist = sample(r.state, {0, 1}, 40000, 123);
  REQUIRE(hist.count("00"));
  REQUIRE(hist.count("11"));
  CHECK(hist.size() == 2);
  double f = double(hist["00"]) / 40000.0;
  CHECK(std::abs(f - 0.5) < 0.02);
  // Deterministic under the seed.
  auto hist2 = sample(r.state, {0, 1}, 40000, 123);
  CHECK(hist == hist2);
}
