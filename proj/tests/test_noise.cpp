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

#include "wit/bkp.hpp"
#include "wit/noise.hpp"
#include "wit/transpiler.hpp"

using namespace wit;

namespace {

NoiseModel representative() {
  NoiseModel n;
  n.p1 = 0.001;
  n.p2 = 0.01;
  n.prep_excite = 0.01;
  n.readout = {{{0.98, 0.02}, {0.02, 0.98}}};
  return n;
}

uint64_t total(const Histogram& h) {
  uint64_t t = 0;
  for (const auto& [k, v] : h) t += v;
  return t;
}

}  // namespace

TEST_CASE("noise model validation and round trip") {
  NoiseModel n = representative();
  n.validate();
  CHECK_FALSE(n.trivial());
  CHECK(NoiseModel{}.trivial());
  NoiseModel bad;
  bad.readout = {{{0.9, 0.0}, {0.2, 1.0}}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  std::istringstream is(n.to_kv());
  NoiseModel m = NoiseModel::from_kv(parse_key_values(is));
  CHECK(m.p1 == n.p1);
  CHECK(m.p2 == n.p2);
  CHECK(m.readout[1][0] == n.readout[1][0]);
}

TEST_CASE("slot distribution by branch enumeration") {
  Circuit c(2, 2);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  c.append(Gate::measure(0, 0));
  c.append(Gate::measure(1, 1));
  auto d = slot_distribution(c);
  REQUIRE(d.size() == 2);
  CHECK(std::abs(d.at("00") - 0.5) < 1e-12);
  CHECK(std::abs(d.at("11") - 0.5) < 1e-12);

  // Reset branch: |+> reset to |0>, then measure -> always 0.
  Circuit r(1, 1);
  r.append(Gate::h(0));
  r.append(Gate::reset(0));
  r.append(Gate::measure(0, 0));
  auto dr = slot_distribution(r);
  REQUIRE(dr.size() == 1);
  CHECK(std::abs(dr.at("0") - 1.0) < 1e-12);
}

TEST_CASE("histogram_z sign convention") {
  Histogram h = {{"0", 750}, {"1", 250}};
  CHECK(std::abs(histogram_z(h) - 0.5) < 1e-12);
}

TEST_CASE("noiseless sampling matches the exact distribution") {
  Circuit c = build_wit(bkp_star(M_PI / 2), true);
  Histogram h = noisy_sample(c, NoiseModel{}, 20000, 5);
  // <Z> = -1 exactly: every shot reads 1.
  REQUIRE(h.size() == 1);
  CHECK(h.count("1") == 1);
  CHECK(std::abs(histogram_z(h) + 1.0) < 1e-12);
  // Determinism under the seed.
  CHECK(noisy_sample(c, NoiseModel{}, 20000, 5) == h);
}

TEST_CASE("statevector and tableau trajectories agree statistically") {
  // Clifford circuit routed through both engines by toggling an angle that
  // spoils cliffordness without changing the state (rz on |0> ancilla).
  Circuit cliff = decompose(build_wit(bkp_star(M_PI / 2), true), superconducting_basis());
  REQUIRE(is_clifford_circuit(cliff));
  Circuit general = cliff;  // same gates plus a non-Clifford no-op phase
  general.append(Gate::rz(wit_layout(bkp_star()).output(), 0.123));
  REQUIRE_FALSE(is_clifford_circuit(general));

  NoiseModel n = representative();
  double z_tab = histogram_z(noisy_sample(cliff, n, 20000, 11));
  double z_sv = histogram_z(noisy_sample(general, n, 20000, 12));
  CHECK(std::abs(z_tab - z_sv) < 0.05);
}

TEST_CASE("prep excitation shifts outcomes") {
  Circuit c(1, 1);
  c.append(Gate::measure(0, 0));
  NoiseModel n;
  n.prep_excite = 0.2;
  Histogram h = noisy_sample(c, n, 50000, 3);
  double f1 = double(h["1"]) / double(total(h));
  CHECK(std::abs(f1 - 0.2) < 0.01);
}

TEST_CASE("readout confusion flips recorded bits") {
  Circuit c(1, 1);
  c.append(Gate::measure(0, 0));
  NoiseModel n;
  n.readout = {{{0.9, 0.3}, {0.1, 0.7}}};
  Histogram h = noisy_sample(c, n, 50000, 4);
  double f1 = double(h["1"]) / double(total(h));
  CHECK(std::abs(f1 - 0.1) < 0.01);
}

TEST_CASE("heralding layout and filtering") {
  Circuit c(2, 1);
  c.append(Gate::h(0));
  c.append(Gate::measure(0, 0));
  Circuit hc = herald(c);
  REQUIRE(hc.classical_slots() == 3);
  REQUIRE(hc.gates()[0] == Gate::measure(0, 1));  // heralds appended after payload
  REQUIRE(hc.gates()[1] == Gate::measure(1, 2));

  NoiseModel n;
  n.prep_excite = 0.3;
  Histogram raw = noisy_sample(hc, n, 40000, 9);
  HeraldResult r = herald_filter(raw, 1);
  // Retention ~ (1 - 0.3)^2.
  CHECK(std::abs(r.retained - 0.49) < 0.02);
  for (const auto& [bits, count] : r.filtered) REQUIRE(bits.size() == 1);
  CHECK_THROWS_AS(herald_filter(Histogram{{"01", 5}}, 1), std::runtime_error);
}

TEST_CASE("readout calibration recovers the confusion matrix") {
  NoiseModel n;
  n.readout = {{{0.95, 0.08}, {0.05, 0.92}}};
  auto R = readout_calibrate(n, {0}, 200000, 17);
  CHECK(std::abs(R[0][0] - 0.95) < 0.01);
  CHECK(std::abs(R[1][0] - 0.05) < 0.01);
  CHECK(std::abs(R[0][1] - 0.08) < 0.01);
  CHECK(std::abs(R[1][1] - 0.92) < 0.01);
}

TEST_CASE("readout correction inverts the response") {
  // [DERIVED] p = R x must return x (within the simplex).
  std::vector<std::vector<double>> R = {{0.9, 0.15}, {0.1, 0.85}};
  std::vector<double> x = {0.7, 0.3};
  std::vector<double> p = {R[0][0] * x[0] + R[0][1] * x[1], R[1][0] * x[0] + R[1][1] * x[1]};
  auto got = readout_correct(p, R);
  REQUIRE(std::abs(got[0] - 0.7) < 1e-9);
  REQUIRE(std::abs(got[1] - 0.3) < 1e-9);

  // Corrections stay on the simplex even for inconsistent inputs.
  auto clipped = readout_correct({1.2, -0.2}, R);
  double sum = clipped[0] + clipped[1];
  CHECK(std::abs(sum - 1.0) < 1e-9);
  CHECK(clipped[0] >= 0);
  CHECK(clipped[1] >= 0);
}

TEST_CASE("histogram marginal") {
  Histogram h = {{"010", 10}, {"110", 30}};
  auto p = histogram_marginal(h, {0, 2});
  REQUIRE(p.size() == 4);
  CHECK(std::abs(p[0] - 0.25) < 1e-12);  // slot0=0, slot2=0
  CHECK(std::abs(p[1] - 0.75) < 1e-12);  // slot0=1
}
