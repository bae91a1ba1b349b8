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
#include "wit/circuit.hpp"
#include "wit/dense.hpp"

using namespace wit;

TEST_CASE("text format round-trip") {
  Circuit c(7, 1);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  c.append(Gate::rz(3, 1.5708));
  c.append(Gate::rzz(2, 5, -0.25));
  c.append(Gate::sx(6));
  c.append(Gate::reset(4));
  c.append(Gate::measure(2, 0));
  Circuit d = Circuit::deserialize(c.serialize());
  REQUIRE(d.qubit_count() == 7);
  REQUIRE(d.classical_slots() == 1);
  REQUIRE(d.gates() == c.gates());
}

TEST_CASE("parses the documented sample text") {
  Circuit c = Circuit::deserialize(
      "qubits 7 slots 1\n"
      "cx 0 1\n"
      "rz 1.5708 3\n"
      "measure 2 -> 0\n");
  REQUIRE(c.size() == 3);
  CHECK(c.gates()[0] == Gate::cx(0, 1));
  CHECK(c.gates()[1] == Gate::rz(3, 1.5708));
  CHECK(c.gates()[2] == Gate::measure(2, 0));
  CHECK_THROWS_AS(Circuit::deserialize("qubits 2\nfoo 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(Circuit::deserialize("qubits 2 slots 0\ncx 0 5\n"), std::invalid_argument);
}

TEST_CASE("report counts depth and size") {
  Circuit c(3);
  c.append(Gate::h(0));
  c.append(Gate::cx(0, 1));
  c.append(Gate::cx(1, 2));
  c.append(Gate::rz(0, 0.1));
  GateReport r = c.report();
  CHECK(r.size == 4);
  CHECK(r.counts.at("cx") == 2);
  CHECK(r.counts.at("h") == 1);
  CHECK(r.depth == 3);  // h -> cx01 -> cx12; rz on wire 0 is depth 3 too
}

TEST_CASE("inverse undoes the circuit up to global phase") {
  Circuit c(3);
  c.append(Gate::h(0));
  c.append(Gate::rx(1, 0.7));
  c.append(Gate::sx(2));
  c.append(Gate::cx(0, 2));
  c.append(Gate::rzz(1, 2, -1.3));
  c.append(Gate::swap(0, 1));
  Circuit both(3);
  both.extend(c);
  both.extend(c.inverse());
  auto u = circuit_unitary(both);
  std::vector<cdouble> id(64, 0);
  for (int i = 0; i < 8; ++i) id[8 * i + i] = 1;
  CHECK(equal_up_to_phase(u, id, 1e-10));
  Circuit bad(1, 1);
  bad.append(Gate::measure(0, 0));
  CHECK_THROWS_AS(bad.inverse(), std::invalid_argument);
}

TEST_CASE("operand validation") {
  Circuit c(2, 1);
  CHECK_THROWS_AS(c.append(Gate::cx(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(c.append(Gate::h(5)), std::out_of_range);
  CHECK_THROWS_AS(c.append(Gate::measure(0, 3)), std::out_of_range);
}
