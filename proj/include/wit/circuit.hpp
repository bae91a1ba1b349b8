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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wit {

enum class GateKind {
  RX,
  RY,
  RZ,
  SX,
  X,
  H,
  CX,
  SWAP,
  RZZ,
  RESET,
  MEASURE,
};

inline bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::SWAP || k == GateKind::RZZ;
}

inline bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::RZZ;
}

inline const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::CX: return "cx";
    case GateKind::SWAP: return "swap";
    case GateKind::RZZ: return "rzz";
    case GateKind::RESET: return "reset";
    case GateKind::MEASURE: return "measure";
  }
  return "?";
}

/// A single circuit operation. Rotation conventions:
///   RX(t) = exp(-i t X / 2),  RZ(t) = exp(-i t Z / 2),
///   RZZ(t) = exp(-i t Z(x)Z / 2),  SX = sqrt(X) = exp(i pi/4) RX(pi/2).
/// Global phase is tracked nowhere; equivalence checks are up to phase.
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;        // second operand for CX/SWAP/RZZ
  double theta = 0;   // rotation angle, radians
  int slot = -1;      // classical slot for MEASURE

  static Gate rx(int q, double t) { return {GateKind::RX, q, -1, t, -1}; }
  static Gate ry(int q, double t) { return {GateKind::RY, q, -1, t, -1}; }
  static Gate rz(int q, double t) { return {GateKind::RZ, q, -1, t, -1}; }
  static Gate sx(int q) { return {GateKind::SX, q, -1, 0, -1}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0, -1}; }
  static Gate h(int q) { return {GateKind::H, q, -1, 0, -1}; }
  static Gate cx(int c, int t) { return {GateKind::CX, c, t, 0, -1}; }
  static Gate swap(int a, int b) { return {GateKind::SWAP, a, b, 0, -1}; }
  static Gate rzz(int a, int b, double t) { return {GateKind::RZZ, a, b, t, -1}; }
  static Gate reset(int q) { return {GateKind::RESET, q, -1, 0, -1}; }
  static Gate measure(int q, int slot) { return {GateKind::MEASURE, q, -1, 0, slot}; }

  bool two_qubit() const { return is_two_qubit(kind); }

  bool operator==(const Gate& o) const {
    return kind == o.kind && q0 == o.q0 && q1 == o.q1 && slot == o.slot &&
           theta == o.theta;
  }
};

struct GateReport {
  std::map<std::string, int> counts;
  int depth = 0;
  int size = 0;
};

/// Ordered gate list over indexed qubits plus classical measurement slots.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int qubits, int classical_slots = 0)
      : qubit_count_(qubits), classical_slots_(classical_slots) {}

  int qubit_count() const { return qubit_count_; }
  int classical_slots() const { return classical_slots_; }
  const std::vector<Gate>& gates() const { return gates_; }
  size_t size() const { return gates_.size(); }

  void append(const Gate& g) {
    validate(g);
    gates_.push_back(g);
  }

  void extend(const Circuit& other) {
    for (const auto& g : other.gates()) append(g);
  }

  bool has_nonunitary() const {
    for (const auto& g : gates_)
      if (g.kind == GateKind::RESET || g.kind == GateKind::MEASURE) return true;
    return false;
  }

  Circuit without_measurements() const {
    Circuit c(qubit_count_, classical_slots_);
    for (const auto& g : gates_)
      if (g.kind != GateKind::MEASURE) c.append(g);
    return c;
  }

  /// Adjoint circuit: gates reversed, each replaced by its inverse.
  /// SX is inverted as RX(-pi/2), which differs from SX^dag by global
  /// phase only.
  Circuit inverse() const {
    Circuit c(qubit_count_, classical_slots_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      const Gate& g = *it;
      switch (g.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::RZZ: {
          Gate inv = g;
          inv.theta = -g.theta;
          c.append(inv);
          break;
        }
        case GateKind::SX:
          c.append(Gate::rx(g.q0, -M_PI / 2));
          break;
        case GateKind::X:
        case GateKind::H:
        case GateKind::CX:
        case GateKind::SWAP:
          c.append(g);
          break;
        case GateKind::RESET:
        case GateKind::MEASURE:
          throw std::invalid_argument("cannot invert non-unitary gate");
      }
    }
    return c;
  }

  /// Per-kind gate counts plus depth (longest wire-dependency chain, every
  /// gate one layer unit) and total size.
  GateReport report() const {
    GateReport r;
    std::vector<int> wire(qubit_count_, 0);
    for (const auto& g : gates_) {
      ++r.counts[kind_name(g.kind)];
      int d = wire[g.q0];
      if (g.two_qubit()) d = std::max(d, wire[g.q1]);
      ++d;
      wire[g.q0] = d;
      if (g.two_qubit()) wire[g.q1] = d;
      r.depth = std::max(r.depth, d);
    }
    r.size = static_cast<int>(gates_.size());
    return r;
  }

  int count(GateKind k) const {
    int n = 0;
    for (const auto& g : gates_)
      if (g.kind == k) ++n;
    return n;
  }

  /// Line-oriented text form, one gate per line:
  ///   "qubits 7 slots 1" header, then e.g. "cx 0 1", "rz 1.5708 3",
  ///   "measure 2 -> 0", "reset 4".
  void serialize(std::ostream& os) const {
    os << "qubits " << qubit_count_ << " slots " << classical_slots_ << "\n";
    for (const auto& g : gates_) {
      os << kind_name(g.kind);
      if (is_rotation(g.kind)) {
        std::ostringstream t;
        t.precision(17);
        t << g.theta;
        os << ' ' << t.str();
      }
      os << ' ' << g.q0;
      if (g.two_qubit()) os << ' ' << g.q1;
      if (g.kind == GateKind::MEASURE) os << " -> " << g.slot;
      os << "\n";
    }
  }

  std::string serialize() const {
    std::ostringstream os;
    serialize(os);
    return os.str();
  }

  static Circuit deserialize(std::istream& is) {
    Circuit c;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      if (!(ls >> tok)) continue;
      try {
        if (tok == "qubits") {
          int q, s = 0;
          std::string kw;
          ls >> q;
          if (ls >> kw >> s && kw != "slots") throw std::invalid_argument("expected 'slots'");
          c = Circuit(q, s);
          continue;
        }
        Gate g{};
        if (tok == "rx") g.kind = GateKind::RX;
        else if (tok == "ry") g.kind = GateKind::RY;
        else if (tok == "rz") g.kind = GateKind::RZ;
        else if (tok == "sx") g.kind = GateKind::SX;
        else if (tok == "x") g.kind = GateKind::X;
        else if (tok == "h") g.kind = GateKind::H;
        else if (tok == "cx") g.kind = GateKind::CX;
        else if (tok == "swap") g.kind = GateKind::SWAP;
        else if (tok == "rzz") g.kind = GateKind::RZZ;
        else if (tok == "reset") g.kind = GateKind::RESET;
        else if (tok == "measure") g.kind = GateKind::MEASURE;
        else throw std::invalid_argument("unknown gate '" + tok + "'");
        if (is_rotation(g.kind) && !(ls >> g.theta))
          throw std::invalid_argument("missing angle");
        if (!(ls >> g.q0)) throw std::invalid_argument("missing operand");
        if (is_two_qubit(g.kind) && !(ls >> g.q1))
          throw std::invalid_argument("missing second operand");
        if (g.kind == GateKind::MEASURE) {
          std::string arrow;
          if (!(ls >> arrow >> g.slot) || arrow != "->")
            throw std::invalid_argument("measure needs '-> slot'");
        } else {
          g.q1 = is_two_qubit(g.kind) ? g.q1 : -1;
          g.slot = -1;
        }
        c.append(g);
      } catch (const std::exception& e) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    return c;
  }

  static Circuit deserialize(const std::string& text) {
    std::istringstream is(text);
    return deserialize(is);
  }

 private:
  void validate(const Gate& g) const {
    if (g.q0 < 0 || g.q0 >= qubit_count_)
      throw std::out_of_range("gate operand out of range");
    if (g.two_qubit()) {
      if (g.q1 < 0 || g.q1 >= qubit_count_)
        throw std::out_of_range("gate operand out of range");
      if (g.q1 == g.q0)
        throw std::invalid_argument("two-qubit gate needs distinct operands");
    }
    if (g.kind == GateKind::MEASURE && (g.slot < 0 || g.slot >= classical_slots_))
      throw std::out_of_range("measure slot out of range");
    if (is_rotation(g.kind) && !std::isfinite(g.theta))
      throw std::invalid_argument("rotation angle must be finite");
  }

  int qubit_count_ = 0;
  int classical_slots_ = 0;
  std::vector<Gate> gates_;
};

inline Circuit inverse(const Circuit& c) { return c.inverse(); }
inline GateReport gate_report(const Circuit& c) { return c.report(); }

}  // namespace wit
