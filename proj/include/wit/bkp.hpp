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
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wit/circuit.hpp"

namespace wit {

/// Kicked-Ising chain parameters: kick angle b, Ising coupling J, onsite
/// fields h (one per site), T discrete time steps per side.
struct BkpParams {
  int n = 3;
  double b = M_PI / 4;
  double J = M_PI / 4;
  std::vector<double> h = {0, 0, 0};
  int T = 3;

  void validate() const {
    if (n < 2) throw std::invalid_argument("BkpParams: n >= 2 required");
    if (T < 0) throw std::invalid_argument("BkpParams: T >= 0 required");
    if (static_cast<int>(h.size()) != n)
      throw std::invalid_argument("BkpParams: h length must equal n");
  }

  /// Maximally chaotic Clifford point: |b| = |J| = pi/4, h = 0.
  bool clifford_point(double tol = 1e-12) const {
    if (std::abs(std::abs(b) - M_PI / 4) > tol) return false;
    if (std::abs(std::abs(J) - M_PI / 4) > tol) return false;
    for (double hj : h)
      if (std::abs(hj) > tol) return false;
    return true;
  }
};

enum class Insertion { Swap, Reset };
enum class MessageState { ZPlus, ZMinus, XPlus, XMinus, YPlus, YMinus };
enum class MeasureBasis { X, Y, Z };

inline const char* to_string(MessageState s) {
  switch (s) {
    case MessageState::ZPlus: return "Z+";
    case MessageState::ZMinus: return "Z-";
    case MessageState::XPlus: return "X+";
    case MessageState::XMinus: return "X-";
    case MessageState::YPlus: return "Y+";
    case MessageState::YMinus: return "Y-";
  }
  return "?";
}

inline MessageState message_state_from(const std::string& s) {
  if (s == "Z+") return MessageState::ZPlus;
  if (s == "Z-") return MessageState::ZMinus;
  if (s == "X+") return MessageState::XPlus;
  if (s == "X-") return MessageState::XMinus;
  if (s == "Y+") return MessageState::YPlus;
  if (s == "Y-") return MessageState::YMinus;
  throw std::invalid_argument("unknown message state: " + s);
}

inline const char* to_string(MeasureBasis b) {
  switch (b) {
    case MeasureBasis::X: return "X";
    case MeasureBasis::Y: return "Y";
    case MeasureBasis::Z: return "Z";
  }
  return "?";
}

/// Full protocol configuration: chain parameters, coupling strength g on K
/// carrier pairs, message insertion variant and message/measurement choice.
struct WitConfig {
  BkpParams params;
  double g = M_PI / 2;
  int K = 2;  // defaults to n-1
  Insertion insertion = Insertion::Swap;
  MessageState message_state = MessageState::ZPlus;
  MeasureBasis measure_basis = MeasureBasis::Z;

  void validate() const {
    params.validate();
    if (K < 1 || K > params.n - 1)
      throw std::invalid_argument("WitConfig: K must be in [1, n-1]");
  }

  int qubit_total() const {
    return insertion == Insertion::Swap ? 2 * params.n + 1 : 2 * params.n;
  }
};

/// The published special point {b = J = pi/4, h = 0, n = 3, T = 3}.
inline WitConfig bkp_star(double g = M_PI / 2) {
  WitConfig c;
  c.params = BkpParams{3, M_PI / 4, M_PI / 4, {0, 0, 0}, 3};
  c.g = g;
  c.K = 2;
  return c;
}

/// Kick half-step exp(ib sum_j X_j): one RX(-2b) per site under the
/// RX(t) = exp(-i t X/2) convention.
inline Circuit build_kick(int n, double b, const std::vector<int>& qubits, Circuit base) {
  for (int j = 0; j < n; ++j) base.append(Gate::rx(qubits[j], -2 * b));
  return base;
}

inline Circuit build_kick(int n, double b) {
  if (n < 1) throw std::invalid_argument("build_kick: n >= 1");
  Circuit c(n);
  std::vector<int> q(n);
  for (int j = 0; j < n; ++j) q[j] = j;
  return build_kick(n, b, q, std::move(c));
}

/// Ising half-step exp(iJ sum_j Z_j Z_{j+1} + i sum_j h_j Z_j) on an open
/// chain: (n-1) RZZ(-2J) plus RZ(-2 h_j) for each nonzero field.
inline Circuit build_ising(int n, double J, const std::vector<double>& h,
                           const std::vector<int>& qubits, Circuit base) {
  if (static_cast<int>(h.size()) != n)
    throw std::invalid_argument("build_ising: h length must equal n");
  for (int j = 0; j + 1 < n; ++j) base.append(Gate::rzz(qubits[j], qubits[j + 1], -2 * J));
  for (int j = 0; j < n; ++j)
    if (h[j] != 0) base.append(Gate::rz(qubits[j], -2 * h[j]));
  return base;
}

inline Circuit build_ising(int n, double J, const std::vector<double>& h) {
  if (n < 2) throw std::invalid_argument("build_ising: n >= 2");
  Circuit c(n);
  std::vector<int> q(n);
  for (int j = 0; j < n; ++j) q[j] = j;
  return build_ising(n, J, h, q, std::move(c));
}

/// One Floquet step U = U_K U_I: the Ising component is applied first, the
/// kick second (operator product acts rightmost-first).
inline Circuit build_step(const BkpParams& p) {
  p.validate();
  Circuit c(p.n);
  std::vector<int> q(p.n);
  for (int j = 0; j < p.n; ++j) q[j] = j;
  if (p.T == 0) return c;
  c = build_ising(p.n, p.J, p.h, q, std::move(c));
  c = build_kick(p.n, p.b, q, std::move(c));
  return c;
}

namespace detail {

inline Circuit append_steps(Circuit c, const BkpParams& p, const std::vector<int>& qubits,
                            int steps, bool inverted) {
  Circuit one(c.qubit_count());
  one = build_ising(p.n, p.J, p.h, qubits, std::move(one));
  one = build_kick(p.n, p.b, qubits, std::move(one));
  if (inverted) one = one.inverse();
  for (int t = 0; t < steps; ++t) c.extend(one);
  return c;
}

inline Circuit append_state_prep(Circuit c, int q, MessageState s) {
  switch (s) {
    case MessageState::ZPlus:
      break;
    case MessageState::ZMinus:
      c.append(Gate::x(q));
      break;
    case MessageState::XPlus:
      c.append(Gate::h(q));
      break;
    case MessageState::XMinus:
      c.append(Gate::x(q));
      c.append(Gate::h(q));
      break;
    case MessageState::YPlus:
      c.append(Gate::h(q));
      c.append(Gate::rz(q, M_PI / 2));
      break;
    case MessageState::YMinus:
      c.append(Gate::h(q));
      c.append(Gate::rz(q, -M_PI / 2));
      break;
  }
  return c;
}

}  // namespace detail

/// Two-sided coupling e^{igV} with V = (1/K) sum_j Z_{j,L} Z_{j,R}: one
/// RZZ(-2g/K) per carrier pair. At g = pi/2, K = 2 each factor is the
/// Clifford unitary exp(i pi/4 Z Z).
inline Circuit build_coupling(int n, int K, double g,
                              const std::vector<std::pair<int, int>>& pairs, Circuit base) {
  if (K < 1 || K > n - 1) throw std::invalid_argument("build_coupling: K out of range");
  if (static_cast<int>(pairs.size()) != K)
    throw std::invalid_argument("build_coupling: need one qubit pair per carrier");
  for (auto [l, r] : pairs) base.append(Gate::rzz(l, r, -2 * g / K));
  return base;
}

inline Circuit build_coupling(int n, int K, double g) {
  Circuit c(2 * K);
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < K; ++j) pairs.emplace_back(j, K + j);
  return build_coupling(n, K, g, pairs, std::move(c));
}

/// Qubit placement of the full protocol circuit.
struct WitLayout {
  std::vector<int> left;   // left chain, register j -> left[j-1]; message = left[0]
  std::vector<int> right;  // right chain; output qubit = right[0]
  int ancilla = -1;        // message ancilla (swap insertion only)
  int output() const { return right[0]; }
  int message() const { return left[0]; }
};

inline WitLayout wit_layout(const WitConfig& cfg) {
  WitLayout l;
  for (int j = 0; j < cfg.params.n; ++j) l.left.push_back(j);
  for (int j = 0; j < cfg.params.n; ++j) l.right.push_back(cfg.params.n + j);
  if (cfg.insertion == Insertion::Swap) l.ancilla = 2 * cfg.params.n;
  return l;
}

/// Full teleportation circuit: Bell pairs, backward evolution on the left,
/// message insertion, forward evolution on both sides joined by the
/// two-sided coupling, measurement of the output qubit (the mirror of the
/// message register).
inline Circuit build_wit(const WitConfig& cfg, bool include_measure = true) {
  cfg.validate();
  const int n = cfg.params.n;
  const WitLayout lay = wit_layout(cfg);
  Circuit c(cfg.qubit_total(), include_measure ? 1 : 0);

  // (i) Bell pairs between left j and right j.
  for (int j = 0; j < n; ++j) {
    c.append(Gate::h(lay.left[j]));
    c.append(Gate::cx(lay.left[j], lay.right[j]));
  }
  // (ii) backward evolution on the left (inverse of T steps; the transpose
  // of every gate in this set equals the gate itself).
  c = detail::append_steps(std::move(c), cfg.params, lay.left, cfg.params.T, true);
  // (iii) message insertion into left register 1.
  if (cfg.insertion == Insertion::Swap) {
    c = detail::append_state_prep(std::move(c), lay.ancilla, cfg.message_state);
    c.append(Gate::swap(lay.ancilla, lay.message()));
  } else {
    c.append(Gate::reset(lay.message()));
    c = detail::append_state_prep(std::move(c), lay.message(), cfg.message_state);
  }
  // (iv) forward evolution on the left.
  c = detail::append_steps(std::move(c), cfg.params, lay.left, cfg.params.T, false);
  // (v) coupling e^{igV} on the K carrier pairs (left registers 2..K+1).
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= cfg.K; ++j) pairs.emplace_back(lay.left[j], lay.right[j]);
  c = build_coupling(n, cfg.K, cfg.g, pairs, std::move(c));
  // (vi) forward evolution on the right.
  c = detail::append_steps(std::move(c), cfg.params, lay.right, cfg.params.T, false);
  // (vii) measurement of the output qubit in the requested basis.
  if (include_measure) {
    switch (cfg.measure_basis) {
      case MeasureBasis::Z:
        break;
      case MeasureBasis::X:
        c.append(Gate::h(lay.output()));
        break;
      case MeasureBasis::Y:
        c.append(Gate::rz(lay.output(), -M_PI / 2));
        c.append(Gate::h(lay.output()));
        break;
    }
    c.append(Gate::measure(lay.output(), 0));
  }
  return c;
}

struct HighLevelReport {
  int n = 0;
  int T = 0;
  Insertion insertion = Insertion::Swap;
  int qubits = 0;
  GateReport gates;
};

inline HighLevelReport high_level_report(const WitConfig& cfg) {
  HighLevelReport r;
  r.n = cfg.params.n;
  r.T = cfg.params.T;
  r.insertion = cfg.insertion;
  r.qubits = cfg.qubit_total();
  r.gates = build_wit(cfg).report();
  return r;
}

// ---------------------------------------------------------------------------
// Flat key-value (de)serialization, shared with NoiseModel/MitigationConfig.

inline std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline WitConfig wit_config_from_kv(const std::map<std::string, std::string>& kv) {
  WitConfig c = bkp_star();
  auto get = [&](const char* k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto* v = get("n")) c.params.n = std::stoi(*v);
  if (auto* v = get("b")) c.params.b = std::stod(*v);
  if (auto* v = get("J")) c.params.J = std::stod(*v);
  if (auto* v = get("T")) c.params.T = std::stoi(*v);
  c.params.h.assign(c.params.n, 0.0);
  if (auto* v = get("h")) {
    c.params.h.clear();
    std::istringstream hs(*v);
    std::string tok;
    while (std::getline(hs, tok, ',')) c.params.h.push_back(std::stod(tok));
  }
  c.K = c.params.n - 1;
  if (auto* v = get("K")) c.K = std::stoi(*v);
  if (auto* v = get("g")) c.g = std::stod(*v);
  if (auto* v = get("insertion")) {
    if (*v == "swap") c.insertion = Insertion::Swap;
    else if (*v == "reset") c.insertion = Insertion::Reset;
    else throw std::invalid_argument("insertion must be swap|reset");
  }
  if (auto* v = get("message")) c.message_state = message_state_from(*v);
  if (auto* v = get("measure_basis")) {
    if (*v == "X") c.measure_basis = MeasureBasis::X;
    else if (*v == "Y") c.measure_basis = MeasureBasis::Y;
    else if (*v == "Z") c.measure_basis = MeasureBasis::Z;
    else throw std::invalid_argument("measure_basis must be X|Y|Z");
  }
  c.validate();
  return c;
}

inline std::string wit_config_to_kv(const WitConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "n = " << c.params.n << "\n"
     << "b = " << c.params.b << "\n"
     << "J = " << c.params.J << "\n"
     << "h = ";
  for (size_t i = 0; i < c.params.h.size(); ++i) os << (i ? "," : "") << c.params.h[i];
  os << "\n"
     << "T = " << c.params.T << "\n"
     << "g = " << c.g << "\n"
     << "K = " << c.K << "\n"
     << "insertion = " << (c.insertion == Insertion::Swap ? "swap" : "reset") << "\n"
     << "message = " << to_string(c.message_state) << "\n"
     << "measure_basis = " << to_string(c.measure_basis) << "\n";
  return os.str();
}

}  // namespace wit
