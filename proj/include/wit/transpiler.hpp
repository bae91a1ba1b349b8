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
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wit/circuit.hpp"
#include "wit/coupling_graph.hpp"
#include "wit/dense.hpp"
#include "wit/noise.hpp"
#include "wit/statevector.hpp"

namespace wit {

struct BasisGateSet {
  std::string name;
  std::set<GateKind> kinds;

  bool allows(GateKind k) const { return kinds.count(k) > 0; }
};

inline BasisGateSet superconducting_basis() {
  return {"superconducting", {GateKind::RZ, GateKind::SX, GateKind::X, GateKind::CX}};
}

inline BasisGateSet trapped_ion_basis() {
  return {"trapped-ion", {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RZZ}};
}

inline BasisGateSet basis_from_name(const std::string& name) {
  if (name == "superconducting") return superconducting_basis();
  if (name == "trapped-ion") return trapped_ion_basis();
  throw std::invalid_argument("unknown basis: " + name);
}

namespace detail {

// All identities below hold up to global phase; verified by dense oracles.
inline void emit_sc(Circuit& out, const Gate& g) {
  switch (g.kind) {
    case GateKind::RZ:
    case GateKind::SX:
    case GateKind::X:
    case GateKind::CX:
    case GateKind::RESET:
    case GateKind::MEASURE:
      out.append(g);
      return;
    case GateKind::H:
      out.append(Gate::rz(g.q0, M_PI / 2));
      out.append(Gate::sx(g.q0));
      out.append(Gate::rz(g.q0, M_PI / 2));
      return;
    case GateKind::RX:
      out.append(Gate::rz(g.q0, M_PI / 2));
      out.append(Gate::sx(g.q0));
      out.append(Gate::rz(g.q0, g.theta + M_PI));
      out.append(Gate::sx(g.q0));
      out.append(Gate::rz(g.q0, M_PI / 2));
      return;
    case GateKind::RY:
      out.append(Gate::rz(g.q0, -M_PI / 2));
      emit_sc(out, Gate::rx(g.q0, g.theta));
      out.append(Gate::rz(g.q0, M_PI / 2));
      return;
    case GateKind::RZZ:
      out.append(Gate::cx(g.q0, g.q1));
      out.append(Gate::rz(g.q1, g.theta));
      out.append(Gate::cx(g.q0, g.q1));
      return;
    case GateKind::SWAP:
      out.append(Gate::cx(g.q0, g.q1));
      out.append(Gate::cx(g.q1, g.q0));
      out.append(Gate::cx(g.q0, g.q1));
      return;
  }
}

inline void emit_ion(Circuit& out, const Gate& g) {
  auto emit_h = [&](int q) {
    out.append(Gate::rz(q, M_PI));
    out.append(Gate::ry(q, M_PI / 2));
  };
  auto emit_cx = [&](int c, int t) {
    // CX = (I (x) H) CZ (I (x) H); CZ = RZZ(-pi/2) with RZ(pi/2) on both.
    emit_h(t);
    out.append(Gate::rz(c, M_PI / 2));
    out.append(Gate::rz(t, M_PI / 2));
    out.append(Gate::rzz(c, t, -M_PI / 2));
    emit_h(t);
  };
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RZZ:
    case GateKind::RESET:
    case GateKind::MEASURE:
      out.append(g);
      return;
    case GateKind::SX:
      out.append(Gate::rx(g.q0, M_PI / 2));
      return;
    case GateKind::X:
      out.append(Gate::rx(g.q0, M_PI));
      return;
    case GateKind::H:
      emit_h(g.q0);
      return;
    case GateKind::CX:
      emit_cx(g.q0, g.q1);
      return;
    case GateKind::SWAP:
      emit_cx(g.q0, g.q1);
      emit_cx(g.q1, g.q0);
      emit_cx(g.q0, g.q1);
      return;
  }
}

}  // namespace detail

/// Rewrites every gate into the basis set; unitary preserved up to global
/// phase. RESET/MEASURE pass through untouched.
inline Circuit decompose(const Circuit& c, const BasisGateSet& basis) {
  Circuit out(c.qubit_count(), c.classical_slots());
  for (const auto& g : c.gates()) {
    if (basis.allows(g.kind) || g.kind == GateKind::RESET || g.kind == GateKind::MEASURE) {
      out.append(g);
      continue;
    }
    if (basis.name == "superconducting") detail::emit_sc(out, g);
    else if (basis.name == "trapped-ion") detail::emit_ion(out, g);
    else throw std::invalid_argument("decompose: no rules for basis " + basis.name);
  }
  return out;
}

/// Adjacent-inverse peephole: cancels CX pairs and merges consecutive RZ
/// on the same wire (dropping angles that reduce to 0 mod 2pi). Repeats
/// to a fixed point.
inline Circuit cancel_adjacent(const Circuit& c) {
  std::vector<Gate> gs(c.gates());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> out;
    for (const auto& g : gs) {
      // Find the most recent survivor sharing a wire with g.
      int prev = -1;
      for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
        const Gate& o = out[i];
        bool share = o.q0 == g.q0 || (g.two_qubit() && o.q0 == g.q1) ||
                     (o.two_qubit() && (o.q1 == g.q0 || (g.two_qubit() && o.q1 == g.q1)));
        if (share) {
          prev = i;
          break;
        }
      }
      if (prev >= 0) {
        Gate& o = out[prev];
        if (g.kind == GateKind::CX && o.kind == GateKind::CX && o.q0 == g.q0 && o.q1 == g.q1) {
          out.erase(out.begin() + prev);
          changed = true;
          continue;
        }
        if (g.kind == GateKind::RZ && o.kind == GateKind::RZ && o.q0 == g.q0) {
          double t = std::remainder(o.theta + g.theta, 2 * M_PI);
          out.erase(out.begin() + prev);
          if (std::abs(t) > 1e-12) out.push_back(Gate::rz(g.q0, t));
          changed = true;
          continue;
        }
      }
      out.push_back(g);
    }
    gs = std::move(out);
  }
  Circuit r(c.qubit_count(), c.classical_slots());
  for (const auto& g : gs) r.append(g);
  return r;
}

// ---------------------------------------------------------------------------
// Layout

/// Injective map logical qubit -> physical node.
struct Layout {
  std::vector<int> phys;

  int at(int logical) const { return phys.at(logical); }
  size_t size() const { return phys.size(); }

  void validate(const CouplingGraph& g) const {
    std::set<int> seen;
    for (int n : phys) {
      if (n < 0 || n >= g.node_count()) throw std::invalid_argument("layout node out of range");
      if (!seen.insert(n).second) throw std::invalid_argument("layout not injective");
    }
  }

  std::string str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < phys.size(); ++i)
      os << (i ? ", " : "") << "q[" << i << "]:n[" << phys[i] << "]";
    os << "}";
    return os.str();
  }
};

/// Logical interaction multigraph: weight = number of 2-qubit gates.
inline std::map<std::pair<int, int>, int> interaction_graph(const Circuit& c) {
  std::map<std::pair<int, int>, int> w;
  for (const auto& g : c.gates())
    if (g.two_qubit()) ++w[std::minmax(g.q0, g.q1)];
  return w;
}

enum class LayoutStrategy { Trivial, DegreeGreedy, NoiseAware };

inline LayoutStrategy layout_strategy_from(const std::string& s) {
  if (s == "trivial") return LayoutStrategy::Trivial;
  if (s == "degree_greedy") return LayoutStrategy::DegreeGreedy;
  if (s == "noise_aware") return LayoutStrategy::NoiseAware;
  throw std::invalid_argument("unknown layout strategy: " + s);
}

/// Initial placement. degree_greedy seeds the most-interacting logical
/// qubit on the highest-degree node, then grows the placement so that
/// every new logical qubit sits adjacent to its already-placed partners
/// whenever the graph allows it. noise_aware additionally scores candidate
/// nodes by edge/node error rates, so poisoned edges are avoided when any
/// alternative adjacency exists.
inline Layout layout_init(const Circuit& c, const CouplingGraph& graph,
                          LayoutStrategy strategy) {
  const int L = c.qubit_count();
  if (graph.node_count() < L)
    throw std::invalid_argument("layout_init: graph smaller than circuit");
  Layout lay;
  lay.phys.assign(L, -1);
  if (strategy == LayoutStrategy::Trivial) {
    std::iota(lay.phys.begin(), lay.phys.end(), 0);
    return lay;
  }

  const bool noise_aware = strategy == LayoutStrategy::NoiseAware;
  auto inter = interaction_graph(c);
  std::vector<int> strength(L, 0);
  for (auto& [e, w] : inter) {
    strength[e.first] += w;
    strength[e.second] += w;
  }
  std::vector<bool> logical_placed(L, false), node_used(graph.node_count(), false);

  auto place = [&](int logical, int node) {
    lay.phys[logical] = node;
    logical_placed[logical] = true;
    node_used[node] = true;
  };

  // Seed: strongest logical on the best free node.
  int seed_logical = 0;
  for (int q = 1; q < L; ++q)
    if (strength[q] > strength[seed_logical]) seed_logical = q;
  int seed_node = 0;
  double seed_score = -1e18;
  for (int v = 0; v < graph.node_count(); ++v) {
    double score = graph.degree(v) - (noise_aware ? 10.0 * graph.node_error(v) : 0.0);
    if (score > seed_score) {
      seed_score = score;
      seed_node = v;
    }
  }
  place(seed_logical, seed_node);

  for (int step = 1; step < L; ++step) {
    // Next logical: strongest interaction with the placed set.
    int best_q = -1, best_w = -1;
    for (int q = 0; q < L; ++q) {
      if (logical_placed[q]) continue;
      int w = 0;
      for (auto& [e, wt] : inter)
        if ((e.first == q && logical_placed[e.second]) ||
            (e.second == q && logical_placed[e.first]))
          w += wt;
      if (w > best_w || (w == best_w && best_q < 0)) {
        best_w = w;
        best_q = q;
      }
    }
    // Candidate node: adjacent to as many placed partners as possible,
    // minimal error among ties, lowest index last.
    int best_v = -1;
    double best_score = 1e18;
    for (int v = 0; v < graph.node_count(); ++v) {
      if (node_used[v]) continue;
      int missing = 0;
      double err = noise_aware ? graph.node_error(v) : 0.0;
      for (auto& [e, wt] : inter) {
        int other = -1;
        if (e.first == best_q && logical_placed[e.second]) other = e.second;
        if (e.second == best_q && logical_placed[e.first]) other = e.first;
        if (other < 0) continue;
        if (graph.adjacent(v, lay.phys[other])) {
          if (noise_aware) err += wt * graph.edge_error(v, lay.phys[other]);
        } else {
          ++missing;
        }
      }
      double score = 1e6 * missing + 1e3 * err + v * 1e-6;
      if (best_v < 0 || score < best_score) {
        best_score = score;
        best_v = v;
      }
    }
    place(best_q, best_v);
  }
  return lay;
}

// ---------------------------------------------------------------------------
// Routing

enum class RoutingHeuristic { GreedyPath, SabreLite };

inline RoutingHeuristic routing_heuristic_from(const std::string& s) {
  if (s == "greedy_path") return RoutingHeuristic::GreedyPath;
  if (s == "sabre_lite") return RoutingHeuristic::SabreLite;
  throw std::invalid_argument("unknown routing heuristic: " + s);
}

struct RoutedCircuit {
  Circuit circuit;        // over physical nodes
  Layout initial;
  Layout final_layout;    // initial composed with the SWAP permutation
  int swaps_inserted = 0;

  GateReport report() const { return circuit.report(); }

  /// CX-equivalent entangler count with SWAP = 3.
  int cx_count() const {
    int n = 0;
    for (const auto& g : circuit.gates()) {
      if (g.kind == GateKind::CX || g.kind == GateKind::RZZ) ++n;
      if (g.kind == GateKind::SWAP) n += 3;
    }
    return n;
  }
};

namespace detail {

struct Mapping {
  std::vector<int> phys_of;  // logical -> node
  std::vector<int> log_at;   // node -> logical or -1

  Mapping(const Layout& lay, int nodes) : phys_of(lay.phys), log_at(nodes, -1) {
    for (size_t q = 0; q < phys_of.size(); ++q) log_at[phys_of[q]] = static_cast<int>(q);
  }

  void swap_nodes(int a, int b) {
    int la = log_at[a], lb = log_at[b];
    log_at[a] = lb;
    log_at[b] = la;
    if (la >= 0) phys_of[la] = b;
    if (lb >= 0) phys_of[lb] = a;
  }
};

inline Gate remap(const Gate& g, const Mapping& m) {
  Gate out = g;
  out.q0 = m.phys_of[g.q0];
  if (g.two_qubit()) out.q1 = m.phys_of[g.q1];
  return out;
}

inline void route_greedy(const Circuit& c, const CouplingGraph& graph, Mapping& m,
                         Circuit& out, int& swaps) {
  for (const auto& g : c.gates()) {
    if (!g.two_qubit()) {
      out.append(remap(g, m));
      continue;
    }
    int a = m.phys_of[g.q0], b = m.phys_of[g.q1];
    if (!graph.adjacent(a, b)) {
      auto path = graph.shortest_path(a, b);
      if (path.empty()) throw std::runtime_error("routing: nodes disconnected");
      for (size_t i = 0; i + 2 < path.size(); ++i) {
        out.append(Gate::swap(path[i], path[i + 1]));
        m.swap_nodes(path[i], path[i + 1]);
        ++swaps;
      }
    }
    out.append(remap(g, m));
  }
}

/// Reduced SABRE: front-layer scoring of candidate SWAPs by total distance
/// reduction; optional rng breaks score ties to diversify trials.
inline void route_sabre(const Circuit& c, const CouplingGraph& graph, Mapping& m,
                        Circuit& out, int& swaps, const std::vector<std::vector<int>>& dist,
                        std::mt19937_64* tiebreak) {
  const auto& gs = c.gates();
  const size_t n = gs.size();
  // Wire-predecessor dependency counts.
  std::vector<int> pending(n, 0);
  std::vector<std::vector<size_t>> dependents(n);
  std::vector<int> last_on_wire(c.qubit_count(), -1);
  for (size_t i = 0; i < n; ++i) {
    for (int q : {gs[i].q0, gs[i].two_qubit() ? gs[i].q1 : -1}) {
      if (q < 0) continue;
      if (last_on_wire[q] >= 0) {
        dependents[last_on_wire[q]].push_back(i);
        ++pending[i];
      }
      last_on_wire[q] = static_cast<int>(i);
    }
  }
  std::set<size_t> front;
  for (size_t i = 0; i < n; ++i)
    if (pending[i] == 0) front.insert(i);

  int stall = 0;
  while (!front.empty()) {
    bool progressed = false;
    for (auto it = front.begin(); it != front.end();) {
      const Gate& g = gs[*it];
      bool ok = !g.two_qubit() || graph.adjacent(m.phys_of[g.q0], m.phys_of[g.q1]);
      if (ok) {
        out.append(remap(g, m));
        for (size_t d : dependents[*it])
          if (--pending[d] == 0) front.insert(d);
        it = front.erase(it);
        progressed = true;
      } else {
        ++it;
      }
    }
    if (progressed) {
      stall = 0;
      continue;
    }
    if (++stall > 4 * graph.node_count())
      throw std::runtime_error("routing: no progress (disconnected region?)");
    // Candidate SWAPs touch a node involved in a blocked front gate.
    std::set<int> active;
    for (size_t i : front) {
      const Gate& g = gs[i];
      if (!g.two_qubit()) continue;
      active.insert(m.phys_of[g.q0]);
      active.insert(m.phys_of[g.q1]);
    }
    std::vector<std::pair<int, int>> candidates;
    for (auto [a, b] : graph.edges())
      if (active.count(a) || active.count(b)) candidates.push_back({a, b});
    auto score = [&](std::pair<int, int> e) {
      Mapping trial = m;
      trial.swap_nodes(e.first, e.second);
      long s = 0;
      for (size_t i : front) {
        const Gate& g = gs[i];
        if (!g.two_qubit()) continue;
        s += dist[trial.phys_of[g.q0]][trial.phys_of[g.q1]];
      }
      return s;
    };
    long best = std::numeric_limits<long>::max();
    std::vector<std::pair<int, int>> best_edges;
    for (auto e : candidates) {
      long s = score(e);
      if (s < best) {
        best = s;
        best_edges = {e};
      } else if (s == best) {
        best_edges.push_back(e);
      }
    }
    std::pair<int, int> chosen = best_edges.front();
    if (tiebreak && best_edges.size() > 1)
      chosen = best_edges[(*tiebreak)() % best_edges.size()];
    out.append(Gate::swap(chosen.first, chosen.second));
    m.swap_nodes(chosen.first, chosen.second);
    ++swaps;
  }
}

}  // namespace detail

/// Routes a decomposed circuit onto the graph. sabre_lite refines the
/// initial layout with `passes` forward/backward sweeps before the final
/// forward pass; rng (when provided) only breaks score ties.
inline RoutedCircuit route(const Circuit& c, const CouplingGraph& graph, const Layout& layout,
                           RoutingHeuristic heuristic, int passes = 3,
                           std::mt19937_64* tiebreak = nullptr) {
  layout.validate(graph);
  if (static_cast<int>(layout.size()) != c.qubit_count())
    throw std::invalid_argument("route: layout size mismatch");
  RoutedCircuit r;
  r.initial = layout;
  r.circuit = Circuit(graph.node_count(), c.classical_slots());
  int swaps = 0;

  if (heuristic == RoutingHeuristic::GreedyPath) {
    detail::Mapping m(layout, graph.node_count());
    detail::route_greedy(c, graph, m, r.circuit, swaps);
    r.final_layout.phys = m.phys_of;
  } else {
    auto dist = graph.all_pairs_distance();
    Circuit reversed(c.qubit_count(), c.classical_slots());
    {
      // Routing cares only about operand adjacency order, so the reverse
      // pass reuses the gate list backwards (non-unitary gates included).
      std::vector<Gate> gs(c.gates());
      std::reverse(gs.begin(), gs.end());
      for (const auto& g : gs) reversed.append(g);
    }
    Layout cur = layout;
    for (int p = 0; p < passes; ++p) {
      for (const Circuit* pass : {&c, const_cast<const Circuit*>(&reversed)}) {
        detail::Mapping m(cur, graph.node_count());
        Circuit scratch(graph.node_count(), c.classical_slots());
        int s = 0;
        detail::route_sabre(*pass, graph, m, scratch, s, dist, tiebreak);
        cur.phys = m.phys_of;
      }
    }
    r.initial = cur;
    detail::Mapping m(cur, graph.node_count());
    detail::route_sabre(c, graph, m, r.circuit, swaps, dist, tiebreak);
    r.final_layout.phys = m.phys_of;
  }
  r.swaps_inserted = swaps;
  return r;
}

/// Multi-trial compilation: seeded tie-breaking diversifies trials, best
/// selected by (CX-equivalent count, trial index).
inline RoutedCircuit route_best(const Circuit& c, const CouplingGraph& graph,
                                const Layout& layout, RoutingHeuristic heuristic, int trials,
                                uint64_t seed, int passes = 3) {
  if (trials < 1) throw std::invalid_argument("route_best: trials >= 1");
  RoutedCircuit best;
  int best_cx = -1;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (t + 1));
    RoutedCircuit r = route(c, graph, layout, heuristic, passes, t == 0 ? nullptr : &rng);
    int cx = r.cx_count();
    if (best_cx < 0 || cx < best_cx) {
      best_cx = cx;
      best = std::move(r);
    }
  }
  return best;
}

/// Every 2-qubit gate must act on a coupling edge.
inline bool check_coupling(const Circuit& c, const CouplingGraph& graph) {
  for (const auto& g : c.gates())
    if (g.two_qubit() && !graph.adjacent(g.q0, g.q1)) return false;
  return true;
}

/// Dense equivalence of original vs routed, restricted to the touched
/// nodes and unwound through the initial/final layouts; up to global
/// phase. Returns false on mismatch; throws if > 12 qubits are involved.
inline bool verify_equivalence(const Circuit& original, const RoutedCircuit& routed,
                               double tol = 1e-7) {
  Circuit orig = original.without_measurements();
  Circuit rt = routed.circuit.without_measurements();
  if (orig.has_nonunitary() || rt.has_nonunitary())
    throw std::invalid_argument("verify_equivalence: non-unitary circuit");

  // Touched nodes: layout image plus anything routed gates act on.
  std::set<int> used(routed.initial.phys.begin(), routed.initial.phys.end());
  for (const auto& g : rt.gates()) {
    used.insert(g.q0);
    if (g.two_qubit()) used.insert(g.q1);
  }
  if (used.size() > 12) throw std::invalid_argument("verify_equivalence: > 12 qubits");
  std::map<int, int> compact;
  for (int n : used) compact[n] = static_cast<int>(compact.size());
  const int u = static_cast<int>(used.size());
  const int L = orig.qubit_count();

  Circuit rt_compact(u, 0);
  for (const auto& g : rt.gates()) {
    Gate h = g;
    h.q0 = compact[g.q0];
    if (g.two_qubit()) h.q1 = compact[g.q1];
    rt_compact.append(h);
  }

  // Expected: original placed at the initial layout, then the net SWAP
  // permutation (final = perm o initial).
  std::vector<int> perm(u);
  std::iota(perm.begin(), perm.end(), 0);
  for (int q = 0; q < L; ++q)
    perm[compact[routed.initial.phys[q]]] = compact[routed.final_layout.phys[q]];
  // Nodes not in the layout image keep identity only if untouched by the
  // permutation; reconstruct the full node permutation from the SWAPs.
  {
    std::vector<int> node_perm(u);
    std::iota(node_perm.begin(), node_perm.end(), 0);
    for (const auto& g : rt.gates())
      if (g.kind == GateKind::SWAP)
        std::swap(node_perm[compact[g.q0]], node_perm[compact[g.q1]]);
    // node_perm[x] = origin of the content now at x; invert to map src->dst.
    for (int x = 0; x < u; ++x) perm[node_perm[x]] = x;
  }

  Circuit placed(u, 0);
  for (const auto& g : orig.gates()) {
    Gate h = g;
    h.q0 = compact[routed.initial.phys[g.q0]];
    if (g.two_qubit()) h.q1 = compact[routed.initial.phys[g.q1]];
    placed.append(h);
  }

  const size_t d = size_t(1) << u;
  cdouble phase = 0;
  for (size_t col = 0; col < d; ++col) {
    StateVector a(u, col), b(u, col);
    for (const auto& g : rt_compact.gates()) apply_gate(a, g);
    for (const auto& g : placed.gates()) apply_gate(b, g);
    // Permute b's qubits by the SWAP permutation.
    std::vector<cdouble> pb(d);
    for (size_t i = 0; i < d; ++i) {
      size_t j = 0;
      for (int q = 0; q < u; ++q)
        if (i & (size_t(1) << q)) j |= size_t(1) << perm[q];
      pb[j] = b[i];
    }
    if (col == 0) {
      for (size_t i = 0; i < d; ++i)
        if (std::abs(pb[i]) > 1e-9) {
          phase = a[i] / pb[i];
          break;
        }
      if (phase == cdouble(0) || std::abs(std::abs(phase) - 1.0) > tol) return false;
    }
    for (size_t i = 0; i < d; ++i)
      if (std::abs(a[i] - phase * pb[i]) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Layout ranking

struct RankedLayout {
  Layout layout;
  double z_noisy = 0;
  double z_ideal = 0;
  double deviation = 0;
  int cx_count = 0;
};

/// Routes each candidate, samples it under the noise model and ranks by
/// |<Z>_noisy - <Z>_ideal| ascending (ties by CX count, then input order).
inline std::vector<RankedLayout> rank_layouts(const Circuit& circuit,
                                              const CouplingGraph& graph,
                                              const NoiseModel& noise,
                                              const std::vector<Layout>& candidates,
                                              uint64_t shots, uint64_t seed) {
  if (candidates.empty()) throw std::invalid_argument("rank_layouts: no candidates");
  double ideal = 0;
  for (const auto& [bits, p] : slot_distribution(circuit))
    ideal += (bits.at(0) == '0' ? p : -p);
  std::vector<RankedLayout> out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    RoutedCircuit r = route(circuit, graph, candidates[i], RoutingHeuristic::GreedyPath);
    Circuit flat = decompose(r.circuit, superconducting_basis());
    Histogram h = noisy_sample(flat, noise, shots, seed + i);
    RankedLayout rl;
    rl.layout = candidates[i];
    rl.z_ideal = ideal;
    rl.z_noisy = histogram_z(h, 0);
    rl.deviation = std::abs(rl.z_noisy - rl.z_ideal);
    rl.cx_count = r.cx_count();
    out.push_back(std::move(rl));
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedLayout& a, const RankedLayout& b) {
    if (std::abs(a.deviation - b.deviation) > 1e-12) return a.deviation < b.deviation;
    return a.cx_count < b.cx_count;
  });
  return out;
}

}  // namespace wit
