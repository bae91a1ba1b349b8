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
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace wit {

/// Undirected device topology with optional per-node and per-edge error
/// rates. Topology JSON schema (version 1):
///   {"nodes": N, "edges": [[a,b],...],
///    "edge_error": {"a-b": rate, ...}, "node_error": {"a": rate, ...}}
class CouplingGraph {
 public:
  CouplingGraph() = default;

  CouplingGraph(int nodes, std::vector<std::pair<int, int>> edges) : node_count_(nodes) {
    for (auto [a, b] : edges) add_edge(a, b);
  }

  int node_count() const { return node_count_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  void add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("self-loop edge");
    if (a < 0 || b < 0 || a >= node_count_ || b >= node_count_)
      throw std::out_of_range("edge references invalid node");
    edges_.insert(std::minmax(a, b));
  }

  bool adjacent(int a, int b) const { return edges_.count(std::minmax(a, b)) > 0; }

  std::vector<int> neighbors(int n) const {
    std::vector<int> out;
    for (auto [a, b] : edges_) {
      if (a == n) out.push_back(b);
      if (b == n) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int degree(int n) const { return static_cast<int>(neighbors(n).size()); }

  void set_edge_error(int a, int b, double rate) { edge_error_[std::minmax(a, b)] = rate; }
  void set_node_error(int n, double rate) { node_error_[n] = rate; }

  double edge_error(int a, int b, double fallback = 0.0) const {
    auto it = edge_error_.find(std::minmax(a, b));
    return it == edge_error_.end() ? fallback : it->second;
  }
  double node_error(int n, double fallback = 0.0) const {
    auto it = node_error_.find(n);
    return it == node_error_.end() ? fallback : it->second;
  }
  bool has_error_data() const { return !edge_error_.empty() || !node_error_.empty(); }

  /// BFS distances from every node; unreachable pairs get -1.
  std::vector<std::vector<int>> all_pairs_distance() const {
    std::vector<std::vector<int>> dist(node_count_, std::vector<int>(node_count_, -1));
    for (int s = 0; s < node_count_; ++s) {
      std::queue<int> q;
      q.push(s);
      dist[s][s] = 0;
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : neighbors(u)) {
          if (dist[s][v] < 0) {
            dist[s][v] = dist[s][u] + 1;
            q.push(v);
          }
        }
      }
    }
    return dist;
  }

  /// Shortest path between two nodes, lexicographically smallest node
  /// sequence among all shortest paths. Empty if disconnected.
  std::vector<int> shortest_path(int from, int to) const {
    std::vector<int> dist(node_count_, -1), parent(node_count_, -1);
    std::queue<int> q;
    q.push(from);
    dist[from] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : neighbors(u)) {  // neighbors() is sorted
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else if (dist[v] == dist[u] + 1 && u < parent[v]) {
          parent[v] = u;
        }
      }
    }
    if (dist[to] < 0) return {};
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  static CouplingGraph from_json(const nlohmann::json& j) {
    if (!j.contains("nodes") || !j.contains("edges"))
      throw std::invalid_argument("topology JSON needs 'nodes' and 'edges'");
    CouplingGraph g;
    g.node_count_ = j.at("nodes").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("topology edge must be a pair");
      g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    if (j.contains("edge_error")) {
      for (auto& [key, val] : j.at("edge_error").items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos)
          throw std::invalid_argument("edge_error key must look like 'a-b'");
        int a = std::stoi(key.substr(0, dash));
        int b = std::stoi(key.substr(dash + 1));
        if (!g.adjacent(a, b)) throw std::invalid_argument("edge_error on missing edge " + key);
        g.set_edge_error(a, b, val.get<double>());
      }
    }
    if (j.contains("node_error")) {
      for (auto& [key, val] : j.at("node_error").items())
        g.set_node_error(std::stoi(key), val.get<double>());
    }
    return g;
  }

  static CouplingGraph load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open topology file: " + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("topology " + path + ": " + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["nodes"] = node_count_;
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : edges_) j["edges"].push_back({a, b});
    if (!edge_error_.empty()) {
      nlohmann::json ee;
      for (auto& [e, r] : edge_error_) ee[std::to_string(e.first) + "-" + std::to_string(e.second)] = r;
      j["edge_error"] = ee;
    }
    if (!node_error_.empty()) {
      nlohmann::json ne;
      for (auto& [n, r] : node_error_) ne[std::to_string(n)] = r;
      j["node_error"] = ne;
    }
    return j;
  }

 private:
  int node_count_ = 0;
  std::set<std::pair<int, int>> edges_;
  std::map<std::pair<int, int>, double> edge_error_;
  std::map<int, double> node_error_;
};

/// Resolves a built-in topology name against the shipped data directory
/// (WIT_TOPOLOGY_DIR overrides; falls back to the configured install path),
/// or treats the argument as a file path if it contains a slash or .json.
inline std::string topology_path(const std::string& name_or_path) {
  if (name_or_path.find('/') != std::string::npos ||
      name_or_path.find(".json") != std::string::npos)
    return name_or_path;
  std::string dir;
  if (const char* env = std::getenv("WIT_TOPOLOGY_DIR")) dir = env;
#ifdef WIT_DATA_DIR
  if (dir.empty()) dir = std::string(WIT_DATA_DIR) + "/topologies";
#endif
  if (dir.empty()) dir = "data/topologies";
  return dir + "/" + name_or_path + ".json";
}

inline CouplingGraph load_topology(const std::string& name_or_path) {
  return CouplingGraph::load(topology_path(name_or_path));
}

}  // namespace wit
