#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netplan/errors.hpp"
#include "netplan/geodesy.hpp"

namespace netplan {

struct Node {
  int id = 0;
  std::string name;  // callers pass already-normalized names
  std::optional<UtmCoordinate> position;
};

struct Edge {
  int endpoint_a = 0;
  int endpoint_b = 0;
  double weight_m = 0.0;
};

/// Record of a duplicate node pair collapsed at insertion time.
struct CollapsedDuplicate {
  int endpoint_a = 0;
  int endpoint_b = 0;
  double kept_m = 0.0;
  double dropped_m = 0.0;
};

/// Undirected graph with unique node names, positive finite weights, and at
/// most one edge per unordered pair (re-inserting a pair keeps the minimum).
class WeightedGraph {
 public:
  int add_node(std::string name, std::optional<UtmCoordinate> position = std::nullopt) {
    if (name_to_id_.count(name)) {
      throw ArgumentError("duplicate node name \"" + name + "\"");
    }
    const int id = static_cast<int>(nodes_.size());
    name_to_id_.emplace(name, id);
    nodes_.push_back(Node{id, std::move(name), position});
    incident_.emplace_back();
    return id;
  }

  void add_edge(int a, int b, double weight_m) {
    require_node_id(a, "edge endpoint");
    require_node_id(b, "edge endpoint");
    if (a == b) {
      throw ArgumentError("self-loop on node \"" + nodes_[a].name + "\"");
    }
    if (!std::isfinite(weight_m) || weight_m <= 0.0) {
      throw RangeError("edge weight between \"" + nodes_[a].name + "\" and \"" +
                       nodes_[b].name + "\" must be finite and positive");
    }
    const auto key = std::minmax(a, b);
    if (const auto it = pair_to_edge_.find(key); it != pair_to_edge_.end()) {
      Edge& existing = edges_[it->second];
      if (weight_m < existing.weight_m) {
        collapsed_.push_back({key.first, key.second, weight_m, existing.weight_m});
        existing.weight_m = weight_m;
      } else {
        collapsed_.push_back({key.first, key.second, existing.weight_m, weight_m});
      }
      return;
    }
    const std::size_t index = edges_.size();
    edges_.push_back(Edge{key.first, key.second, weight_m});
    pair_to_edge_.emplace(key, index);
    incident_[a].push_back(index);
    incident_[b].push_back(index);
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<CollapsedDuplicate>& collapsed_duplicates() const { return collapsed_; }

  const Node& node(int id) const {
    require_node_id(id, "node lookup");
    return nodes_[id];
  }

  std::optional<int> find_node(std::string_view name) const {
    const auto it = name_to_id_.find(std::string(name));
    return it == name_to_id_.end() ? std::nullopt : std::optional<int>(it->second);
  }

  /// Edge indices incident to a node, in insertion order.
  const std::vector<std::size_t>& incident_edges(int id) const {
    require_node_id(id, "adjacency lookup");
    return incident_[id];
  }

 private:
  void require_node_id(int id, const char* context) const {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
      throw ArgumentError(std::string(context) + " refers to node id " + std::to_string(id) +
                          " but the graph has " + std::to_string(nodes_.size()) + " nodes");
    }
  }

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<std::pair<int, int>, std::size_t> pair_to_edge_;
  std::map<std::string, int> name_to_id_;
  std::vector<CollapsedDuplicate> collapsed_;
};

/// MST result. parent_edges is indexed by node id; the root's slot is empty.
/// The total is accumulated in node-id order so it is bit-identical to any
/// other id-ordered sum over the same edges.
struct SpanningTree {
  int root = 0;
  std::vector<std::string> node_names;            // id -> name
  std::vector<std::optional<Edge>> parent_edges;  // id -> chosen edge (none at root)
  double total_weight_m = 0.0;

  /// Chosen edges in child-id order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(parent_edges.empty() ? 0 : parent_edges.size() - 1);
    for (const auto& e : parent_edges) {
      if (e) out.push_back(*e);
    }
    return out;
  }

  std::size_t edge_count() const { return edges().size(); }
};

/// Connected components as node-id lists, ordered by smallest member id.
inline std::vector<std::vector<int>> connected_components(const WeightedGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> components;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> component;
    std::vector<int> stack{static_cast<int>(s)};
    seen[s] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (std::size_t ei : graph.incident_edges(u)) {
        const Edge& e = graph.edges()[ei];
        const int v = e.endpoint_a == u ? e.endpoint_b : e.endpoint_a;
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

namespace detail {

inline std::vector<std::vector<std::string>> component_names(
    const WeightedGraph& graph, const std::vector<std::vector<int>>& components) {
  std::vector<std::vector<std::string>> out;
  out.reserve(components.size());
  for (const auto& component : components) {
    std::vector<std::string> names;
    names.reserve(component.size());
    for (int id : component) names.push_back(graph.node(id).name);
    out.push_back(std::move(names));
  }
  return out;
}

inline void require_spannable(const WeightedGraph& graph) {
  if (graph.node_count() == 0) {
    throw ArgumentError("cannot build a spanning tree of an empty graph");
  }
  const auto components = connected_components(graph);
  if (components.size() > 1) {
    throw ConnectivityError(component_names(graph, components));
  }
}

/// Finalizes a tree from per-node parent edges: fills names and accumulates
/// the total in node-id order.
inline SpanningTree finish_tree(const WeightedGraph& graph, int root,
                                std::vector<std::optional<Edge>> parent_edges) {
  SpanningTree tree;
  tree.root = root;
  tree.node_names.reserve(graph.node_count());
  for (const Node& node : graph.nodes()) tree.node_names.push_back(node.name);
  tree.parent_edges = std::move(parent_edges);
  tree.total_weight_m = 0.0;
  for (const auto& e : tree.parent_edges) {
    if (e) tree.total_weight_m += e->weight_m;
  }
  return tree;
}

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

/// Heap-based Prim: tentative distances start at infinity (0 at the start
/// node); the queue pops the smallest distance, preferring the lower node id
/// on ties; a popped entry older than the node's current distance is stale
/// and skipped (lazy decrease-key).
inline SpanningTree prim_mst(const WeightedGraph& graph, int start) {
  detail::require_spannable(graph);
  const int n = static_cast<int>(graph.node_count());
  if (start < 0 || start >= n) {
    throw ArgumentError("start node id " + std::to_string(start) +
                        " is not in the graph (0.." + std::to_string(n - 1) + ")");
  }

  constexpr double kInfinity = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, kInfinity);
  std::vector<std::optional<Edge>> parent_edges(n);
  std::vector<bool> in_tree(n, false);
  using QueueEntry = std::pair<double, int>;  // (distance, node id): id breaks ties
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> queue;

  distance[start] = 0.0;
  queue.emplace(0.0, start);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (in_tree[u] || d > distance[u]) continue;  // stale
    in_tree[u] = true;
    for (std::size_t ei : graph.incident_edges(u)) {
      const Edge& e = graph.edges()[ei];
      const int z = e.endpoint_a == u ? e.endpoint_b : e.endpoint_a;
      if (!in_tree[z] && e.weight_m < distance[z]) {
        distance[z] = e.weight_m;
        parent_edges[z] = e;
        queue.emplace(e.weight_m, z);
      }
    }
  }
  return detail::finish_tree(graph, start, std::move(parent_edges));
}

/// Kruskal via sorted edges + union-find; the independent check on Prim.
/// Edges sort by (weight, lower id, higher id) so the result is deterministic.
inline SpanningTree kruskal_mst(const WeightedGraph& graph) {
  detail::require_spannable(graph);
  const int n = static_cast<int>(graph.node_count());

  std::vector<Edge> sorted = graph.edges();
  std::sort(sorted.begin(), sorted.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.weight_m, x.endpoint_a, x.endpoint_b) <
           std::tie(y.weight_m, y.endpoint_a, y.endpoint_b);
  });

  detail::DisjointSets sets(graph.node_count());
  std::vector<std::vector<std::pair<int, const Edge*>>> chosen_adjacency(n);
  for (const Edge& e : sorted) {
    if (sets.unite(e.endpoint_a, e.endpoint_b)) {
      chosen_adjacency[e.endpoint_a].emplace_back(e.endpoint_b, &e);
      chosen_adjacency[e.endpoint_b].emplace_back(e.endpoint_a, &e);
    }
  }

  // Orient the chosen edges away from node 0 so the result carries the same
  // parent-edge shape as Prim's.
  std::vector<std::optional<Edge>> parent_edges(n);
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& [v, e] : chosen_adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        parent_edges[v] = *e;
        stack.push_back(v);
      }
    }
  }
  return detail::finish_tree(graph, 0, std::move(parent_edges));
}

/// Id-ordered sum of the tree's edge weights (the same order the tree's own
/// total was accumulated in, so the two are bit-identical).
inline double total_length(const SpanningTree& tree) {
  double total = 0.0;
  for (const auto& e : tree.parent_edges) {
    if (e) total += e->weight_m;
  }
  return total;
}

/// Edge-set difference between two trees over the same named node set.
struct TopologyDiff {
  std::vector<std::pair<std::string, std::string>> only_in_a;
  std::vector<std::pair<std::string, std::string>> only_in_b;
  std::size_t shared_count = 0;
  double weight_delta_m = 0.0;  // total(a) - total(b)

  bool identical() const { return only_in_a.empty() && only_in_b.empty(); }
};

namespace detail {

/// A tree's edges as sorted unordered name pairs.
inline std::set<std::pair<std::string, std::string>> name_pairs(const SpanningTree& tree) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : tree.parent_edges) {
    if (!e) continue;
    auto pair = std::minmax(tree.node_names[e->endpoint_a], tree.node_names[e->endpoint_b]);
    pairs.insert(std::move(pair));
  }
  return pairs;
}

}  // namespace detail

inline TopologyDiff compare_topologies(const SpanningTree& a, const SpanningTree& b) {
  const std::set<std::string> names_a(a.node_names.begin(), a.node_names.end());
  const std::set<std::string> names_b(b.node_names.begin(), b.node_names.end());
  if (names_a != names_b) {
    std::string unmatched;
    for (const auto& name : names_a) {
      if (!names_b.count(name)) unmatched += " \"" + name + "\" (first only)";
    }
    for (const auto& name : names_b) {
      if (!names_a.count(name)) unmatched += " \"" + name + "\" (second only)";
    }
    throw ArgumentError("trees cover different node sets:" + unmatched);
  }

  const auto pairs_a = detail::name_pairs(a);
  const auto pairs_b = detail::name_pairs(b);
  TopologyDiff diff;
  for (const auto& pair : pairs_a) {
    if (pairs_b.count(pair)) {
      ++diff.shared_count;
    } else {
      diff.only_in_a.push_back(pair);
    }
  }
  for (const auto& pair : pairs_b) {
    if (!pairs_a.count(pair)) diff.only_in_b.push_back(pair);
  }
  diff.weight_delta_m = a.total_weight_m - b.total_weight_m;
  return diff;
}

}  // namespace netplan
