#pragma once

// Independent cross-checks for the MST implementations: brute-force
// spanning-tree enumeration (exponential, for tiny graphs only), a random
// connected-graph generator, and a cut-property checker.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "netplan/graph.hpp"

namespace support {

/// Minimum spanning-tree total by trying every (n-1)-edge subset and keeping
/// the cheapest acyclic one. Only sane for graphs of a handful of nodes.
inline std::optional<double> exhaustive_mst_total(const netplan::WeightedGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n == 0) return std::nullopt;
  if (n == 1) return 0.0;
  const auto& edges = graph.edges();
  const std::size_t m = edges.size();
  const std::size_t k = n - 1;
  if (m < k) return std::nullopt;

  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;

  std::optional<double> best;
  while (true) {
    netplan::detail::DisjointSets sets(n);
    bool acyclic = true;
    double total = 0.0;
    for (std::size_t i : pick) {
      if (!sets.unite(edges[i].endpoint_a, edges[i].endpoint_b)) {
        acyclic = false;
        break;
      }
      total += edges[i].weight_m;
    }
    // k successful unions on n = k+1 nodes leave one component: a tree that
    // spans everything.
    if (acyclic && (!best || total < *best)) best = total;

    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

/// Connected graph with 2..max_nodes nodes and positive integer weights:
/// a random spanning tree first (guarantees connectivity), then random
/// extra edges.
inline netplan::WeightedGraph random_connected_graph(std::mt19937& rng, int max_nodes = 8,
                                                     int max_weight = 50) {
  std::uniform_int_distribution<int> node_count_dist(2, max_nodes);
  std::uniform_int_distribution<int> weight_dist(1, max_weight);
  const int n = node_count_dist(rng);

  netplan::WeightedGraph graph;
  for (int i = 0; i < n; ++i) graph.add_node("n" + std::to_string(i));

  std::set<std::pair<int, int>> used;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent_dist(0, i - 1);
    const int j = parent_dist(rng);
    graph.add_edge(j, i, weight_dist(rng));
    used.insert(std::minmax(j, i));
  }
  std::uniform_int_distribution<int> extra_dist(0, n * (n - 1) / 2);
  const int extras = extra_dist(rng);
  std::uniform_int_distribution<int> id_dist(0, n - 1);
  for (int e = 0; e < extras; ++e) {
    const int a = id_dist(rng);
    const int b = id_dist(rng);
    if (a == b || used.count(std::minmax(a, b))) continue;
    graph.add_edge(a, b, weight_dist(rng));
    used.insert(std::minmax(a, b));
  }
  return graph;
}

/// For every tree edge: cutting it splits the nodes in two; the edge must be
/// no heavier than any graph edge crossing that cut (otherwise swapping them
/// would give a cheaper spanning tree).
inline bool satisfies_cut_property(const netplan::WeightedGraph& graph,
                                   const netplan::SpanningTree& tree) {
  const std::size_t n = graph.node_count();
  const auto tree_edges = tree.edges();

  for (std::size_t cut = 0; cut < tree_edges.size(); ++cut) {
    // Flood one side of the cut through the remaining tree edges.
    std::vector<std::vector<int>> adjacency(n);
    for (std::size_t i = 0; i < tree_edges.size(); ++i) {
      if (i == cut) continue;
      adjacency[tree_edges[i].endpoint_a].push_back(tree_edges[i].endpoint_b);
      adjacency[tree_edges[i].endpoint_b].push_back(tree_edges[i].endpoint_a);
    }
    std::vector<bool> side_a(n, false);
    std::vector<int> stack{tree_edges[cut].endpoint_a};
    side_a[tree_edges[cut].endpoint_a] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adjacency[u]) {
        if (!side_a[v]) {
          side_a[v] = true;
          stack.push_back(v);
        }
      }
    }
    for (const netplan::Edge& e : graph.edges()) {
      const bool crosses = side_a[e.endpoint_a] != side_a[e.endpoint_b];
      if (crosses && e.weight_m < tree_edges[cut].weight_m) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace support
