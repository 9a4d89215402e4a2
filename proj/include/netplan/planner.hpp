#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netplan/geodesy.hpp"
#include "netplan/graph.hpp"
#include "netplan/ingest.hpp"

namespace netplan {

/// Where graph weights come from: surveyed route lengths, straight-line
/// chords between projected coordinates, or provided-with-chord-fill-in.
enum class EdgeSource { Provided, StraightLine, Hybrid };

inline std::string to_string(EdgeSource source) {
  switch (source) {
    case EdgeSource::Provided: return "provided";
    case EdgeSource::StraightLine: return "straight_line";
    case EdgeSource::Hybrid: return "hybrid";
  }
  throw ArgumentError("unknown edge source");
}

inline EdgeSource parse_edge_source(const std::string& text) {
  if (text == "provided") return EdgeSource::Provided;
  if (text == "straight-line" || text == "straight_line") return EdgeSource::StraightLine;
  if (text == "hybrid") return EdgeSource::Hybrid;
  throw ArgumentError("unknown edge source \"" + text +
                      "\" (expected provided|straight-line|hybrid)");
}

/// A planning node: canonical name plus whatever position data is known.
struct PlanNode {
  std::string name;  // canonical (normalized)
  std::optional<GeoCoordinate> coordinate;
  std::optional<UtmCoordinate> projected;
};

/// A candidate link between two canonical names with a known route length.
struct PlanEdgeInput {
  std::string name_a;
  std::string name_b;
  double length_m = 0.0;
};

struct PlanConfig {
  EdgeSource edge_source = EdgeSource::Provided;
  double regenerator_span_m = 40000.0;
  std::optional<double> cost_per_meter;
  std::optional<std::string> start_node;
};

/// A chosen tree span, oriented parent -> child from the MST root.
struct PlanEdge {
  std::string from;
  std::string to;
  double length_m = 0.0;
  EdgeSource source = EdgeSource::Provided;  // Provided or StraightLine, per edge
};

/// Threshold-based span equipment estimate: each span contributes
/// floor(length / threshold) regenerators. A deliberately coarse model —
/// the output labels it an estimate.
struct EquipmentEstimate {
  double span_threshold_m = 40000.0;
  long regenerator_count = 0;
  std::vector<PlanEdge> spans_exceeding;  // spans of at least one threshold
};

struct TopologyPlan {
  std::vector<PlanNode> nodes;
  SpanningTree tree;
  std::vector<PlanEdge> per_edge;  // child-id order, matches tree.parent_edges
  double total_media_m = 0.0;
  EquipmentEstimate equipment;
  EdgeSource edge_source = EdgeSource::Provided;  // mode the graph was built in
  std::size_t straight_line_fill_ins = 0;         // chosen chord spans (hybrid mode)
};

namespace detail {

inline EquipmentEstimate estimate_from_spans(const std::vector<PlanEdge>& spans,
                                             double threshold_m) {
  if (!(threshold_m > 0.0)) {
    throw RangeError("regenerator span threshold must be positive");
  }
  EquipmentEstimate estimate;
  estimate.span_threshold_m = threshold_m;
  for (const PlanEdge& span : spans) {
    const long per_span = static_cast<long>(std::floor(span.length_m / threshold_m));
    estimate.regenerator_count += per_span;
    if (per_span >= 1) estimate.spans_exceeding.push_back(span);
  }
  return estimate;
}

}  // namespace detail

/// Recomputes the span-threshold estimate for a finished plan (e.g. to ask
/// "what if the regenerator span were 5 km" without re-planning).
inline EquipmentEstimate estimate_equipment(const TopologyPlan& plan, const PlanConfig& config) {
  return detail::estimate_from_spans(plan.per_edge, config.regenerator_span_m);
}

/// Builds the weighted graph per the configured edge source, runs Prim from
/// the configured start node (default: first node), and packages the costed
/// plan. Connectivity errors from the MST propagate with component listings.
inline TopologyPlan propose_topology(const std::vector<PlanNode>& nodes,
                                     const std::optional<std::vector<PlanEdgeInput>>& edges,
                                     const PlanConfig& config) {
  if (nodes.empty()) {
    throw ArgumentError("cannot plan a topology over zero nodes");
  }
  const bool wants_provided =
      config.edge_source == EdgeSource::Provided || config.edge_source == EdgeSource::Hybrid;
  const bool wants_chords =
      config.edge_source == EdgeSource::StraightLine || config.edge_source == EdgeSource::Hybrid;
  if (wants_provided && !edges) {
    throw ArgumentError(to_string(config.edge_source) +
                        " mode needs a provided edge set, but none was given");
  }

  // Chord modes need a projected position for every node.
  std::vector<std::optional<UtmCoordinate>> projected(nodes.size());
  if (wants_chords) {
    std::string missing;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].projected) {
        projected[i] = nodes[i].projected;
      } else if (nodes[i].coordinate) {
        projected[i] = to_utm(*nodes[i].coordinate);
      } else {
        missing += " \"" + nodes[i].name + "\"";
      }
    }
    if (!missing.empty()) {
      throw DataError(to_string(config.edge_source) +
                      " mode needs coordinates for every node; missing:" + missing);
    }
  }

  WeightedGraph graph;
  for (const PlanNode& node : nodes) {
    graph.add_node(node.name, node.projected);  // throws on duplicate names
  }

  // Per unordered id pair: where the surviving weight came from.
  std::map<std::pair<int, int>, EdgeSource> edge_origin;
  if (wants_provided) {
    for (const PlanEdgeInput& edge : *edges) {
      const auto a = graph.find_node(edge.name_a);
      const auto b = graph.find_node(edge.name_b);
      if (!a || !b) {
        throw DataError("edge \"" + edge.name_a + "\" -- \"" + edge.name_b +
                        "\" references a node outside the plan's node set");
      }
      graph.add_edge(*a, *b, edge.length_m);
      edge_origin[std::minmax(*a, *b)] = EdgeSource::Provided;
    }
  }
  if (wants_chords) {
    const int n = static_cast<int>(nodes.size());
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (edge_origin.count({a, b})) continue;  // provided length wins in hybrid
        const double chord = planar_distance(*projected[a], *projected[b]);
        if (chord <= 0.0) {
          throw DataError("nodes \"" + nodes[a].name + "\" and \"" + nodes[b].name +
                          "\" project to the same point; straight-line weight would be 0");
        }
        graph.add_edge(a, b, chord);
        edge_origin[{a, b}] = EdgeSource::StraightLine;
      }
    }
  }

  int start = 0;
  if (config.start_node) {
    const auto id = graph.find_node(normalize_name(*config.start_node));
    if (!id) {
      throw ArgumentError("start node \"" + *config.start_node + "\" is not in the plan");
    }
    start = *id;
  }

  TopologyPlan plan;
  plan.nodes = nodes;
  plan.edge_source = config.edge_source;
  plan.tree = prim_mst(graph, start);
  for (std::size_t child = 0; child < plan.tree.parent_edges.size(); ++child) {
    const auto& e = plan.tree.parent_edges[child];
    if (!e) continue;
    const int parent = e->endpoint_a == static_cast<int>(child) ? e->endpoint_b : e->endpoint_a;
    PlanEdge span;
    span.from = plan.tree.node_names[parent];
    span.to = plan.tree.node_names[child];
    span.length_m = e->weight_m;
    span.source = edge_origin.at(std::minmax(parent, static_cast<int>(child)));
    if (span.source == EdgeSource::StraightLine && config.edge_source == EdgeSource::Hybrid) {
      ++plan.straight_line_fill_ins;
    }
    plan.per_edge.push_back(std::move(span));
  }
  plan.total_media_m = plan.tree.total_weight_m;
  plan.equipment = detail::estimate_from_spans(plan.per_edge, config.regenerator_span_m);
  return plan;
}

/// Two media totals side by side: the absolute gap, the larger/smaller ratio,
/// and the smaller side as a percentage of the larger.
struct ComparisonSide {
  std::string label;
  double media_m = 0.0;
  std::optional<std::size_t> node_count;
  std::optional<std::size_t> edge_count;
};

struct ComparisonReport {
  ComparisonSide a;
  ComparisonSide b;
  double media_delta_m = 0.0;      // a - b
  double media_ratio = 1.0;        // larger / smaller, >= 1
  double percent_of_larger = 0.0;  // 100 * smaller / larger

  /// Aligned two-column table; meters rendered as integers, the ratio to two
  /// decimals and the percentage to one.
  std::string render() const {
    const auto count_cell = [](const std::optional<std::size_t>& v) {
      return v ? std::to_string(*v) : std::string("-");
    };
    std::ostringstream out;
    out << std::left;
    out << std::setw(24) << "metric" << std::setw(20) << a.label << b.label << "\n";
    out << std::setw(24) << "nodes" << std::setw(20) << count_cell(a.node_count)
        << count_cell(b.node_count) << "\n";
    out << std::setw(24) << "tree edges" << std::setw(20) << count_cell(a.edge_count)
        << count_cell(b.edge_count) << "\n";
    out << std::setw(24) << "media length (m)" << std::setw(20) << std::llround(a.media_m)
        << std::llround(b.media_m) << "\n";
    out << std::setw(24) << "difference (m)" << std::llround(std::abs(media_delta_m)) << "\n";
    out << std::setw(24) << "ratio (larger/smaller)" << std::fixed << std::setprecision(2)
        << media_ratio << "\n";
    out << std::setw(24) << "percent of larger" << std::setprecision(1) << percent_of_larger
        << "%\n";
    return out.str();
  }
};

inline ComparisonReport comparison_report(ComparisonSide a, ComparisonSide b) {
  if (!(a.media_m > 0.0) || !(b.media_m > 0.0)) {
    throw ArgumentError("comparison needs positive media totals on both sides");
  }
  ComparisonReport report;
  report.media_delta_m = a.media_m - b.media_m;
  const double larger = std::max(a.media_m, b.media_m);
  const double smaller = std::min(a.media_m, b.media_m);
  report.media_ratio = larger / smaller;
  report.percent_of_larger = 100.0 * smaller / larger;
  report.a = std::move(a);
  report.b = std::move(b);
  return report;
}

inline ComparisonReport comparison_report(double media_a, double media_b,
                                          const std::string& label_a = "a",
                                          const std::string& label_b = "b") {
  return comparison_report(ComparisonSide{label_a, media_a, std::nullopt, std::nullopt},
                           ComparisonSide{label_b, media_b, std::nullopt, std::nullopt});
}

inline ComparisonReport comparison_report(const TopologyPlan& a, const TopologyPlan& b,
                                          const std::string& label_a = "a",
                                          const std::string& label_b = "b") {
  return comparison_report(
      ComparisonSide{label_a, a.total_media_m, a.nodes.size(), a.per_edge.size()},
      ComparisonSide{label_b, b.total_media_m, b.nodes.size(), b.per_edge.size()});
}

/// Same node collection, two distance determinations: plan both, diff the
/// trees, and say whether the topology actually changed.
struct SensitivityReport {
  TopologyPlan plan_a;
  TopologyPlan plan_b;
  TopologyDiff diff;
  bool topology_changed = false;

  std::string render(const std::string& label_a = "first",
                     const std::string& label_b = "second") const {
    std::ostringstream out;
    out << label_a << " total: " << std::llround(plan_a.total_media_m) << " m ("
        << plan_a.per_edge.size() << " edges)\n";
    out << label_b << " total: " << std::llround(plan_b.total_media_m) << " m ("
        << plan_b.per_edge.size() << " edges)\n";
    out << "total delta (" << label_a << " - " << label_b
        << "): " << std::llround(diff.weight_delta_m) << " m\n";
    for (const auto& [x, y] : diff.only_in_a) {
      out << "only in " << label_a << ": \"" << x << "\" -- \"" << y << "\"\n";
    }
    for (const auto& [x, y] : diff.only_in_b) {
      out << "only in " << label_b << ": \"" << x << "\" -- \"" << y << "\"\n";
    }
    out << "shared edges: " << diff.shared_count << "\n";
    out << (topology_changed ? "TOPOLOGY CHANGED" : "TOPOLOGY UNCHANGED") << "\n";
    return out.str();
  }
};

/// Restricts a node catalog to the nodes an edge set actually references.
/// Both determinations must reference the same canonical names; the shared
/// subset keeps catalog order so start-node defaulting stays stable.
inline SensitivityReport sensitivity_compare(const std::vector<PlanNode>& catalog,
                                             const std::vector<PlanEdgeInput>& edges_a,
                                             const std::vector<PlanEdgeInput>& edges_b,
                                             PlanConfig config) {
  const auto referenced = [](const std::vector<PlanEdgeInput>& edges) {
    std::set<std::string> names;
    for (const auto& e : edges) {
      names.insert(e.name_a);
      names.insert(e.name_b);
    }
    return names;
  };
  const auto names_a = referenced(edges_a);
  const auto names_b = referenced(edges_b);
  if (names_a != names_b) {
    std::string unmatched;
    for (const auto& name : names_a) {
      if (!names_b.count(name)) unmatched += " \"" + name + "\" (first only)";
    }
    for (const auto& name : names_b) {
      if (!names_a.count(name)) unmatched += " \"" + name + "\" (second only)";
    }
    throw ArgumentError("edge sets cover different node sets:" + unmatched);
  }

  std::vector<PlanNode> subset;
  std::set<std::string> known;
  for (const PlanNode& node : catalog) {
    if (names_a.count(node.name)) {
      subset.push_back(node);
      known.insert(node.name);
    }
  }
  for (const auto& name : names_a) {
    if (!known.count(name)) {
      throw DataError("edge endpoint \"" + name + "\" is not in the node catalog");
    }
  }

  // Sensitivity runs compare the provided determinations as-is; chord modes
  // would erase the very difference under study.
  config.edge_source = EdgeSource::Provided;

  SensitivityReport report;
  report.plan_a = propose_topology(subset, edges_a, config);
  report.plan_b = propose_topology(subset, edges_b, config);
  report.diff = compare_topologies(report.plan_a.tree, report.plan_b.tree);
  report.topology_changed = !report.diff.identical();
  return report;
}

/// Canonical planning inputs from ingested CSV records.
inline std::vector<PlanNode> plan_nodes_from_records(const std::vector<NodeRecord>& records) {
  std::vector<PlanNode> nodes;
  nodes.reserve(records.size());
  for (const NodeRecord& record : records) {
    PlanNode node;
    node.name = normalize_name(record.name);
    node.coordinate = GeoCoordinate(parse_dms(record.latitude_dms),
                                    parse_dms(record.longitude_dms));
    node.projected = to_utm(*node.coordinate);
    nodes.push_back(std::move(node));
  }
  return nodes;
}

inline std::vector<PlanEdgeInput> plan_edges_from_records(const std::vector<EdgeRecord>& records,
                                                          const AliasMap& aliases = AliasMap{}) {
  std::vector<PlanEdgeInput> edges;
  edges.reserve(records.size());
  for (const EdgeRecord& record : records) {
    edges.push_back(PlanEdgeInput{aliases.resolve(record.name_a), aliases.resolve(record.name_b),
                                  static_cast<double>(record.distance_m)});
  }
  return edges;
}

/// Stable-key-order JSON document for a plan: config echo, provenance, node
/// list, chosen spans, totals, and the equipment estimate.
inline nlohmann::ordered_json plan_to_json(const TopologyPlan& plan, const PlanConfig& config) {
  nlohmann::ordered_json doc;
  doc["config"] = {
      {"edge_source", to_string(config.edge_source)},
      {"regenerator_span_m", config.regenerator_span_m},
      {"cost_per_meter",
       config.cost_per_meter ? nlohmann::ordered_json(*config.cost_per_meter)
                             : nlohmann::ordered_json(nullptr)},
      {"start_node", config.start_node ? nlohmann::ordered_json(*config.start_node)
                                       : nlohmann::ordered_json(nullptr)},
  };
  doc["provenance"] = {
      {"edge_source", to_string(plan.edge_source)},
      {"straight_line_fill_ins", plan.straight_line_fill_ins},
  };

  doc["nodes"] = nlohmann::ordered_json::array();
  for (const PlanNode& node : plan.nodes) {
    nlohmann::ordered_json item;
    item["name"] = node.name;
    if (node.coordinate) {
      item["latitude_deg"] = node.coordinate->latitude_deg;
      item["longitude_deg"] = node.coordinate->longitude_deg;
    }
    if (node.projected) {
      item["zone"] = node.projected->zone;
      item["hemisphere"] = std::string(1, hemisphere_letter(node.projected->hemisphere));
      item["easting_m"] = node.projected->easting_m;
      item["northing_m"] = node.projected->northing_m;
    }
    doc["nodes"].push_back(std::move(item));
  }

  doc["tree"] = nlohmann::ordered_json::object();
  doc["tree"]["root"] = plan.tree.node_names.at(plan.tree.root);
  doc["tree"]["edges"] = nlohmann::ordered_json::array();
  for (const PlanEdge& span : plan.per_edge) {
    doc["tree"]["edges"].push_back({
        {"from", span.from},
        {"to", span.to},
        {"length_m", span.length_m},
        {"source", to_string(span.source)},
    });
  }

  doc["total_media_m"] = plan.total_media_m;
  if (config.cost_per_meter) {
    doc["cost"] = {
        {"per_meter", *config.cost_per_meter},
        {"total", *config.cost_per_meter * plan.total_media_m},
    };
  } else {
    doc["cost"] = nullptr;
  }

  doc["equipment"] = nlohmann::ordered_json::object();
  doc["equipment"]["model"] = "span-threshold estimate";
  doc["equipment"]["span_threshold_m"] = plan.equipment.span_threshold_m;
  doc["equipment"]["regenerator_count"] = plan.equipment.regenerator_count;
  doc["equipment"]["spans_exceeding"] = nlohmann::ordered_json::array();
  for (const PlanEdge& span : plan.equipment.spans_exceeding) {
    doc["equipment"]["spans_exceeding"].push_back({
        {"from", span.from},
        {"to", span.to},
        {"length_m", span.length_m},
    });
  }
  return doc;
}

}  // namespace netplan
