#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "netplan/errors.hpp"
#include "netplan/planner.hpp"

namespace netplan {

/// GeoJSON FeatureCollection for a plan: one Point per node, one LineString
/// per chosen span. Coordinates are the original geographic values in
/// [longitude, latitude] order — never inverse-projected from UTM.
inline std::string to_geojson(const TopologyPlan& plan) {
  std::map<std::string, const PlanNode*> by_name;
  std::string missing;
  for (const PlanNode& node : plan.nodes) {
    if (!node.coordinate) {
      missing += " \"" + node.name + "\"";
      continue;
    }
    by_name.emplace(node.name, &node);
  }
  if (!missing.empty()) {
    throw DataError("GeoJSON export needs geographic coordinates; missing:" + missing);
  }

  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = nlohmann::ordered_json::array();

  for (const PlanNode& node : plan.nodes) {
    const UtmCoordinate utm = node.projected ? *node.projected : to_utm(*node.coordinate);
    nlohmann::ordered_json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {
        {"type", "Point"},
        {"coordinates", {node.coordinate->longitude_deg, node.coordinate->latitude_deg}},
    };
    feature["properties"] = {
        {"name", node.name},
        {"easting", utm.easting_m},
        {"northing", utm.northing_m},
    };
    doc["features"].push_back(std::move(feature));
  }

  for (const PlanEdge& span : plan.per_edge) {
    const PlanNode* from = by_name.at(span.from);
    const PlanNode* to = by_name.at(span.to);
    nlohmann::ordered_json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {
        {"type", "LineString"},
        {"coordinates",
         {{from->coordinate->longitude_deg, from->coordinate->latitude_deg},
          {to->coordinate->longitude_deg, to->coordinate->latitude_deg}}},
    };
    feature["properties"] = {
        {"from", span.from},
        {"to", span.to},
        {"length_m", span.length_m},  // the exact edge weight, no re-rounding
    };
    doc["features"].push_back(std::move(feature));
  }
  return doc.dump(2) + "\n";
}

namespace detail {

inline std::string dot_quote(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string dot_length(double meters) {
  if (meters == std::floor(meters) && std::abs(meters) < 1e15) {
    return std::to_string(static_cast<long long>(meters));
  }
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << meters;
  return out.str();
}

}  // namespace detail

/// Undirected DOT rendering of a tree: every node gets a statement (id
/// order), every span an edge statement labeled with its length in meters.
inline std::string to_dot(const SpanningTree& tree, const std::string& graph_name = "topology") {
  std::ostringstream out;
  out << "graph " << detail::dot_quote(graph_name) << " {\n";
  for (const std::string& name : tree.node_names) {
    out << "  " << detail::dot_quote(name) << ";\n";
  }
  for (const auto& e : tree.parent_edges) {
    if (!e) continue;
    out << "  " << detail::dot_quote(tree.node_names[e->endpoint_a]) << " -- "
        << detail::dot_quote(tree.node_names[e->endpoint_b]) << " [label=\""
        << detail::dot_length(e->weight_m) << " m\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace netplan
