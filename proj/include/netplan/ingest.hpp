#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netplan/csv.hpp"
#include "netplan/errors.hpp"
#include "netplan/geodesy.hpp"
#include "netplan/graph.hpp"

namespace netplan {

/// Canonical name shape: surrounding whitespace trimmed, internal whitespace
/// runs collapsed to one space, ASCII letters lowercased. Multi-byte UTF-8
/// sequences pass through untouched. Idempotent.
inline std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

namespace detail {

inline void check_header(const std::string& path, const CsvRow& header,
                         const std::vector<std::string>& expected) {
  if (header.fields.size() != expected.size()) {
    std::string joined;
    for (const auto& h : expected) {
      if (!joined.empty()) joined += ",";
      joined += h;
    }
    throw CsvSchemaError(path, header.line, header.fields.size(),
                         "expected " + std::to_string(expected.size()) + " header columns (" +
                             joined + "), got " + std::to_string(header.fields.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (normalize_name(header.fields[i]) != expected[i]) {
      throw CsvSchemaError(path, header.line, i + 1,
                           "expected header column \"" + expected[i] + "\", got \"" +
                               header.fields[i] + "\"");
    }
  }
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline std::int64_t parse_integer_field(const std::string& path, std::size_t line,
                                        std::size_t column, const std::string& field,
                                        const char* what) {
  const std::string t = trim(field);
  if (t.empty()) {
    throw CsvValueError(path, line, column, std::string("empty ") + what);
  }
  std::size_t i = t.front() == '-' ? 1 : 0;
  if (i == t.size()) {
    throw CsvValueError(path, line, column, std::string(what) + " \"" + t + "\" is not an integer");
  }
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') {
      throw CsvValueError(path, line, column,
                          std::string(what) + " \"" + t + "\" is not an integer");
    }
  }
  try {
    return std::stoll(t);
  } catch (const std::exception&) {
    // fall through to the error below
  }
  throw CsvValueError(path, line, column, std::string(what) + " \"" + t + "\" is out of range");
}

inline DmsAngle parse_dms_field(const std::string& path, std::size_t line, std::size_t column,
                                const std::string& field, bool is_latitude) {
  const std::string t = trim(field);
  DmsAngle angle;
  try {
    angle = DmsAngle::parse(t);
  } catch (const Error& e) {
    throw CsvValueError(path, line, column, e.what());
  }
  const bool lat_hemisphere = angle.hemisphere == 'N' || angle.hemisphere == 'S';
  if (is_latitude && !lat_hemisphere) {
    throw CsvValueError(path, line, column,
                        "latitude \"" + t + "\" must use the N or S hemisphere");
  }
  if (!is_latitude && lat_hemisphere) {
    throw CsvValueError(path, line, column,
                        "longitude \"" + t + "\" must use the E or W hemisphere");
  }
  return angle;
}

}  // namespace detail

/// One row of the node dataset, kept raw; parsing/normalization downstream.
struct NodeRecord {
  std::string name;
  std::string latitude_dms;
  std::string longitude_dms;
  std::optional<std::int64_t> northing_m;
  std::optional<std::int64_t> easting_m;
  std::size_t row = 0;  // 1-based CSV line, for diagnostics
};

/// One row of an edge dataset.
struct EdgeRecord {
  std::string name_a;
  std::string name_b;
  std::int64_t distance_m = 0;
  std::size_t row = 0;
};

/// Variant-spelling to canonical-name mapping, both sides normalized.
/// Lookups of unknown names pass through unchanged, so resolution is total.
class AliasMap {
 public:
  AliasMap() = default;

  /// Loads `variant,canonical` rows. Conflicting duplicates and chained
  /// aliases (a canonical that is itself remapped) are rejected: both break
  /// the resolve-twice-equals-resolve-once contract.
  static AliasMap load(const std::string& path) {
    const auto rows = parse_csv_file(path);
    if (rows.empty()) {
      throw CsvSchemaError(path, 1, 1, "missing header (expected variant,canonical)");
    }
    detail::check_header(path, rows.front(), {"variant", "canonical"});

    AliasMap map;
    std::map<std::string, std::size_t> first_row;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const CsvRow& row = rows[i];
      if (row.fields.size() != 2) {
        throw CsvSchemaError(path, row.line, row.fields.size(),
                             "expected 2 columns, got " + std::to_string(row.fields.size()));
      }
      const std::string variant = normalize_name(row.fields[0]);
      const std::string canonical = normalize_name(row.fields[1]);
      if (variant.empty()) throw CsvValueError(path, row.line, 1, "empty variant name");
      if (canonical.empty()) throw CsvValueError(path, row.line, 2, "empty canonical name");
      if (const auto it = map.entries_.find(variant); it != map.entries_.end()) {
        if (it->second != canonical) {
          throw CsvValueError(path, row.line, 1,
                              "variant \"" + variant + "\" already maps to \"" + it->second +
                                  "\" (row " + std::to_string(first_row[variant]) + ")");
        }
        continue;  // exact duplicate rows are harmless
      }
      map.entries_.emplace(variant, canonical);
      first_row.emplace(variant, row.line);
    }
    for (const auto& [variant, canonical] : map.entries_) {
      const auto it = map.entries_.find(canonical);
      if (it != map.entries_.end() && it->second != canonical) {
        throw DataError("chained alias in " + path + ": \"" + variant + "\" -> \"" + canonical +
                        "\" -> \"" + it->second + "\"");
      }
    }
    return map;
  }

  /// Resolves an already-normalized name; unknown names return themselves.
  std::string resolve_normalized(const std::string& normalized) const {
    const auto it = entries_.find(normalized);
    return it == entries_.end() ? normalized : it->second;
  }

  /// Full pipeline: raw -> normalize -> alias lookup -> canonical.
  std::string resolve(std::string_view raw) const {
    return resolve_normalized(normalize_name(raw));
  }

  /// Copy keeping only the entries whose canonical target is in `keep`.
  /// Useful when planning over a subset of the node catalog: aliases aimed
  /// at out-of-scope nodes are not dataset defects there.
  AliasMap restricted_to(const std::set<std::string>& keep) const {
    AliasMap out;
    for (const auto& [variant, canonical] : entries_) {
      if (keep.count(canonical)) out.entries_.emplace(variant, canonical);
    }
    return out;
  }

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// Loads `name,latitude,longitude[,northing,easting]`. DMS columns must parse
/// and use the right hemisphere axis; the optional projected columns, when
/// non-empty, must be integers inside the UTM sanity bands.
inline std::vector<NodeRecord> load_nodes(const std::string& path) {
  const auto rows = parse_csv_file(path);
  if (rows.empty()) {
    throw CsvSchemaError(path, 1, 1,
                         "missing header (expected name,latitude,longitude[,northing,easting])");
  }
  const bool has_projected = rows.front().fields.size() == 5;
  if (has_projected) {
    detail::check_header(path, rows.front(),
                         {"name", "latitude", "longitude", "northing", "easting"});
  } else {
    detail::check_header(path, rows.front(), {"name", "latitude", "longitude"});
  }

  std::vector<NodeRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRow& row = rows[i];
    const std::size_t expected = has_projected ? 5 : 3;
    if (row.fields.size() != expected) {
      throw CsvSchemaError(path, row.line, row.fields.size(),
                           "expected " + std::to_string(expected) + " columns, got " +
                               std::to_string(row.fields.size()));
    }
    NodeRecord record;
    record.row = row.line;
    record.name = row.fields[0];
    record.latitude_dms = detail::trim(row.fields[1]);
    record.longitude_dms = detail::trim(row.fields[2]);
    detail::parse_dms_field(path, row.line, 2, record.latitude_dms, /*is_latitude=*/true);
    detail::parse_dms_field(path, row.line, 3, record.longitude_dms, /*is_latitude=*/false);

    if (has_projected) {
      if (!detail::trim(row.fields[3]).empty()) {
        const auto northing =
            detail::parse_integer_field(path, row.line, 4, row.fields[3], "northing");
        if (northing < 0 || northing > 10000000) {
          throw CsvValueError(path, row.line, 4,
                              "northing " + std::to_string(northing) +
                                  " outside the 0..10000km sanity band");
        }
        record.northing_m = northing;
      }
      if (!detail::trim(row.fields[4]).empty()) {
        const auto easting =
            detail::parse_integer_field(path, row.line, 5, row.fields[4], "easting");
        if (easting < 100000 || easting > 900000) {
          throw CsvValueError(path, row.line, 5,
                              "easting " + std::to_string(easting) +
                                  " outside the 100km..900km sanity band");
        }
        record.easting_m = easting;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

/// Loads `from,to,distance_m`. Distances must be positive integers; rows
/// whose endpoints normalize to the same name are rejected.
inline std::vector<EdgeRecord> load_edges(const std::string& path) {
  const auto rows = parse_csv_file(path);
  if (rows.empty()) {
    throw CsvSchemaError(path, 1, 1, "missing header (expected from,to,distance_m)");
  }
  detail::check_header(path, rows.front(), {"from", "to", "distance_m"});

  std::vector<EdgeRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRow& row = rows[i];
    if (row.fields.size() != 3) {
      throw CsvSchemaError(path, row.line, row.fields.size(),
                           "expected 3 columns, got " + std::to_string(row.fields.size()));
    }
    EdgeRecord record;
    record.row = row.line;
    record.name_a = row.fields[0];
    record.name_b = row.fields[1];
    record.distance_m = detail::parse_integer_field(path, row.line, 3, row.fields[2], "distance");
    if (record.distance_m <= 0) {
      throw CsvValueError(path, row.line, 3,
                          "distance " + std::to_string(record.distance_m) + " must be positive");
    }
    if (normalize_name(record.name_a) == normalize_name(record.name_b)) {
      throw CsvValueError(path, row.line, 2,
                          "edge endpoints \"" + record.name_a + "\" and \"" + record.name_b +
                              "\" normalize to the same node");
    }
    records.push_back(std::move(record));
  }
  return records;
}

inline AliasMap load_aliases(const std::string& path) { return AliasMap::load(path); }

/// Everything validate_dataset can find. Nothing here throws: callers decide
/// which findings block them (has_errors reflects the severity split below).
struct ValidationReport {
  struct UnresolvedEndpoint {
    std::string raw_name;
    std::size_t row = 0;
  };
  struct DuplicateEdge {
    std::string name_a;  // canonical, name_a < name_b
    std::string name_b;
    std::vector<std::int64_t> distances;
    std::vector<std::size_t> rows;
  };

  std::size_t node_record_count = 0;
  std::size_t edge_record_count = 0;
  std::size_t canonical_node_count = 0;

  // Error-severity findings: each one makes downstream planning unsound.
  std::vector<std::string> empty_node_name_rows;
  std::vector<std::string> duplicate_node_names;   // canonical names seen twice
  std::vector<std::string> unknown_alias_targets;  // canonical not in the node set
  std::vector<UnresolvedEndpoint> unresolved_endpoints;
  bool connected = false;
  std::vector<std::vector<std::string>> components;  // populated when disconnected

  // Warning-severity findings: planning proceeds, but the data smells.
  std::vector<DuplicateEdge> duplicate_edges;  // collapsed to min at graph build
  std::vector<std::string> isolated_nodes;

  bool has_errors() const {
    return !empty_node_name_rows.empty() || !duplicate_node_names.empty() ||
           !unknown_alias_targets.empty() || !unresolved_endpoints.empty() || !connected;
  }

  bool has_warnings() const { return !duplicate_edges.empty() || !isolated_nodes.empty(); }

  std::string render() const {
    std::ostringstream out;
    out << "dataset: " << node_record_count << " node records (" << canonical_node_count
        << " canonical), " << edge_record_count << " edge records\n";
    out << "connectivity: ";
    if (connected) {
      out << "connected\n";
    } else {
      out << "DISCONNECTED (" << components.size() << " components)\n";
      for (std::size_t i = 0; i < components.size(); ++i) {
        out << "  component " << i + 1 << ":";
        for (const auto& name : components[i]) out << " \"" << name << "\"";
        out << "\n";
      }
    }
    for (const auto& row : empty_node_name_rows) {
      out << "error: node row " << row << " has an empty name\n";
    }
    for (const auto& name : duplicate_node_names) {
      out << "error: duplicate node name \"" << name << "\"\n";
    }
    for (const auto& name : unknown_alias_targets) {
      out << "error: alias canonical \"" << name << "\" is not a node\n";
    }
    for (const auto& endpoint : unresolved_endpoints) {
      out << "error: edge row " << endpoint.row << " references unknown node \""
          << endpoint.raw_name << "\"\n";
    }
    for (const auto& dup : duplicate_edges) {
      out << "warning: duplicate edge \"" << dup.name_a << "\" -- \"" << dup.name_b
          << "\" with distances";
      for (const auto d : dup.distances) out << " " << d;
      out << " (rows";
      for (const auto r : dup.rows) out << " " << r;
      out << ")\n";
    }
    for (const auto& name : isolated_nodes) {
      out << "warning: node \"" << name << "\" has no incident edges\n";
    }
    if (!has_errors() && !has_warnings()) {
      out << "no findings\n";
    }
    return out.str();
  }
};

/// Mechanical audit of a dataset: canonical node accounting, endpoint
/// resolution through the alias map, duplicate detection, and a connectivity
/// verdict over the resolvable edges.
inline ValidationReport validate_dataset(const std::vector<NodeRecord>& nodes,
                                         const std::vector<EdgeRecord>& edges,
                                         const AliasMap& aliases = AliasMap{}) {
  ValidationReport report;
  report.node_record_count = nodes.size();
  report.edge_record_count = edges.size();

  // Canonical node set. Node names normalize only — aliases map edge-side
  // variants onto these, never the other way around.
  std::set<std::string> canonical;
  std::set<std::string> duplicates_seen;
  for (const auto& record : nodes) {
    const std::string name = normalize_name(record.name);
    if (name.empty()) {
      report.empty_node_name_rows.push_back(std::to_string(record.row));
      continue;
    }
    if (!canonical.insert(name).second && duplicates_seen.insert(name).second) {
      report.duplicate_node_names.push_back(name);
    }
  }
  report.canonical_node_count = canonical.size();

  for (const auto& [variant, target] : aliases.entries()) {
    if (!canonical.count(target)) report.unknown_alias_targets.push_back(target);
  }

  WeightedGraph graph;
  for (const auto& name : canonical) graph.add_node(name);

  std::map<std::pair<std::string, std::string>, ValidationReport::DuplicateEdge> seen_pairs;
  for (const auto& record : edges) {
    const std::string a = aliases.resolve(record.name_a);
    const std::string b = aliases.resolve(record.name_b);
    bool resolvable = true;
    if (!canonical.count(a)) {
      report.unresolved_endpoints.push_back({record.name_a, record.row});
      resolvable = false;
    }
    if (!canonical.count(b)) {
      report.unresolved_endpoints.push_back({record.name_b, record.row});
      resolvable = false;
    }
    if (!resolvable) continue;

    const auto key = std::minmax(a, b);
    auto [it, inserted] = seen_pairs.try_emplace(key);
    ValidationReport::DuplicateEdge& entry = it->second;
    if (inserted) {
      entry.name_a = key.first;
      entry.name_b = key.second;
    }
    entry.distances.push_back(record.distance_m);
    entry.rows.push_back(record.row);

    graph.add_edge(*graph.find_node(a), *graph.find_node(b),
                   static_cast<double>(record.distance_m));
  }
  for (const auto& [key, entry] : seen_pairs) {
    if (entry.distances.size() > 1) report.duplicate_edges.push_back(entry);
  }

  for (const Node& node : graph.nodes()) {
    if (graph.incident_edges(node.id).empty()) {
      report.isolated_nodes.push_back(node.name);
    }
  }

  const auto components = connected_components(graph);
  report.connected = components.size() <= 1;
  if (!report.connected) {
    report.components = detail::component_names(graph, components);
  }
  return report;
}

}  // namespace netplan
