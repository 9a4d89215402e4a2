// netplan: plan fiber topologies over surveyed or straight-line distances.
//
// Subcommands: convert (DMS -> UTM), plan (MST topology + exports),
// compare (two media totals side by side), sensitivity (two distance
// determinations of the same collection), validate (dataset audit).
// Diagnostics go to stderr, results to stdout; exit 0 means no
// error-severity diagnostic was emitted.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netplan/csv.hpp"
#include "netplan/errors.hpp"
#include "netplan/export.hpp"
#include "netplan/geodesy.hpp"
#include "netplan/ingest.hpp"
#include "netplan/planner.hpp"

namespace {

using nlohmann::ordered_json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw netplan::IoError("cannot write " + path);
  }
  out << content;
}

// ---------------------------------------------------------------- convert

struct ConvertOptions {
  std::string nodes_csv;
  std::string out_csv;
  bool json = false;
};

int cmd_convert(const ConvertOptions& opt) {
  const auto records = netplan::load_nodes(opt.nodes_csv);

  // Mirror the input columns and append the projection. The appended
  // easting/northing are rounded to integer meters; the input's own
  // optional northing/easting columns pass through untouched. The input
  // header decides the mirrored shape (it matters for header-only files).
  const auto raw_rows = netplan::parse_csv_file(opt.nodes_csv);
  const bool has_projected_columns = !raw_rows.empty() && raw_rows.front().fields.size() == 5;

  std::ostringstream csv;
  csv << "name,latitude,longitude";
  if (has_projected_columns) csv << ",northing,easting";
  csv << ",zone,hemisphere,easting,northing\n";

  ordered_json rows = ordered_json::array();
  for (const auto& record : records) {
    const netplan::GeoCoordinate geo(netplan::parse_dms(record.latitude_dms),
                                     netplan::parse_dms(record.longitude_dms));
    const netplan::UtmCoordinate utm = netplan::to_utm(geo);
    const long long easting = std::llround(utm.easting_m);
    const long long northing = std::llround(utm.northing_m);

    csv << netplan::csv_quote(record.name) << "," << record.latitude_dms << ","
        << record.longitude_dms;
    if (has_projected_columns) {
      csv << "," << (record.northing_m ? std::to_string(*record.northing_m) : "") << ","
          << (record.easting_m ? std::to_string(*record.easting_m) : "");
    }
    csv << "," << utm.zone << "," << netplan::hemisphere_letter(utm.hemisphere) << "," << easting
        << "," << northing << "\n";

    rows.push_back({
        {"name", record.name},
        {"zone", utm.zone},
        {"hemisphere", std::string(1, netplan::hemisphere_letter(utm.hemisphere))},
        {"easting_m", easting},
        {"northing_m", northing},
    });
  }

  if (opt.out_csv == "-") {
    std::cout << csv.str();
  } else {
    write_file(opt.out_csv, csv.str());
  }

  if (opt.json) {
    ordered_json doc;
    doc["converted"] = records.size();
    doc["output"] = opt.out_csv;
    doc["rows"] = std::move(rows);
    std::cout << doc.dump(2) << "\n";
  } else if (opt.out_csv != "-") {
    std::cout << "converted " << records.size() << " nodes -> " << opt.out_csv << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- plan

struct PlanOptions {
  std::string nodes_csv;
  std::string edges_csv;  // empty = none
  std::string aliases_csv;
  std::string edge_source = "provided";
  std::string start;
  double regenerator_span_m = 40000.0;
  double cost_per_meter = 0.0;
  bool has_cost = false;
  std::string out_json;
  std::string out_geojson;
  std::string out_dot;
  bool json = false;
};

ordered_json validation_to_json(const netplan::ValidationReport& report) {
  ordered_json doc;
  doc["node_records"] = report.node_record_count;
  doc["edge_records"] = report.edge_record_count;
  doc["canonical_nodes"] = report.canonical_node_count;
  doc["connected"] = report.connected;

  ordered_json errors;
  errors["empty_node_name_rows"] = report.empty_node_name_rows;
  errors["duplicate_node_names"] = report.duplicate_node_names;
  errors["unknown_alias_targets"] = report.unknown_alias_targets;
  errors["unresolved_endpoints"] = ordered_json::array();
  for (const auto& endpoint : report.unresolved_endpoints) {
    errors["unresolved_endpoints"].push_back(
        {{"name", endpoint.raw_name}, {"row", endpoint.row}});
  }
  errors["components"] = report.components;
  doc["errors"] = std::move(errors);

  ordered_json warnings;
  warnings["duplicate_edges"] = ordered_json::array();
  for (const auto& dup : report.duplicate_edges) {
    warnings["duplicate_edges"].push_back({{"a", dup.name_a},
                                           {"b", dup.name_b},
                                           {"distances", dup.distances},
                                           {"rows", dup.rows}});
  }
  warnings["isolated_nodes"] = report.isolated_nodes;
  doc["warnings"] = std::move(warnings);

  doc["ok"] = !report.has_errors();
  return doc;
}

int cmd_plan(const PlanOptions& opt) {
  auto node_records = netplan::load_nodes(opt.nodes_csv);
  const netplan::AliasMap aliases =
      opt.aliases_csv.empty() ? netplan::AliasMap{} : netplan::load_aliases(opt.aliases_csv);

  netplan::PlanConfig config;
  config.edge_source = netplan::parse_edge_source(opt.edge_source);
  config.regenerator_span_m = opt.regenerator_span_m;
  if (opt.has_cost) config.cost_per_meter = opt.cost_per_meter;
  if (!opt.start.empty()) config.start_node = aliases.resolve(opt.start);

  std::optional<std::vector<netplan::EdgeRecord>> edge_records;
  std::optional<std::vector<netplan::PlanEdgeInput>> edges;
  if (!opt.edges_csv.empty()) {
    edge_records = netplan::load_edges(opt.edges_csv);
    edges = netplan::plan_edges_from_records(*edge_records, aliases);
  }

  auto catalog = netplan::plan_nodes_from_records(node_records);

  // In provided mode the edge file decides which catalog nodes take part:
  // planning a 7-node determination against the full catalog must not fail
  // for the 22 nodes the file never mentions.
  std::vector<netplan::PlanNode> nodes = catalog;
  std::vector<netplan::NodeRecord> records_in_scope = node_records;
  netplan::AliasMap aliases_in_scope = aliases;
  if (config.edge_source == netplan::EdgeSource::Provided && edges) {
    std::set<std::string> referenced;
    for (const auto& e : *edges) {
      referenced.insert(e.name_a);
      referenced.insert(e.name_b);
    }
    std::vector<netplan::PlanNode> subset;
    std::vector<netplan::NodeRecord> record_subset;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      if (referenced.count(catalog[i].name)) {
        subset.push_back(catalog[i]);
        record_subset.push_back(node_records[i]);
      }
    }
    if (!subset.empty() && subset.size() < catalog.size()) {
      std::cerr << "note: planning over " << subset.size() << " of " << catalog.size()
                << " catalog nodes referenced by the edge set\n";
      nodes = std::move(subset);
      records_in_scope = std::move(record_subset);
      aliases_in_scope = aliases.restricted_to(referenced);
    }
  }

  if (edge_records) {
    const auto report =
        netplan::validate_dataset(records_in_scope, *edge_records, aliases_in_scope);
    // Hybrid mode fills gaps with chords, so a sparse provided set is fine
    // there; everything else in the error class still blocks.
    const bool blocking = config.edge_source == netplan::EdgeSource::Hybrid
                              ? (!report.empty_node_name_rows.empty() ||
                                 !report.duplicate_node_names.empty() ||
                                 !report.unknown_alias_targets.empty() ||
                                 !report.unresolved_endpoints.empty())
                              : report.has_errors();
    if (blocking || report.has_warnings()) {
      std::cerr << report.render();
    }
    if (blocking) {
      return 1;
    }
  }

  const netplan::TopologyPlan plan = netplan::propose_topology(nodes, edges, config);
  const ordered_json doc = netplan::plan_to_json(plan, config);

  if (!opt.out_json.empty()) write_file(opt.out_json, doc.dump(2) + "\n");
  if (!opt.out_geojson.empty()) write_file(opt.out_geojson, netplan::to_geojson(plan));
  if (!opt.out_dot.empty()) write_file(opt.out_dot, netplan::to_dot(plan.tree));

  if (opt.json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "nodes: " << plan.nodes.size() << "\n";
    std::cout << "tree edges: " << plan.per_edge.size() << "\n";
    std::cout << "total media: " << std::llround(plan.total_media_m) << " m\n";
    std::cout << "regenerators (span " << std::llround(plan.equipment.span_threshold_m)
              << " m): " << plan.equipment.regenerator_count << "\n";
    if (config.cost_per_meter) {
      std::cout << "cost: " << *config.cost_per_meter * plan.total_media_m << "\n";
    }
    if (plan.edge_source == netplan::EdgeSource::Hybrid) {
      std::cout << "straight-line fill-ins in tree: " << plan.straight_line_fill_ins << "\n";
    }
  }
  return 0;
}

// ----------------------------------------------------------------- compare

struct CompareOptions {
  double media_a = 0.0;
  double media_b = 0.0;
  bool has_media_a = false;
  bool has_media_b = false;
  std::string plan_a;
  std::string plan_b;
  std::string label_a;
  std::string label_b;
  bool json = false;
};

netplan::ComparisonSide side_from_plan_file(const std::string& path, std::string label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw netplan::IoError("cannot open " + path);
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
    netplan::ComparisonSide side;
    side.label = label.empty() ? std::filesystem::path(path).stem().string() : std::move(label);
    side.media_m = doc.at("total_media_m").get<double>();
    side.node_count = doc.at("nodes").size();
    side.edge_count = doc.at("tree").at("edges").size();
    return side;
  } catch (const ordered_json::exception& e) {
    throw netplan::DataError("plan file " + path + ": " + e.what());
  }
}

int cmd_compare(const CompareOptions& opt) {
  const auto make_side = [&](bool has_media, double media, const std::string& plan,
                             const std::string& label,
                             const char* which) -> netplan::ComparisonSide {
    if (has_media == !plan.empty()) {
      throw netplan::ArgumentError(std::string("side ") + which +
                                   " needs exactly one of --media-" + which + " or --plan-" +
                                   which);
    }
    if (has_media) {
      return netplan::ComparisonSide{label.empty() ? which : label, media, std::nullopt,
                                     std::nullopt};
    }
    return side_from_plan_file(plan, label);
  };

  const auto report = netplan::comparison_report(
      make_side(opt.has_media_a, opt.media_a, opt.plan_a, opt.label_a, "a"),
      make_side(opt.has_media_b, opt.media_b, opt.plan_b, opt.label_b, "b"));

  if (opt.json) {
    const auto side_json = [](const netplan::ComparisonSide& side) {
      ordered_json out;
      out["label"] = side.label;
      out["media_m"] = side.media_m;
      out["nodes"] = side.node_count ? ordered_json(*side.node_count) : ordered_json(nullptr);
      out["edges"] = side.edge_count ? ordered_json(*side.edge_count) : ordered_json(nullptr);
      return out;
    };
    ordered_json doc;
    doc["a"] = side_json(report.a);
    doc["b"] = side_json(report.b);
    doc["delta_m"] = report.media_delta_m;
    doc["ratio"] = report.media_ratio;
    doc["percent_of_larger"] = report.percent_of_larger;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << report.render();
  }
  return 0;
}

// -------------------------------------------------------------- sensitivity

struct SensitivityOptions {
  std::string nodes_csv;
  std::string edges_a_csv;
  std::string edges_b_csv;
  std::string aliases_csv;
  std::string start;
  bool json = false;
};

int cmd_sensitivity(const SensitivityOptions& opt) {
  const auto node_records = netplan::load_nodes(opt.nodes_csv);
  const netplan::AliasMap aliases =
      opt.aliases_csv.empty() ? netplan::AliasMap{} : netplan::load_aliases(opt.aliases_csv);
  const auto catalog = netplan::plan_nodes_from_records(node_records);
  const auto edges_a =
      netplan::plan_edges_from_records(netplan::load_edges(opt.edges_a_csv), aliases);
  const auto edges_b =
      netplan::plan_edges_from_records(netplan::load_edges(opt.edges_b_csv), aliases);

  netplan::PlanConfig config;
  if (!opt.start.empty()) config.start_node = aliases.resolve(opt.start);

  const auto report = netplan::sensitivity_compare(catalog, edges_a, edges_b, config);

  if (opt.json) {
    const auto pairs_json = [](const std::vector<std::pair<std::string, std::string>>& pairs) {
      ordered_json out = ordered_json::array();
      for (const auto& [x, y] : pairs) out.push_back({x, y});
      return out;
    };
    ordered_json doc;
    doc["first"] = {{"total_media_m", report.plan_a.total_media_m},
                    {"edges", report.plan_a.per_edge.size()}};
    doc["second"] = {{"total_media_m", report.plan_b.total_media_m},
                     {"edges", report.plan_b.per_edge.size()}};
    doc["delta_m"] = report.diff.weight_delta_m;
    doc["only_in_first"] = pairs_json(report.diff.only_in_a);
    doc["only_in_second"] = pairs_json(report.diff.only_in_b);
    doc["shared_edges"] = report.diff.shared_count;
    doc["topology_changed"] = report.topology_changed;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << report.render("first", "second");
  }
  return 0;
}

// ----------------------------------------------------------------- validate

struct ValidateOptions {
  std::string nodes_csv;
  std::string edges_csv;
  std::string aliases_csv;
  bool json = false;
};

int cmd_validate(const ValidateOptions& opt) {
  const auto nodes = netplan::load_nodes(opt.nodes_csv);
  const auto edges = netplan::load_edges(opt.edges_csv);
  const netplan::AliasMap aliases =
      opt.aliases_csv.empty() ? netplan::AliasMap{} : netplan::load_aliases(opt.aliases_csv);

  const auto report = netplan::validate_dataset(nodes, edges, aliases);
  if (opt.json) {
    std::cout << validation_to_json(report).dump(2) << "\n";
  } else {
    std::cout << report.render();
  }
  return report.has_errors() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geospatial network-topology planner"};
  app.require_subcommand(1);

  ConvertOptions convert_opt;
  auto* convert = app.add_subcommand("convert", "project DMS node coordinates to UTM");
  convert->add_option("nodes", convert_opt.nodes_csv, "node CSV (name,latitude,longitude[,...])")
      ->required();
  convert->add_option("out", convert_opt.out_csv, "output CSV path, or - for stdout")->required();
  convert->add_flag("--json", convert_opt.json, "print the conversions as JSON");

  PlanOptions plan_opt;
  auto* plan = app.add_subcommand("plan", "propose a minimum-media topology");
  plan->add_option("nodes", plan_opt.nodes_csv, "node CSV")->required();
  plan->add_option("edges", plan_opt.edges_csv, "edge CSV (from,to,distance_m)");
  plan->add_option("--aliases", plan_opt.aliases_csv, "alias CSV (variant,canonical)");
  plan->add_option("--edge-source", plan_opt.edge_source,
                   "provided|straight-line|hybrid (default provided)");
  plan->add_option("--start", plan_opt.start, "root node name (default: first node)");
  plan->add_option("--regenerator-span-m", plan_opt.regenerator_span_m,
                   "span threshold for the equipment estimate (default 40000)");
  plan->add_option("--cost-per-meter", plan_opt.cost_per_meter, "optional media cost per meter");
  plan->add_option("--out", plan_opt.out_json, "write the plan JSON here");
  plan->add_option("--geojson", plan_opt.out_geojson, "write a GeoJSON FeatureCollection here");
  plan->add_option("--dot", plan_opt.out_dot, "write an undirected DOT graph here");
  plan->add_flag("--json", plan_opt.json, "print the plan JSON instead of the summary");

  CompareOptions compare_opt;
  auto* compare = app.add_subcommand("compare", "compare two media totals");
  compare->add_option("--media-a", compare_opt.media_a, "total media of side a, meters");
  compare->add_option("--media-b", compare_opt.media_b, "total media of side b, meters");
  compare->add_option("--plan-a", compare_opt.plan_a, "plan JSON for side a");
  compare->add_option("--plan-b", compare_opt.plan_b, "plan JSON for side b");
  compare->add_option("--label-a", compare_opt.label_a, "display label for side a");
  compare->add_option("--label-b", compare_opt.label_b, "display label for side b");
  compare->add_flag("--json", compare_opt.json, "print the comparison as JSON");

  SensitivityOptions sensitivity_opt;
  auto* sensitivity =
      app.add_subcommand("sensitivity", "diff the topologies of two distance determinations");
  sensitivity->add_option("nodes", sensitivity_opt.nodes_csv, "node CSV")->required();
  sensitivity->add_option("edges_a", sensitivity_opt.edges_a_csv, "first edge CSV")->required();
  sensitivity->add_option("edges_b", sensitivity_opt.edges_b_csv, "second edge CSV")->required();
  sensitivity->add_option("--aliases", sensitivity_opt.aliases_csv, "alias CSV");
  sensitivity->add_option("--start", sensitivity_opt.start, "root node name");
  sensitivity->add_flag("--json", sensitivity_opt.json, "print the report as JSON");

  ValidateOptions validate_opt;
  auto* validate = app.add_subcommand("validate", "audit a node/edge/alias dataset");
  validate->add_option("nodes", validate_opt.nodes_csv, "node CSV")->required();
  validate->add_option("edges", validate_opt.edges_csv, "edge CSV")->required();
  validate->add_option("--aliases", validate_opt.aliases_csv, "alias CSV");
  validate->add_flag("--json", validate_opt.json, "print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  plan_opt.has_cost = plan->count("--cost-per-meter") > 0;
  compare_opt.has_media_a = compare->count("--media-a") > 0;
  compare_opt.has_media_b = compare->count("--media-b") > 0;

  try {
    if (*convert) return cmd_convert(convert_opt);
    if (*plan) return cmd_plan(plan_opt);
    if (*compare) return cmd_compare(compare_opt);
    if (*sensitivity) return cmd_sensitivity(sensitivity_opt);
    if (*validate) return cmd_validate(validate_opt);
  } catch (const netplan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
