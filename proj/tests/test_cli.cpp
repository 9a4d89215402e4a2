#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "netplan/csv.hpp"
#include "support/helpers.hpp"

using Catch::Matchers::ContainsSubstring;
using support::data_path;
using support::run_cli;

namespace {

std::string fixture_args() {
  return data_path("academicnet_nodes.csv") + " " + data_path("academicnet_edges.csv") +
         " --aliases " + data_path("aliases.csv");
}

}  // namespace

TEST_CASE("cli: no subcommand is an error") {
  REQUIRE(run_cli("").exit_code != 0);
}

TEST_CASE("cli: convert projects the catalog and mirrors its columns") {
  support::TempPath out(".csv");
  const auto result = run_cli("convert " + data_path("academicnet_nodes.csv") + " " + out.path());
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("converted 29 nodes -> " + out.path()));

  const auto rows = netplan::parse_csv_text(support::read_file(out.path()), out.path());
  REQUIRE(rows.size() == 30);
  REQUIRE(rows[0].fields ==
          std::vector<std::string>{"name", "latitude", "longitude", "northing", "easting", "zone",
                                   "hemisphere", "easting", "northing"});
  const auto& first = rows[1].fields;
  REQUIRE(first[0] == "Ishek university");
  REQUIRE(first[5] == "38");
  REQUIRE(first[6] == "N");
  // The appended projection lands within survey-rounding reach of the
  // catalog's own stored grid values.
  REQUIRE(std::abs(std::stod(first[7]) - std::stod(first[4])) <= 2.0);
  REQUIRE(std::abs(std::stod(first[8]) - std::stod(first[3])) <= 2.0);
}

TEST_CASE("cli: convert writes csv to stdout when asked") {
  const auto result = run_cli("convert " + data_path("academicnet_nodes.csv") + " -");
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.out.rfind("name,latitude,longitude,northing,easting,zone,hemisphere", 0) == 0);
}

TEST_CASE("cli: convert handles header-only input and reports bad rows") {
  SECTION("header only") {
    support::TempFile in("name,latitude,longitude\n");
    support::TempPath out(".csv");
    const auto result = run_cli("convert " + in.path() + " " + out.path());
    REQUIRE(result.exit_code == 0);
    REQUIRE(support::read_file(out.path()) ==
            "name,latitude,longitude,zone,hemisphere,easting,northing\n");
  }
  SECTION("malformed DMS names the line") {
    support::TempFile in(
        "name,latitude,longitude\n"
        "good,N36:00:00.00,E44:00:00.00\n"
        "bad,N36:99:00.00,E44:00:00.00\n");
    support::TempPath out(".csv");
    const auto result = run_cli("convert " + in.path() + " " + out.path());
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.err, ContainsSubstring("error:"));
    REQUIRE_THAT(result.err, ContainsSubstring(":3"));
  }
  SECTION("--json emits the conversions") {
    const auto result = run_cli("convert " + data_path("academicnet_nodes.csv") + " - --json");
    REQUIRE(result.exit_code == 0);
    const auto tail = result.out.find("{");
    const auto doc = nlohmann::json::parse(result.out.substr(tail));
    REQUIRE(doc["converted"] == 29);
    REQUIRE(doc["rows"].size() == 29);
    REQUIRE(doc["rows"][0]["zone"] == 38);
  }
}

TEST_CASE("cli: plan reproduces the full-network figures") {
  const auto result = run_cli("plan " + fixture_args());
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("nodes: 29"));
  REQUIRE_THAT(result.out, ContainsSubstring("tree edges: 28"));
  REQUIRE_THAT(result.out, ContainsSubstring("total media: 52995 m"));
  REQUIRE_THAT(result.out, ContainsSubstring("regenerators (span 40000 m): 0"));
  // The known doubled link surfaces as a warning, not a failure.
  REQUIRE_THAT(result.err, ContainsSubstring("warning: duplicate edge"));
}

TEST_CASE("cli: plan --json emits the machine-readable document") {
  const auto result = run_cli("plan " + fixture_args() + " --json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.out);
  REQUIRE(doc["total_media_m"] == 52995.0);
  REQUIRE(doc["tree"]["root"] == "ishek university");
  REQUIRE(doc["tree"]["edges"].size() == 28);
  REQUIRE(doc["config"]["edge_source"] == "provided");
}

TEST_CASE("cli: plan narrows to the nodes a sparse edge set references") {
  const auto result = run_cli("plan " + data_path("academicnet_nodes.csv") + " " +
                              data_path("table5_second.csv") + " --aliases " +
                              data_path("aliases.csv"));
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.err,
               ContainsSubstring("planning over 7 of 29 catalog nodes"));
  REQUIRE_THAT(result.out, ContainsSubstring("nodes: 7"));
  REQUIRE_THAT(result.out, ContainsSubstring("total media: 22120 m"));
}

TEST_CASE("cli: plan writes the requested artifacts") {
  support::TempPath plan_json(".json");
  support::TempPath geojson(".geojson");
  support::TempPath dot(".dot");
  const auto result = run_cli("plan " + fixture_args() + " --out " + plan_json.path() +
                              " --geojson " + geojson.path() + " --dot " + dot.path());
  REQUIRE(result.exit_code == 0);

  const auto plan_doc = nlohmann::json::parse(support::read_file(plan_json.path()));
  REQUIRE(plan_doc["total_media_m"] == 52995.0);

  const auto geo_doc = nlohmann::json::parse(support::read_file(geojson.path()));
  REQUIRE(geo_doc["type"] == "FeatureCollection");
  REQUIRE(geo_doc["features"].size() == 57);

  const std::string dot_text = support::read_file(dot.path());
  REQUIRE(dot_text.rfind("graph", 0) == 0);
  std::size_t edges = 0;
  for (std::size_t pos = dot_text.find(" -- "); pos != std::string::npos;
       pos = dot_text.find(" -- ", pos + 4)) {
    ++edges;
  }
  REQUIRE(edges == 28);
}

TEST_CASE("cli: plan applies start, span threshold and cost options") {
  const auto result = run_cli("plan " + fixture_args() +
                              " --start MOHE --regenerator-span-m 5000 --cost-per-meter 2");
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("total media: 52995 m"));
  REQUIRE_THAT(result.out, ContainsSubstring("regenerators (span 5000 m): 2"));
  REQUIRE_THAT(result.out, ContainsSubstring("cost: 105990"));
}

TEST_CASE("cli: plan in hybrid mode reports its chord fill-ins") {
  const auto result = run_cli("plan " + data_path("academicnet_nodes.csv") + " " +
                              data_path("table5_second.csv") + " --aliases " +
                              data_path("aliases.csv") + " --edge-source hybrid");
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("nodes: 29"));
  REQUIRE_THAT(result.out, ContainsSubstring("total media: 19690 m"));
  REQUIRE_THAT(result.out, ContainsSubstring("straight-line fill-ins in tree: 27"));
}

TEST_CASE("cli: plan rejects what it cannot plan") {
  SECTION("unknown endpoint blocks with a report") {
    support::TempFile edges("from,to,distance_m\nMOHE,Atlantis,100\n");
    const auto result =
        run_cli("plan " + data_path("academicnet_nodes.csv") + " " + edges.path());
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.err, ContainsSubstring("unknown node \"Atlantis\""));
  }
  SECTION("bogus edge source") {
    const auto result = run_cli("plan " + fixture_args() + " --edge-source psychic");
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.err, ContainsSubstring("unknown edge source"));
  }
  SECTION("provided mode without an edge file") {
    const auto result = run_cli("plan " + data_path("academicnet_nodes.csv"));
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.err, ContainsSubstring("needs a provided edge set"));
  }
}

TEST_CASE("cli: compare renders the published side-by-side figures") {
  const auto result =
      run_cli("compare --media-a 57125 --media-b 11465 --label-a routed --label-b chords");
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("45660"));
  REQUIRE_THAT(result.out, ContainsSubstring("4.98"));
  REQUIRE_THAT(result.out, ContainsSubstring("20.1%"));

  const auto json_result =
      run_cli("compare --media-a 57125 --media-b 11465 --json");
  REQUIRE(json_result.exit_code == 0);
  const auto doc = nlohmann::json::parse(json_result.out);
  REQUIRE(doc["delta_m"] == 45660.0);
  REQUIRE(doc["a"]["media_m"] == 57125.0);
  REQUIRE(doc["a"]["nodes"].is_null());
}

TEST_CASE("cli: compare accepts plan files and validates its inputs") {
  SECTION("two identical plan files") {
    support::TempPath plan_json(".json");
    REQUIRE(run_cli("plan " + fixture_args() + " --out " + plan_json.path()).exit_code == 0);
    const auto result = run_cli("compare --plan-a " + plan_json.path() + " --plan-b " +
                                plan_json.path() + " --json");
    REQUIRE(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    REQUIRE(doc["ratio"] == 1.0);
    REQUIRE(doc["delta_m"] == 0.0);
    REQUIRE(doc["a"]["nodes"] == 29);
    REQUIRE(doc["a"]["edges"] == 28);
  }
  SECTION("zero media") {
    const auto result = run_cli("compare --media-a 57125 --media-b 0");
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.err, ContainsSubstring("positive media totals"));
  }
  SECTION("a side needs exactly one source") {
    const auto result = run_cli("compare --media-a 5 --plan-a x.json --media-b 7");
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.err, ContainsSubstring("exactly one"));
  }
  SECTION("missing plan file") {
    const auto result = run_cli("compare --plan-a /nonexistent.json --media-b 7");
    REQUIRE(result.exit_code == 1);
  }
}

TEST_CASE("cli: sensitivity diffs the two bundled determinations") {
  const std::string args = data_path("academicnet_nodes.csv") + " " +
                           data_path("table5_first.csv") + " " + data_path("table5_second.csv") +
                           " --aliases " + data_path("aliases.csv");
  const auto result = run_cli("sensitivity " + args);
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("first total: 22180 m (6 edges)"));
  REQUIRE_THAT(result.out, ContainsSubstring("second total: 22120 m (6 edges)"));
  REQUIRE_THAT(result.out, ContainsSubstring("total delta (first - second): 60 m"));
  REQUIRE_THAT(result.out, ContainsSubstring("TOPOLOGY CHANGED"));

  const auto json_result = run_cli("sensitivity " + args + " --json");
  REQUIRE(json_result.exit_code == 0);
  const auto doc = nlohmann::json::parse(json_result.out);
  REQUIRE(doc["delta_m"] == 60.0);
  REQUIRE(doc["shared_edges"] == 5);
  REQUIRE(doc["topology_changed"] == true);
  REQUIRE(doc["only_in_first"].size() == 1);
  REQUIRE(doc["only_in_first"][0][0] == "hawler computer institute");
  REQUIRE(doc["only_in_first"][0][1] == "teaching collage");
  REQUIRE(doc["only_in_second"][0][1] == "science collage");
}

TEST_CASE("cli: sensitivity with identical inputs reports no change") {
  const auto result = run_cli("sensitivity " + data_path("academicnet_nodes.csv") + " " +
                              data_path("table5_second.csv") + " " +
                              data_path("table5_second.csv") + " --aliases " +
                              data_path("aliases.csv"));
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("total delta (first - second): 0 m"));
  REQUIRE_THAT(result.out, ContainsSubstring("TOPOLOGY UNCHANGED"));
}

TEST_CASE("cli: sensitivity refuses determinations over different nodes") {
  support::TempFile edges_b(
      "from,to,distance_m\n"
      "Hawler Computer Institute,Science Collage,6100\n"
      "Science Collage,MOHE,1000\n");
  const auto result = run_cli("sensitivity " + data_path("academicnet_nodes.csv") + " " +
                              data_path("table5_second.csv") + " " + edges_b.path() +
                              " --aliases " + data_path("aliases.csv"));
  REQUIRE(result.exit_code == 1);
  REQUIRE_THAT(result.err, ContainsSubstring("different node sets"));
}

TEST_CASE("cli: validate audits the bundled dataset") {
  const auto result = run_cli("validate " + fixture_args());
  REQUIRE(result.exit_code == 0);
  REQUIRE_THAT(result.out, ContainsSubstring("29 node records (29 canonical), 51 edge records"));
  REQUIRE_THAT(result.out, ContainsSubstring("connectivity: connected"));
  REQUIRE_THAT(result.out, ContainsSubstring("warning: duplicate edge"));

  const auto json_result = run_cli("validate " + fixture_args() + " --json");
  REQUIRE(json_result.exit_code == 0);
  const auto doc = nlohmann::json::parse(json_result.out);
  REQUIRE(doc["ok"] == true);
  REQUIRE(doc["canonical_nodes"] == 29);
  REQUIRE(doc["connected"] == true);
  REQUIRE(doc["warnings"]["duplicate_edges"].size() == 1);
}

TEST_CASE("cli: validate fails on unresolved or disconnected data") {
  SECTION("unknown endpoint") {
    support::TempFile edges("from,to,distance_m\nMOHE,Nowhere,10\n");
    const auto result =
        run_cli("validate " + data_path("academicnet_nodes.csv") + " " + edges.path());
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.out, ContainsSubstring("unknown node \"Nowhere\""));
  }
  SECTION("disconnected dataset") {
    support::TempFile nodes(
        "name,latitude,longitude\n"
        "alpha,N36:00:00.00,E44:00:00.00\n"
        "beta,N36:01:00.00,E44:01:00.00\n"
        "gamma,N36:02:00.00,E44:02:00.00\n");
    support::TempFile edges("from,to,distance_m\nalpha,beta,10\n");
    const auto result = run_cli("validate " + nodes.path() + " " + edges.path());
    REQUIRE(result.exit_code == 1);
    REQUIRE_THAT(result.out, ContainsSubstring("DISCONNECTED (2 components)"));
    REQUIRE_THAT(result.out, ContainsSubstring("\"gamma\""));
  }
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  const std::string args = "plan " + fixture_args() + " --json";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.exit_code == 0);
  REQUIRE(first.out == second.out);

  support::TempPath geo_a(".geojson");
  support::TempPath geo_b(".geojson");
  REQUIRE(run_cli("plan " + fixture_args() + " --geojson " + geo_a.path()).exit_code == 0);
  REQUIRE(run_cli("plan " + fixture_args() + " --geojson " + geo_b.path()).exit_code == 0);
  const std::string bytes = support::read_file(geo_a.path());
  REQUIRE_FALSE(bytes.empty());
  REQUIRE(bytes == support::read_file(geo_b.path()));
}
