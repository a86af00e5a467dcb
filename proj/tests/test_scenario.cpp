#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "orbigeo/scenario.hpp"

using namespace orbigeo;
namespace fs = std::filesystem;

#ifndef ORBIGEO_SCENARIO_DIR
#error "ORBIGEO_SCENARIO_DIR must point at the scenario catalog"
#endif

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load(const std::string& name) {
  return parse_scenario_file(fs::path(ORBIGEO_SCENARIO_DIR) / name);
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("orbigeo_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string minimal_torus(const std::string& mutate_from = "",
                          const std::string& mutate_to = "") {
  std::string text = R"({
    "name": "t",
    "space": {"kind": "euclidean", "dim": 2},
    "group": {"family": "lattice", "basis": [[1, 0], [0, 1]]},
    "closure": {"word": [1]},
    "initial_curve": {"auto": {"base": [0, 0]}}
  })";
  if (!mutate_from.empty()) {
    auto pos = text.find(mutate_from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, mutate_from.size(), mutate_to);
  }
  return text;
}

} // namespace

TEST_CASE("the full scenario catalog parses") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(ORBIGEO_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().filename().string());
    Scenario s = parse_scenario_file(entry.path());
    CHECK_FALSE(s.name.empty());
    ++count;
  }
  CHECK(count >= 12);
}

TEST_CASE("schema errors carry field paths") {
  auto path_of = [](const std::string& text) {
    try {
      (void)parse_scenario_json(text);
    } catch (const schema_error& e) {
      return e.field_path;
    }
    return std::string("(no error)");
  };

  CHECK(path_of("{") == "$");                       // invalid JSON
  CHECK(path_of(R"({"space": {}})") == "$.name");   // missing name
  CHECK(path_of(minimal_torus("euclidean", "klein")) == "$.space.kind");
  CHECK(path_of(minimal_torus("lattice", "grid")) == "$.group.family");
  CHECK(path_of(minimal_torus(R"("word": [1])", R"("word": [])")) ==
        "$.closure.word");
  CHECK(path_of(minimal_torus(R"("basis": [[1, 0], [0, 1]])",
                              R"("basis": [[1, 0]])")) == "$.group.basis");
  // out-of-range generator index
  CHECK(path_of(minimal_torus(R"("word": [1])", R"("word": [7])")) ==
        "$.closure.word");
  // an explicit curve needs at least one segment
  CHECK(path_of(minimal_torus(
            R"("initial_curve": {"auto": {"base": [0, 0]}})",
            R"("initial_curve": {"nodes": [[0, 0]]})")) ==
        "$.initial_curve");
}

TEST_CASE("non-closing explicit curves exit 2 at run time") {
  Scenario s = parse_scenario_json(minimal_torus(
      R"("initial_curve": {"auto": {"base": [0, 0]}})",
      R"("initial_curve": {"nodes": [[0, 0], [0.5, 0.5]]})"));
  RunProducts P = run_scenario(s);
  CHECK(P.exit_code == 2);
  CHECK_FALSE(P.note.empty());
}

TEST_CASE("non-closing explicit curves and bad dimensions are rejected") {
  CHECK_THROWS_AS(
      (void)parse_scenario_json(minimal_torus(R"("base": [0, 0])",
                                              R"("base": [0, 0, 0])")),
      schema_error);
}

TEST_CASE("run products: torus line") {
  RunProducts P = run_scenario(load("torus_line.json"));
  CHECK(P.exit_code == 0);
  CHECK_FALSE(P.foliation);
  CHECK(P.result.status == RunStatus::NontrivialGeodesic);
  CHECK(P.result.length == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(P.oracle_value.has_value());
  CHECK(*P.oracle_value == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(P.oracle_delta.has_value());
  CHECK(*P.oracle_delta <= 1e-8);
  CHECK(P.resolved.segment_count == 8);
}

TEST_CASE("run products: expected trivial point exits 0") {
  RunProducts P = run_scenario(load("rotation_trivial.json"));
  CHECK(P.exit_code == 0);
  CHECK(P.result.status == RunStatus::TrivialPoint);
}

TEST_CASE("unexpected outcome exits 1") {
  Scenario s = parse_scenario_json(minimal_torus());
  s.expect_status = RunStatus::TrivialPoint; // translation cannot collapse
  RunProducts P = run_scenario(s);
  CHECK(P.exit_code == 1);
  CHECK(P.note.find("expected") != std::string::npos);
}

TEST_CASE("max_iter exhaustion exits 1") {
  Scenario s = load("screw.json");
  s.config.max_iter = 3; // far too few for the screw scene
  s.expect_status.reset();
  RunProducts P = run_scenario(s);
  CHECK(P.result.status == RunStatus::MaxIterReached);
  CHECK(P.exit_code == 1);
}

TEST_CASE("reports, traces and artifacts are byte-stable") {
  for (const char* name : {"torus_zigzag.json", "foliation_torus_11.json"}) {
    CAPTURE(name);
    Scenario s = load(name);
    RunProducts a = run_scenario(s);
    RunProducts b = run_scenario(s);
    CHECK(report_json(a) == report_json(b));
    CHECK(trace_csv(a.result) == trace_csv(b.result));
    CHECK(artifacts_json(a) == artifacts_json(b));
    CHECK(a.exit_code == 0);
  }
}

TEST_CASE("write_run_artifacts produces the three documents") {
  fs::path dir = fresh_dir("artifacts");
  RunProducts P = run_scenario(load("torus_line.json"));
  write_run_artifacts(P, dir);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "artifacts.json"));
  std::string trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind("iteration,energy,length,max_node_disp,recenter_word_len",
                    0) == 0);
  std::string report = slurp(dir / "report.json");
  CHECK(report == report_json(P));
}

TEST_CASE("figure export: 2D scene renders, 3D scene is unsupported") {
  fs::path dir2 = fresh_dir("fig2");
  write_run_artifacts(run_scenario(load("torus_zigzag.json")), dir2);
  FigureProducts fig = export_figure(dir2);
  CHECK(fig.exit_code == 0);
  CHECK(fig.svg.find("<svg") != std::string::npos);
  CHECK(fig.svg.find("polyline") != std::string::npos);
  // deterministic output
  CHECK(export_figure(dir2).svg == fig.svg);

  fs::path dir3 = fresh_dir("fig3");
  write_run_artifacts(run_scenario(load("screw.json")), dir3);
  FigureProducts unsupported = export_figure(dir3);
  CHECK(unsupported.exit_code == 1);
  CHECK(unsupported.note.find("dimension") != std::string::npos);

  FigureProducts missing = export_figure(fresh_dir("fig_missing"));
  CHECK(missing.exit_code == 2);
}

TEST_CASE("oracle report cross-checks analytic against numeric") {
  OracleProducts O = oracle_report(load("screw.json"));
  CHECK(O.exit_code == 0);
  CHECK(O.json.find("\"translation_length_analytic\": 2") !=
        std::string::npos);
  CHECK(O.json.find("\"numeric_certified\": true") != std::string::npos);

  OracleProducts F = oracle_report(load("foliation_torus_21.json"));
  CHECK(F.exit_code == 0);
  CHECK(F.json.find("shortest_horizontal_length") != std::string::npos);
}

#ifdef ORBIGEO_CLI_PATH
TEST_CASE("command-line binary end to end") {
  fs::path dir = fresh_dir("cli");
  std::string scenario =
      (fs::path(ORBIGEO_SCENARIO_DIR) / "torus_line.json").string();
  std::string cmd = std::string(ORBIGEO_CLI_PATH) + " run " + scenario +
                    " --out " + (dir / "run").string() + " > " +
                    (dir / "stdout.json").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "run" / "report.json"));
  CHECK(slurp(dir / "stdout.json") == slurp(dir / "run" / "report.json"));

  std::string trace_cmd = std::string(ORBIGEO_CLI_PATH) + " trace " +
                          (dir / "run").string() + " > " +
                          (dir / "trace.csv").string();
  CHECK(std::system(trace_cmd.c_str()) == 0);
  CHECK(slurp(dir / "trace.csv") == slurp(dir / "run" / "trace.csv"));

  std::string fig_cmd = std::string(ORBIGEO_CLI_PATH) + " export-figure " +
                        (dir / "run").string() + " --out " +
                        (dir / "fig.svg").string();
  CHECK(std::system(fig_cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "fig.svg"));

  // schema problems exit 2
  std::ofstream bad(dir / "bad.json");
  bad << "{\"name\": \"x\"}";
  bad.close();
  std::string bad_cmd = std::string(ORBIGEO_CLI_PATH) + " run " +
                        (dir / "bad.json").string() + " --out " +
                        (dir / "bad_run").string() + " 2> /dev/null";
  int rc = std::system(bad_cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 2);
}
#endif
