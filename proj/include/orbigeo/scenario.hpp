#pragma once

#include "orbigeo/foliation.hpp"

#include <filesystem>
#include <optional>

// Scenario-driven experiments: JSON scenario documents, deterministic run
// reports and traces, analytic/enumeration oracles and SVG figures.  All
// emitted documents are byte-stable for a fixed scenario and seed; numbers
// carry 17 significant digits.

namespace orbigeo {

// Schema violation with the JSON field path that caused it.
class schema_error : public std::runtime_error {
public:
  schema_error(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), field_path(path) {}
  std::string field_path;
};

struct ScenarioConfig {
  int segment_override = 0; // 0 = use the k-rule
  double rho0_cap = 1.0;
  long max_iter = 100000;
  int recenter_every = 1;
  std::uint64_t seed = 0;
  ShorteningTolerances tol;
};

struct ManifoldScene {
  SpaceId space;
  IsometryGroup group;
  Isometry closure;
  bool auto_curve = true;
  Point base;                   // auto mode: start of the seed geodesic
  DiscreteCurve explicit_curve; // explicit mode
};

struct FoliationScene {
  FoliationModel model;
  ClassHint hint;
};

struct Scenario {
  std::string name;
  std::variant<ManifoldScene, FoliationScene> scene;
  ScenarioConfig config;
  std::optional<RunStatus> expect_status;
  std::string source_text; // original document, echoed into artifacts
};

Scenario parse_scenario_json(const std::string& text);
Scenario parse_scenario_file(const std::filesystem::path& path);

struct RunProducts {
  Scenario scenario;
  bool foliation = false;
  GeodesicResult result; // foliation: the transverse result
  std::optional<HorizontalResult> horizontal;
  ShorteningConfig resolved; // rho0 / energy bound / k actually used
  ClosedPair initial;        // pair handed to the engine (transverse for
                             // foliation scenes)
  std::string oracle_name;
  std::optional<double> oracle_value;
  std::optional<double> oracle_delta;
  int exit_code = 0;
  std::string note; // human-readable outcome summary
};

// Runs a scenario.  Build/validation problems surface as exit code 2 in
// the returned products (with the message in `note`), convergence

// shortfalls and unexpected outcomes as exit code 1.
RunProducts run_scenario(const Scenario& scenario);

// Serialized run report (deterministic key order, 17 significant digits).
std::string report_json(const RunProducts& products);

// Serialized iteration trace:
// iteration,energy,length,max_node_disp,recenter_word_len
std::string trace_csv(const GeodesicResult& result);

// Geometry echo consumed by export_figure.
std::string artifacts_json(const RunProducts& products);

// Writes report.json, trace.csv and artifacts.json into outdir.
void write_run_artifacts(const RunProducts& products,
                         const std::filesystem::path& outdir);

// Oracle cross-check for a scenario (no shortening run): translation
// lengths analytic vs numeric plus the fixed-point test, or the foliation
// enumeration oracle.  exit code 1 when the cross-check fails or no
// oracle applies.
struct OracleProducts {
  std::string json;
  int exit_code = 0;
};
OracleProducts oracle_report(const Scenario& scenario);

// Renders artifacts.json from a run directory to an SVG (2D Euclidean and
// 1D scenes).  Returns exit code 1 with a message for unsupported
// spaces/dimensions, 2 for unreadable run directories.
struct FigureProducts {
  std::string svg;
  int exit_code = 0;
  std::string note;
};
FigureProducts export_figure(const std::filesystem::path& run_dir);

} // namespace orbigeo
