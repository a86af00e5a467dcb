#include "orbigeo/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

namespace {

using namespace orbigeo;

struct CommonOpts {
  std::optional<std::uint64_t> seed;
  std::optional<long> max_iter;
  std::vector<std::string> tol_overrides;
};

// applies --seed/--max-iter/--tol NAME=VALUE on top of the scenario config
void apply_overrides(Scenario& s, const CommonOpts& c) {
  if (c.seed) s.config.seed = *c.seed;
  if (c.max_iter) s.config.max_iter = *c.max_iter;
  for (const std::string& kv : c.tol_overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw schema_error("--tol", "expected NAME=VALUE, got '" + kv + "'");
    std::string name = kv.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(kv.substr(eq + 1));
    } catch (...) {
      throw schema_error("--tol", "'" + kv.substr(eq + 1) +
                                      "' is not a number");
    }
    if (name == "node_disp") s.config.tol.node_disp = value;
    else if (name == "energy_decrement") s.config.tol.energy_decrement = value;
    else if (name == "geodesic_angle") s.config.tol.geodesic_angle = value;
    else if (name == "trivial_length") s.config.tol.trivial_length = value;
    else if (name == "speed_spread") s.config.tol.speed_spread = value;
    else
      throw schema_error("--tol", "unknown tolerance '" + name + "'");
  }
}

int cmd_run(const std::string& scenario_path, std::string outdir,
            const CommonOpts& common) {
  Scenario s;
  try {
    s = parse_scenario_file(scenario_path);
    apply_overrides(s, common);
  } catch (const schema_error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 2;
  }
  if (outdir.empty()) outdir = "runs/" + s.name;
  RunProducts P = run_scenario(s);
  try {
    write_run_artifacts(P, outdir);
  } catch (const contract_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  std::cout << report_json(P);
  if (P.exit_code != 0) std::cerr << P.note << "\n";
  return P.exit_code;
}

int cmd_oracle(const std::string& scenario_path, const CommonOpts& common) {
  Scenario s;
  try {
    s = parse_scenario_file(scenario_path);
    apply_overrides(s, common);
  } catch (const schema_error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 2;
  }
  OracleProducts O = oracle_report(s);
  std::cout << O.json;
  return O.exit_code;
}

int cmd_trace(const std::string& run_dir) {
  std::ifstream in(std::filesystem::path(run_dir) / "trace.csv");
  if (!in) {
    std::cerr << "no trace.csv under " << run_dir << "\n";
    return 2;
  }
  std::cout << in.rdbuf();
  return 0;
}

int cmd_figure(const std::string& run_dir, std::string out_path) {
  FigureProducts F = export_figure(run_dir);
  if (F.exit_code != 0) {
    std::cerr << F.note << "\n";
    return F.exit_code;
  }
  if (out_path.empty())
    out_path = (std::filesystem::path(run_dir) / "figure.svg").string();
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  out << F.svg;
  return 0;
}

int cmd_batch(const std::string& dir, std::string outdir,
              const CommonOpts& common) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry :
       std::filesystem::directory_iterator(dir, ec))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) {
    std::cerr << "cannot read directory " << dir << "\n";
    return 2;
  }
  std::sort(files.begin(), files.end());
  if (outdir.empty()) outdir = "runs";
  int worst = 0;
  for (const auto& f : files) {
    int code;
    std::string name = f.stem().string();
    try {
      Scenario s = parse_scenario_file(f);
      apply_overrides(s, common);
      name = s.name;
      RunProducts P = run_scenario(s);
      write_run_artifacts(P, std::filesystem::path(outdir) / s.name);
      code = P.exit_code;
      std::cout << s.name << ": " << (P.exit_code == 2 ? "invalid"
                                                       : status_name(P.result.status))
                << " (exit " << code << ") " << P.note << "\n";
    } catch (const schema_error& e) {
      code = 2;
      std::cout << name << ": invalid (exit 2) " << e.what() << "\n";
    } catch (const contract_error& e) {
      code = 2;
      std::cout << name << ": invalid (exit 2) " << e.what() << "\n";
    }
    worst = std::max(worst, code);
  }
  return worst;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed geodesics in quotient orbifolds and foliation leaf "
               "spaces via discrete curve shortening"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string scenario_path, run_dir, outdir, out_file;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "override the scenario seed");
    cmd->add_option("--max-iter", common.max_iter,
                    "override the iteration budget");
    cmd->add_option("--tol", common.tol_overrides,
                    "override a tolerance, NAME=VALUE (node_disp, "
                    "energy_decrement, geodesic_angle, trivial_length, "
                    "speed_spread)");
  };

  auto* run = app.add_subcommand("run", "run a scenario and write artifacts");
  run->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  run->add_option("--out", outdir, "output directory (default runs/<name>)");
  add_common(run);

  auto* oracle = app.add_subcommand(
      "oracle", "analytic/enumeration oracle values for a scenario");
  oracle->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  add_common(oracle);

  auto* trace =
      app.add_subcommand("trace", "print the iteration trace of a run");
  trace->add_option("run_dir", run_dir, "run output directory")->required();

  auto* fig = app.add_subcommand("export-figure",
                                 "render a run to an SVG figure");
  fig->add_option("run_dir", run_dir, "run output directory")->required();
  fig->add_option("--out", out_file, "SVG path (default <run_dir>/figure.svg)");

  auto* batch =
      app.add_subcommand("batch", "run every scenario JSON in a directory");
  batch->add_option("dir", scenario_path, "directory of scenario files")
      ->required();
  batch->add_option("--out", outdir, "output root (default runs/)");
  add_common(batch);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, outdir, common);
    if (oracle->parsed()) return cmd_oracle(scenario_path, common);
    if (trace->parsed()) return cmd_trace(run_dir);
    if (fig->parsed()) return cmd_figure(run_dir, out_file);
    if (batch->parsed()) return cmd_batch(scenario_path, outdir, common);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
