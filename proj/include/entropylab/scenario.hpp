#ifndef ENTROPYLAB_SCENARIO_HPP_
#define ENTROPYLAB_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entropylab/convexfn.hpp"

namespace entropylab {

enum class Scheme { Fan, UnderCompressive, Godunov, HopfLax };

std::string_view to_string(Scheme s);

struct InitialSpec {
  bool riemann = true;
  double u_left = 0.0;
  double u_right = 0.0;
  double x0 = 0.0;
  std::vector<double> breaks;   // piecewise_constant only
  std::vector<double> values;   // breaks.size() + 1 entries
};

struct SolverParams {
  Scheme scheme = Scheme::Godunov;
  double dx = 0.01;
  double cfl = 0.9;
  double t_end = 1.0;
  double window_lo = -1.0;
  double window_hi = 1.0;
  int frames = 10;  // time slices written to solution.csv
};

struct DiagnosticsSpec {
  std::vector<std::pair<double, double>> balls;  // (t_bar, x_bar)
  std::vector<double> radii{0.4, 0.2, 0.1};
  bool kruzkov = false;
  std::vector<double> kruzkov_k;  // empty: 21 values spanning the data range
  bool oleinik = false;
  double oleinik_c = 1.0;
  bool holder = false;
  std::size_t holder_pairs = 400;
  bool growth = false;
};

struct ScenarioConfig {
  std::string name;
  nlohmann::json flux_spec;
  nlohmann::json entropy_spec;
  ConvexFun flux = ConvexFun::burgers();
  ConvexFun entropy = ConvexFun::burgers();
  InitialSpec initial;
  SolverParams solver;
  DiagnosticsSpec diagnostics;
  std::string output_dir;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;
  std::vector<std::string> errors;
};

/// Parses and validates a TOML scenario; every problem found is listed.
ParseResult parse_scenario(const std::string& path);
ParseResult parse_scenario_string(const std::string& text, const std::string& name);

/// Semantic checks shared by parsing and by runs with overrides.
std::vector<std::string> validate_config(const ScenarioConfig& config);

struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<double> dx_override;
  std::optional<std::string> out_dir;
  bool quiet = false;
};

struct RunOutcome {
  int exit_code = 0;  // 0 success, 1 config error, 2 numerical failure
  std::string message;
  nlohmann::json verdict;
  std::string output_dir;
};

/// Writes solution.csv, diagnostics.csv, diagnostics.json, verdict.json and
/// (for fan schemes) fan.json into the output directory.
RunOutcome run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace entropylab

#endif  // ENTROPYLAB_SCENARIO_HPP_
