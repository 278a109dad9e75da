#include "entropylab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "entropylab/entropypair.hpp"
#include "entropylab/error.hpp"
#include "entropylab/io.hpp"
#include "entropylab/meter.hpp"
#include "entropylab/solvers.hpp"
#include "entropylab/waves.hpp"

namespace entropylab {

using nlohmann::json;

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Fan: return "fan";
    case Scheme::UnderCompressive: return "undercompressive";
    case Scheme::Godunov: return "godunov";
    case Scheme::HopfLax: return "hopf_lax";
  }
  return "unknown";
}

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  std::optional<double> number(const toml::table& t, const std::string& section, const std::string& key,
                               bool required) {
    const auto* node = t.get(key);
    if (node == nullptr) {
      if (required) errors_.push_back(section + "." + key + " is required");
      return std::nullopt;
    }
    if (auto v = node->value<double>()) return *v;
    errors_.push_back(section + "." + key + " must be a number");
    return std::nullopt;
  }

  std::optional<bool> boolean(const toml::table& t, const std::string& section, const std::string& key) {
    const auto* node = t.get(key);
    if (node == nullptr) return std::nullopt;
    if (auto v = node->value<bool>()) return *v;
    errors_.push_back(section + "." + key + " must be a boolean");
    return std::nullopt;
  }

  std::optional<std::string> string(const toml::table& t, const std::string& section, const std::string& key) {
    const auto* node = t.get(key);
    if (node == nullptr) return std::nullopt;
    if (auto v = node->value<std::string>()) return *v;
    errors_.push_back(section + "." + key + " must be a string");
    return std::nullopt;
  }

  std::optional<std::vector<double>> numbers(const toml::table& t, const std::string& section,
                                             const std::string& key) {
    const auto* node = t.get(key);
    if (node == nullptr) return std::nullopt;
    const auto* arr = node->as_array();
    if (arr == nullptr) {
      errors_.push_back(section + "." + key + " must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& el : *arr) {
      auto v = el.value<double>();
      if (!v) {
        errors_.push_back(section + "." + key + " must be an array of numbers");
        return std::nullopt;
      }
      out.push_back(*v);
    }
    return out;
  }

 private:
  std::vector<std::string>& errors_;
};

json table_to_json(const toml::table& t) {
  std::ostringstream s;
  s << toml::json_formatter{t};
  return json::parse(s.str());
}

std::optional<ConvexFun> read_function(const toml::table& root, const std::string& section, json& spec,
                                       std::vector<std::string>& errors) {
  const auto* t = root.get_as<toml::table>(section);
  if (t == nullptr) return std::nullopt;
  spec = table_to_json(*t);
  try {
    auto fun = fun_from_json(spec);
    const auto report = validate(fun);
    for (const auto& issue : report.issues) errors.push_back(section + ": " + issue.message);
    if (!report.valid) return std::nullopt;
    return fun;
  } catch (const Error& e) {
    errors.push_back(section + ": " + e.what());
    return std::nullopt;
  }
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::vector<std::string> validate_config(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  const auto& s = c.solver;
  if (!(s.dx > 0.0) || !finite(s.dx)) errors.push_back("solver.dx must be positive");
  if (!(s.t_end > 0.0) || !finite(s.t_end)) errors.push_back("solver.t_end must be positive");
  if (!finite(s.window_lo) || !finite(s.window_hi) || !(s.window_lo < s.window_hi)) {
    errors.push_back("solver.window must be a finite interval [lo, hi] with lo < hi");
  }
  if (s.scheme == Scheme::Godunov && !(s.cfl > 0.0 && s.cfl <= 0.95)) {
    errors.push_back("solver.cfl must lie in (0, 0.95]");
  }
  if (s.frames < 1) errors.push_back("solver.frames must be at least 1");
  if (errors.empty()) {
    const double cells = (s.window_hi - s.window_lo) / s.dx;
    if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells)) {
      errors.push_back("solver.window length must be an integer multiple of solver.dx");
    }
  }
  const auto& init = c.initial;
  if (!init.riemann) {
    if (init.values.size() != init.breaks.size() + 1) {
      errors.push_back("initial.values must have one more entry than initial.breaks");
    }
    for (std::size_t i = 1; i < init.breaks.size(); ++i) {
      if (!(init.breaks[i - 1] < init.breaks[i])) errors.push_back("initial.breaks must be strictly increasing");
    }
    if (s.scheme == Scheme::Fan || s.scheme == Scheme::UnderCompressive) {
      errors.push_back("solver.scheme '" + std::string(to_string(s.scheme)) + "' needs riemann initial data");
    }
  }
  if (errors.empty()) {
    try {
      (void)make_pair(c.flux, c.entropy);
    } catch (const Error& e) {
      errors.push_back(std::string("entropy pair: ") + e.what());
    }
  }
  if (errors.empty() && s.scheme == Scheme::UnderCompressive) {
    try {
      (void)undercompressive_fan(c.flux, init.u_left, init.u_right, init.x0);
    } catch (const Error& e) {
      errors.push_back(std::string("solver.scheme undercompressive: ") + e.what());
    }
  }
  for (const auto& [tb, xb] : c.diagnostics.balls) {
    if (!(tb > 0.0)) errors.push_back("diagnostics.balls centres need t > 0");
  }
  for (double r : c.diagnostics.radii) {
    if (!(r > 0.0)) errors.push_back("diagnostics.radii must be positive");
  }
  if (!(c.diagnostics.oleinik_c > 0.0)) errors.push_back("diagnostics.oleinik_c must be positive");
  return errors;
}

ParseResult parse_scenario_string(const std::string& text, const std::string& name) {
  ParseResult result;
  auto& errors = result.errors;
  toml::table root;
  try {
    root = toml::parse(text, name);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML syntax error at line " << e.source().begin.line << ": " << e.description();
    errors.push_back(msg.str());
    return result;
  }
  Reader rd(errors);
  ScenarioConfig c;
  c.name = name;

  auto flux = read_function(root, "flux", c.flux_spec, errors);
  if (!root.contains("flux")) errors.push_back("flux section is required");
  std::optional<ConvexFun> entropy;
  if (root.contains("entropy")) {
    entropy = read_function(root, "entropy", c.entropy_spec, errors);
  } else {
    entropy = ConvexFun::burgers();
    c.entropy_spec = fun_to_json(*entropy);
  }

  if (const auto* t = root.get_as<toml::table>("initial")) {
    const auto kind = rd.string(*t, "initial", "kind").value_or("riemann");
    if (kind == "riemann") {
      c.initial.riemann = true;
      c.initial.u_left = rd.number(*t, "initial", "u_left", true).value_or(0.0);
      c.initial.u_right = rd.number(*t, "initial", "u_right", true).value_or(0.0);
      c.initial.x0 = rd.number(*t, "initial", "x0", false).value_or(0.0);
    } else if (kind == "piecewise_constant") {
      c.initial.riemann = false;
      c.initial.breaks = rd.numbers(*t, "initial", "breaks").value_or(std::vector<double>{});
      auto values = rd.numbers(*t, "initial", "values");
      if (!values) errors.push_back("initial.values is required");
      c.initial.values = values.value_or(std::vector<double>{});
    } else {
      errors.push_back("initial.kind must be 'riemann' or 'piecewise_constant'");
    }
  } else {
    errors.push_back("initial section is required");
  }

  if (const auto* t = root.get_as<toml::table>("solver")) {
    auto& s = c.solver;
    const auto scheme = rd.string(*t, "solver", "scheme").value_or("godunov");
    if (scheme == "fan") {
      s.scheme = Scheme::Fan;
    } else if (scheme == "undercompressive") {
      s.scheme = Scheme::UnderCompressive;
    } else if (scheme == "godunov") {
      s.scheme = Scheme::Godunov;
    } else if (scheme == "hopf_lax") {
      s.scheme = Scheme::HopfLax;
    } else {
      errors.push_back("solver.scheme must be one of fan, undercompressive, godunov, hopf_lax");
    }
    s.dx = rd.number(*t, "solver", "dx", true).value_or(s.dx);
    s.cfl = rd.number(*t, "solver", "cfl", false).value_or(s.cfl);
    s.t_end = rd.number(*t, "solver", "t_end", true).value_or(s.t_end);
    if (auto frames = rd.number(*t, "solver", "frames", false)) s.frames = static_cast<int>(*frames);
    if (auto w = rd.numbers(*t, "solver", "window")) {
      if (w->size() == 2) {
        s.window_lo = (*w)[0];
        s.window_hi = (*w)[1];
      } else {
        errors.push_back("solver.window must have two entries");
      }
    } else {
      errors.push_back("solver.window is required");
    }
  } else {
    errors.push_back("solver section is required");
  }

  if (const auto* t = root.get_as<toml::table>("diagnostics")) {
    auto& d = c.diagnostics;
    if (const auto* node = t->get("balls")) {
      const auto* arr = node->as_array();
      bool ok = arr != nullptr;
      if (ok) {
        for (const auto& el : *arr) {
          const auto* pt = el.as_array();
          if (pt == nullptr || pt->size() != 2 || !(*pt)[0].value<double>() || !(*pt)[1].value<double>()) {
            ok = false;
            break;
          }
          d.balls.push_back({*(*pt)[0].value<double>(), *(*pt)[1].value<double>()});
        }
      }
      if (!ok) errors.push_back("diagnostics.balls must be an array of [t, x] pairs");
    }
    if (auto r = rd.numbers(*t, "diagnostics", "radii")) d.radii = *r;
    d.kruzkov = rd.boolean(*t, "diagnostics", "kruzkov").value_or(false);
    if (auto k = rd.numbers(*t, "diagnostics", "kruzkov_k")) d.kruzkov_k = *k;
    d.oleinik = rd.boolean(*t, "diagnostics", "oleinik").value_or(false);
    d.oleinik_c = rd.number(*t, "diagnostics", "oleinik_c", false).value_or(d.oleinik_c);
    d.holder = rd.boolean(*t, "diagnostics", "holder").value_or(false);
    if (auto n = rd.number(*t, "diagnostics", "holder_pairs", false)) d.holder_pairs = static_cast<std::size_t>(*n);
    d.growth = rd.boolean(*t, "diagnostics", "growth").value_or(false);
  }

  if (const auto* t = root.get_as<toml::table>("output")) {
    c.output_dir = rd.string(*t, "output", "dir").value_or("");
  }
  if (c.output_dir.empty()) c.output_dir = "out/" + name;

  if (!flux || !entropy || !errors.empty()) return result;
  c.flux = *flux;
  c.entropy = *entropy;
  auto semantic = validate_config(c);
  if (!semantic.empty()) {
    errors = std::move(semantic);
    return result;
  }
  result.config = std::move(c);
  return result;
}

ParseResult parse_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult r;
    r.errors.push_back("cannot open scenario file '" + path + "'");
    return r;
  }
  std::ostringstream s;
  s << in.rdbuf();
  return parse_scenario_string(s.str(), std::filesystem::path(path).stem().string());
}

namespace {

InitialData make_initial(const ScenarioConfig& c) {
  const auto& s = c.solver;
  if (c.initial.riemann) {
    return InitialData::riemann(c.initial.u_left, c.initial.u_right, c.initial.x0, s.window_lo, s.window_hi);
  }
  return InitialData::piecewise_constant(c.initial.breaks, c.initial.values, s.window_lo, s.window_hi);
}

// Stored time indices written to solution.csv: the nearest to frames+1 evenly spaced times.
GridSolution frames_of(const GridSolution& sol, int frames) {
  GridSolution out = sol;
  out.t.clear();
  out.u.clear();
  out.w.clear();
  std::size_t last = sol.t.size();
  for (int k = 0; k <= frames; ++k) {
    const double tt = sol.t.front() + (sol.t.back() - sol.t.front()) * k / frames;
    const std::size_t n = sol.time_index(tt);
    if (n == last) continue;
    last = n;
    out.t.push_back(sol.t[n]);
    out.u.push_back(sol.u[n]);
    if (sol.has_w()) out.w.push_back(sol.w[n]);
  }
  return out;
}

std::vector<double> default_k_grid(const InitialData& data) {
  auto [lo, hi] = data.range();
  const double pad = 0.5 * std::max(hi - lo, 1.0);
  lo -= pad;
  hi += pad;
  std::vector<double> k;
  for (int i = 0; i <= 20; ++i) k.push_back(lo + (hi - lo) * i / 20.0);
  return k;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << content;
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::CFLDegenerate:
    case ErrorCode::EmptyFeasibleCone:
    case ErrorCode::ResolutionInsufficient:
    case ErrorCode::TimeOutOfRange:
    case ErrorCode::Overflow:
    case ErrorCode::InternalEquivalenceViolation:
      return true;
    default:
      return false;
  }
}

}  // namespace

RunOutcome run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  RunOutcome outcome;
  ScenarioConfig c = config;
  if (options.dx_override) c.solver.dx = *options.dx_override;
  if (options.out_dir) c.output_dir = *options.out_dir + "/" + c.name;
  outcome.output_dir = c.output_dir;
  if (auto errors = validate_config(c); !errors.empty()) {
    outcome.exit_code = 1;
    for (const auto& e : errors) outcome.message += e + "\n";
    return outcome;
  }

  try {
    const auto pair = make_pair(c.flux, c.entropy);
    const auto data = make_initial(c);
    const auto& s = c.solver;
    const auto nx = static_cast<std::size_t>(std::llround((s.window_hi - s.window_lo) / s.dx));
    const bool fan_scheme = s.scheme == Scheme::Fan || s.scheme == Scheme::UnderCompressive;

    std::optional<WaveFan> fan;
    GridSolution sol;
    if (fan_scheme) {
      fan = s.scheme == Scheme::Fan
                ? solve_riemann(c.flux, c.initial.u_left, c.initial.u_right, c.initial.x0)
                : undercompressive_fan(c.flux, c.initial.u_left, c.initial.u_right, c.initial.x0);
      sol = sample_fan_grid(*fan, time_grid(0.0, s.t_end, 0.5 * s.dx), s.window_lo, s.dx, nx);
    } else if (s.scheme == Scheme::Godunov) {
      sol = reconstruct_potential(godunov_solve(c.flux, data, s.t_end, s.dx, s.cfl), c.flux);
    } else {
      sol = hopf_lax_solve(c.flux, initial_potential(data, s.dx), time_grid(0.0, s.t_end, s.dx), s.window_lo,
                           s.dx, nx);
    }

    json diag = json::object();
    std::vector<BallDiagnostic> balls;
    json measure_verdicts = json::array();
    bool all_vanishing = true;
    for (const auto& [tb, xb] : c.diagnostics.balls) {
      auto b = fan ? fan_measure(pair, *fan, tb, xb, c.diagnostics.radii)
                   : grid_measure(pair, sol, tb, xb, c.diagnostics.radii);
      if (b.verdict != Verdict::Vanishing) all_vanishing = false;
      measure_verdicts.push_back({{"t_bar", tb},
                                  {"x_bar", xb},
                                  {"verdict", std::string(to_string(b.verdict))},
                                  {"lower_bound", b.lower_bound},
                                  {"liminf_estimate", b.liminf_estimate},
                                  {"rtol", b.rtol}});
      balls.push_back(std::move(b));
    }

    json residual_max = nullptr;
    if (c.diagnostics.kruzkov) {
      const auto k = c.diagnostics.kruzkov_k.empty() ? default_k_grid(data) : c.diagnostics.kruzkov_k;
      const double r = kruzkov_residual(c.flux, sol, k);
      residual_max = r;
      diag["kruzkov"] = {{"k", k}, {"residual_max", r}};
    }

    bool oleinik_ok = true;
    if (c.diagnostics.oleinik) {
      std::vector<double> times;
      for (int k = 1; k <= 4; ++k) times.push_back(s.t_end * k / 4.0);
      const auto rep = oleinik_check(sol, c.diagnostics.oleinik_c, times);
      oleinik_ok = rep.violations == 0;
      diag["oleinik"] = {{"c", c.diagnostics.oleinik_c},
                         {"times", rep.times},
                         {"violation", rep.violation},
                         {"allowance", rep.allowance},
                         {"violations", rep.violations}};
    }

    const auto gamma = gamma_closed_form(describe(pair));
    if (c.diagnostics.growth) {
      json g{{"closed_form", gamma.gamma ? json(*gamma.gamma) : json(nullptr)},
             {"case", gamma.label},
             {"reason", gamma.reason}};
      if (gamma.gamma) {
        const auto rep = check_growth_conditions(pair, *gamma.gamma);
        g["sampled"] = {{"label", rep.label},
                        {"linear_growth", rep.linear_growth},
                        {"h_eventually_increasing", rep.h_eventually_increasing},
                        {"c_max", rep.c_max},
                        {"c_min", rep.c_min},
                        {"c_growth", rep.c_growth},
                        {"c_bounded", rep.c_bounded}};
      }
      diag["growth"] = std::move(g);
    }

    if (c.diagnostics.holder) {
      const auto d = describe(pair);
      if (!gamma.gamma) {
        diag["holder"] = {{"skipped", "gamma unavailable for this pair"}};
      } else {
        const auto e = holder_exponents(d.alpha, d.beta, *gamma.gamma);
        const double half = 0.25 * (s.window_hi - s.window_lo);
        const double mid = 0.5 * (s.window_lo + s.window_hi);
        const auto pairs =
            holder_sample_pairs(options.seed, c.diagnostics.holder_pairs, 0.5 * s.t_end, s.t_end, mid - half, mid + half);
        const GridSolution with_w = sol.has_w() ? sol : reconstruct_potential(sol, c.flux);
        diag["holder"] = {{"gamma1", e.gamma1},
                          {"gamma2", e.gamma2},
                          {"seminorm", holder_seminorm(with_w, e.gamma1, e.gamma2, pairs)}};
      }
    }

    const bool admissible = (!fan || fan->admissible) && all_vanishing && oleinik_ok;
    outcome.verdict = {{"scenario", c.name},
                       {"scheme", std::string(to_string(s.scheme))},
                       {"admissible", admissible},
                       {"measure_verdicts", measure_verdicts},
                       {"residual_max", residual_max}};

    namespace fs = std::filesystem;
    const fs::path dir(c.output_dir);
    fs::create_directories(dir);
    write_file(dir / "solution.csv", solution_csv(frames_of(sol, s.frames)));
    write_file(dir / "diagnostics.csv", diagnostics_csv(balls));
    write_file(dir / "diagnostics.json", diag.dump(2) + "\n");
    write_file(dir / "verdict.json", outcome.verdict.dump(2) + "\n");
    if (fan) write_file(dir / "fan.json", fan_to_json(*fan).dump(2) + "\n");
    outcome.message = c.name + ": admissible=" + (admissible ? "true" : "false");
  } catch (const Error& e) {
    outcome.exit_code = is_numerical(e.code()) ? 2 : 1;
    outcome.message = c.name + ": " + std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 2;
    outcome.message = c.name + ": " + e.what();
  }
  return outcome;
}

}  // namespace entropylab
