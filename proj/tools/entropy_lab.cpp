#include <algorithm>
#include <cstdlib>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropylab/acceptance.hpp"
#include "entropylab/bilinear.hpp"
#include "entropylab/entropypair.hpp"
#include "entropylab/error.hpp"
#include "entropylab/io.hpp"
#include "entropylab/meter.hpp"
#include "entropylab/scenario.hpp"
#include "entropylab/waves.hpp"

using namespace entropylab;
using nlohmann::json;

namespace {

struct Global {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::optional<double> dx_override;
  bool quiet = false;
};

// "burgers", "power:2", "quadratic:0.5", "sublinear:0.5" or a JSON function spec.
ConvexFun parse_fun(const std::string& text) {
  if (!text.empty() && text.front() == '{') return fun_from_json(json::parse(text));
  const auto colon = text.find(':');
  json spec{{"kind", "named"}, {"name", text.substr(0, colon)}};
  if (colon != std::string::npos) {
    const double v = std::stod(text.substr(colon + 1));
    const auto name = text.substr(0, colon);
    spec[name == "power" ? "alpha" : name == "quadratic" ? "curvature" : "tilde"] = v;
  }
  return fun_from_json(spec);
}

int run_scenarios(const std::vector<std::string>& files, const Global& g) {
  RunOptions opts;
  opts.seed = g.seed;
  opts.dx_override = g.dx_override;
  opts.quiet = g.quiet;
  if (const char* env = std::getenv("ENTROPY_LAB_OUT")) opts.out_dir = std::string(env);

  std::vector<ScenarioConfig> configs;
  int code = 0;
  for (const auto& f : files) {
    auto parsed = parse_scenario(f);
    if (!parsed.config) {
      std::cerr << f << ": configuration errors\n";
      for (const auto& e : parsed.errors) std::cerr << "  " << e << "\n";
      code = std::max(code, 1);
      continue;
    }
    configs.push_back(std::move(*parsed.config));
  }

  std::vector<RunOutcome> outcomes(configs.size());
  const std::size_t jobs = std::max<std::size_t>(1, g.jobs);
  for (std::size_t start = 0; start < configs.size(); start += jobs) {
    std::vector<std::future<RunOutcome>> batch;
    const std::size_t end = std::min(configs.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&configs, &opts, i] { return run_scenario(configs[i], opts); }));
    }
    for (std::size_t i = start; i < end; ++i) outcomes[i] = batch[i - start].get();
  }
  for (const auto& o : outcomes) {
    if (o.exit_code != 0) {
      std::cerr << o.message;
      if (o.message.empty() || o.message.back() != '\n') std::cerr << "\n";
    } else if (!g.quiet) {
      std::cout << o.message << " -> " << o.output_dir << "\n";
    }
    code = std::max(code, o.exit_code);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy_lab: entropy production and admissibility for scalar conservation laws"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "scenarios run in parallel")->capture_default_str();
  app.add_option("--dx-override", g.dx_override, "replace solver.dx in every scenario");
  app.add_flag("--quiet", g.quiet, "suppress progress output");

  std::string flux = "burgers";
  std::string entropy = "burgers";
  double left = 0.0;
  double right = 0.0;
  double x0 = 0.0;

  auto* riemann = app.add_subcommand("riemann", "solve a Riemann problem and classify its jumps");
  riemann->add_option("--flux", flux)->capture_default_str();
  riemann->add_option("--entropy", entropy)->capture_default_str();
  riemann->add_option("--left", left)->required();
  riemann->add_option("--right", right)->required();
  riemann->add_option("--x0", x0)->capture_default_str();
  bool undercompressive = false;
  riemann->add_flag("--undercompressive", undercompressive, "build the single-jump alternative");

  std::vector<std::string> files;
  auto* solve = app.add_subcommand("solve", "run TOML scenarios");
  solve->add_option("scenarios", files)->required()->check(CLI::ExistingFile);

  auto* meter = app.add_subcommand("meter", "entropy measure mu(B_r)/r of a fan at one centre");
  meter->add_option("--flux", flux)->capture_default_str();
  meter->add_option("--entropy", entropy)->capture_default_str();
  meter->add_option("--left", left)->required();
  meter->add_option("--right", right)->required();
  meter->add_flag("--undercompressive", undercompressive);
  double t_bar = 1.0;
  double x_bar = 0.0;
  std::vector<double> radii{0.4, 0.2, 0.1, 0.05};
  meter->add_option("--t", t_bar)->capture_default_str();
  meter->add_option("--x", x_bar)->capture_default_str();
  meter->add_option("--radii", radii)->capture_default_str();

  auto* bilinear = app.add_subcommand("bilinear", "randomized checks of the bilinear form");
  std::size_t trials = 10000;
  bilinear->add_option("--selftest", trials, "number of trials")->capture_default_str();

  auto* growth = app.add_subcommand("growth", "closed-form gamma and sampled growth evidence");
  growth->add_option("--flux", flux)->capture_default_str();
  growth->add_option("--entropy", entropy)->capture_default_str();

  auto* holder = app.add_subcommand("holder", "Holder exponents of the potential");
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  bool holder_run = false;
  holder->add_option("--alpha", alpha)->capture_default_str();
  holder->add_option("--beta", beta)->capture_default_str();
  holder->add_option("--gamma", gamma)->capture_default_str();
  holder->add_flag("--run", holder_run, "seminorm refinement on truncated singular data");

  auto* demo = app.add_subcommand("demo", "run the acceptance fixtures");
  std::vector<int> criteria;
  demo->add_option("--criterion", criteria, "criterion ids (default: all)")->check(CLI::Range(1, kCriteriaCount));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*riemann) {
      const auto f = parse_fun(flux);
      const auto pair = make_pair(f, parse_fun(entropy));
      const auto fan = undercompressive ? undercompressive_fan(f, left, right, x0) : solve_riemann(f, left, right, x0);
      json out = fan_to_json(fan);
      for (auto& w : out["waves"]) {
        const double um = w["states"][0];
        const double up = w["states"][1];
        if (w["type"] == to_string(WaveType::Rarefaction)) continue;
        const auto rep = classify(pair, um, up);
        w["classification"] = std::string(to_string(rep.classification));
        w["production_rate"] = rep.production_rate;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*solve) return run_scenarios(files, g);
    if (*meter) {
      const auto f = parse_fun(flux);
      const auto pair = make_pair(f, parse_fun(entropy));
      const auto fan = undercompressive ? undercompressive_fan(f, left, right) : solve_riemann(f, left, right);
      const auto d = fan_measure(pair, fan, t_bar, x_bar, radii);
      std::cout << diagnostics_csv({d});
      std::cout << "verdict," << to_string(d.verdict) << "," << format_number(d.lower_bound) << "\n";
      return 0;
    }
    if (*bilinear) {
      const auto r = bilinear_selftest(trials, g.seed);
      json out{{"trials", r.trials},
               {"quadratic_trials", r.quadratic_trials},
               {"failures",
                {{"chain", r.failures_chain},
                 {"affine", r.failures_affine},
                 {"decomposition", r.failures_decomposition},
                 {"uniform", r.failures_uniform}}}};
      json repro = json::array();
      for (const auto& f : r.failures) repro.push_back(json::parse(f.repro_json));
      out["counterexamples"] = repro;
      std::cout << out.dump(2) << "\n";
      return r.total_failures() == 0 ? 0 : 2;
    }
    if (*growth) {
      const auto pair = make_pair(parse_fun(flux), parse_fun(entropy));
      const auto gr = gamma_closed_form(describe(pair));
      json out{{"case", gr.label}, {"reason", gr.reason}, {"gamma", gr.gamma ? json(*gr.gamma) : json(nullptr)}};
      const auto rep = check_growth_conditions(pair, gr.gamma.value_or(1.0));
      out["sampled"] = {{"label", rep.label},
                        {"gamma_used", rep.gamma},
                        {"linear_growth", rep.linear_growth},
                        {"h_eventually_increasing", rep.h_eventually_increasing},
                        {"h_exceeds_threshold", rep.h_exceeds_threshold},
                        {"c_max", rep.c_max},
                        {"c_min", rep.c_min},
                        {"c_growth", rep.c_growth},
                        {"c_bounded", rep.c_bounded},
                        {"nonfinite_samples", rep.nonfinite_samples}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*holder) {
      const auto e = holder_exponents(alpha, beta, gamma);
      json out{{"gamma1", e.gamma1}, {"gamma2", e.gamma2}};
      if (holder_run) {
        const auto run = holder_refinement(e.gamma1, e.gamma2, g.seed, {0.02, 0.01, 0.005});
        out["dx"] = run.dx;
        out["seminorm"] = run.seminorm;
        out["ratios"] = run.ratios;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*demo) {
      if (criteria.empty()) {
        for (int id = 1; id <= kCriteriaCount; ++id) criteria.push_back(id);
      }
      bool all = true;
      for (int id : criteria) {
        const auto r = run_criterion(id, g.seed);
        all = all && r.passed;
        std::cout << format_result(r) << std::endl;
      }
      return all ? 0 : 2;
    }
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::NonConvexFlux ||
                   e.code() == ErrorCode::NonStrictEntropy || e.code() == ErrorCode::NotUnderCompressive
               ? 1
               : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
