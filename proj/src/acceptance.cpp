#include "entropylab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "entropylab/bilinear.hpp"
#include "entropylab/entropypair.hpp"
#include "entropylab/error.hpp"
#include "entropylab/meter.hpp"
#include "entropylab/random_fun.hpp"
#include "entropylab/solvers.hpp"
#include "entropylab/waves.hpp"

namespace entropylab {

InitialData truncated_singular_data(double exponent, double cutoff, double x_lo, double x_hi) {
  auto rule = [exponent, cutoff](double x) { return std::pow(std::max(std::abs(x), cutoff), -exponent); };
  const double e = 1.0 - exponent;
  auto anti = [exponent, cutoff, e](double x) {
    const double a = std::abs(x);
    const double s = x < 0.0 ? -1.0 : 1.0;
    const double core = std::pow(cutoff, -exponent);
    if (a <= cutoff) return core * x;
    return s * (core * cutoff + (std::pow(a, e) - std::pow(cutoff, e)) / e);
  };
  auto data = InitialData::sampled(rule, x_lo, x_hi, anti);
  data.singular_points = {-cutoff, 0.0, cutoff};
  return data;
}

HolderRun holder_refinement(double gamma1, double gamma2, std::uint64_t seed,
                            const std::vector<double>& dx_levels) {
  HolderRun run;
  const auto f = ConvexFun::burgers();
  const auto data = truncated_singular_data(0.3, 1e-3, -3.0, 3.0);
  const auto pairs = holder_sample_pairs(seed, 400, 0.5, 1.0, -0.5, 0.5);
  for (double dx : dx_levels) {
    const auto w0 = initial_potential(data, dx);
    const auto nx = static_cast<std::size_t>(std::llround(2.0 / dx));
    const auto sol = hopf_lax_solve(f, w0, time_grid(0.5, 1.0, 2.0 * dx), -1.0, dx, nx);
    run.dx.push_back(dx);
    run.seminorm.push_back(holder_seminorm(sol, gamma1, gamma2, pairs));
  }
  for (std::size_t k = 0; k + 1 < run.seminorm.size(); ++k) {
    run.ratios.push_back(run.seminorm[k + 1] / run.seminorm[k]);
  }
  return run;
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Rescales an Exact function by a positive factor.
ConvexFun scaled(const ConvexFun& f, double factor) {
  auto pieces = f.pieces();
  for (auto& p : pieces) {
    p.a *= factor;
    p.c *= factor;
    p.d *= factor;
  }
  return ConvexFun::quadratic_pieces(f.breakpoints(), std::move(pieces));
}

CriterionResult bilinear_suite(std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = bilinear_selftest(10000, seed);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CriterionResult out;
  out.passed = r.total_failures() == 0 && r.trials == 10000 && r.quadratic_trials == 1000 && secs < 30.0;
  out.detail = std::to_string(r.trials) + " trials, " + std::to_string(r.quadratic_trials) +
               " quadratic trials, failures chain/affine/decomp/uniform = " +
               std::to_string(r.failures_chain) + "/" + std::to_string(r.failures_affine) + "/" +
               std::to_string(r.failures_decomposition) + "/" + std::to_string(r.failures_uniform);
  return out;
}

CriterionResult hand_value() {
  const auto pair = make_pair(ConvexFun::burgers(), ConvexFun::burgers());
  const DiscreteMeasure m({{0.0, 0.5}, {1.0, 0.5}});
  const double b = bilinear_form(m, pair);
  CriterionResult out;
  out.passed = std::abs(b - 1.0 / 48.0) <= 1e-12;
  out.detail = "B = " + fmt(b) + ", error " + fmt(std::abs(b - 1.0 / 48.0));
  return out;
}

CriterionResult degeneracy_suite(std::uint64_t seed) {
  const auto f = ConvexFun::flat();
  const auto pair = make_pair(f, ConvexFun::burgers());
  const auto interval = degeneracy_interval(f, 0.0, Side::Plus);
  bool exact = interval.lo == 0.0 && interval.hi == 1.0 && !interval.approximate;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> in_flat(0.0, 1.0);
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  std::size_t zero_ok = 0;
  std::size_t zero_total = 0;
  // Points of I-(u) u I+(u): flat stretch pairs and the trivial v = u.
  while (zero_total < 100) {
    double u;
    double v;
    if (zero_total % 4 == 3) {
      u = wide(rng);
      v = u;
    } else {
      u = in_flat(rng);
      const auto im = degeneracy_interval(f, u, Side::Minus);
      const auto ip = degeneracy_interval(f, u, Side::Plus);
      const double lo = std::min(im.lo, ip.lo);
      const double hi = std::max(im.hi, ip.hi);
      v = lo + (hi - lo) * in_flat(rng);
    }
    ++zero_total;
    if (std::abs(p_term(pair, v, u)) <= 1e-12) ++zero_ok;
  }
  std::size_t pos_ok = 0;
  std::size_t pos_total = 0;
  while (pos_total < 100) {
    const double u = wide(rng);
    const double v = wide(rng);
    if (degeneracy_interval(f, u, Side::Minus).contains(v) || degeneracy_interval(f, u, Side::Plus).contains(v)) {
      continue;
    }
    ++pos_total;
    if (p_term(pair, v, u) > 0.0) ++pos_ok;
  }
  CriterionResult out;
  out.passed = exact && zero_ok == 100 && pos_ok == 100;
  out.detail = "I+(0) = [" + fmt(interval.lo) + ", " + fmt(interval.hi) + "], P = 0 on " +
               std::to_string(zero_ok) + "/100 inside, P > 0 on " + std::to_string(pos_ok) + "/100 outside";
  return out;
}

CriterionResult lax_equivalence(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> state(-5.0, 5.0);
  RandomFunOptions flux_opts;
  RandomFunOptions entropy_opts;
  entropy_opts.strict = true;
  std::size_t trials = 0;
  std::size_t disagreements = 0;
  std::size_t contacts_skipped = 0;
  std::size_t classify_failures = 0;
  while (trials < 10000) {
    const auto f = random_convex_exact(rng, flux_opts);
    const auto pair = make_pair(f, random_convex_exact(rng, entropy_opts));
    const double um = state(rng);
    const double up = state(rng);
    if (um == up) continue;
    if (degeneracy_interval(f, up, Side::Minus).contains(um) ||
        degeneracy_interval(f, up, Side::Plus).contains(um)) {
      ++contacts_skipped;
      continue;
    }
    ++trials;
    const auto prod = production_rate(pair, um, up);
    const bool lax = f.derivative(um, Side::Minus) > f.derivative(up, Side::Plus);
    const double scale = 1.0 + std::abs(pair.q(up)) + std::abs(pair.q(um)) +
                         std::abs(prod.speed) * (std::abs(pair.eta(up)) + std::abs(pair.eta(um)));
    const double tol = 1e-12 * scale;
    // Sign flips inside the roundoff band are not disagreements.
    const bool agree = lax ? prod.rate < tol : prod.rate > -tol;
    if (!agree) ++disagreements;
    try {
      const auto rep = classify(pair, um, up);
      const auto expected = lax ? Classification::LaxShock : Classification::UnderCompressive;
      if (rep.classification != expected) ++classify_failures;
    } catch (const Error&) {
      ++classify_failures;
    }
  }
  CriterionResult out;
  out.passed = disagreements == 0 && classify_failures == 0;
  out.detail = std::to_string(trials) + " jumps, " + std::to_string(disagreements) + " disagreements, " +
               std::to_string(classify_failures) + " classifier mismatches, " +
               std::to_string(contacts_skipped) + " contact draws skipped";
  return out;
}

CriterionResult undercompressive_constant() {
  const auto f = ConvexFun::burgers();
  const auto pair = make_pair(f, ConvexFun::burgers());
  // Closed form of the integral of xi (xi - 1/2) over [0, 1].
  auto antiderivative = [](double x) { return x * x * x / 3.0 - x * x / 4.0; };
  const double closed = antiderivative(1.0) - antiderivative(0.0);
  const auto prod = production_rate(pair, 0.0, 1.0);
  const auto budget = undercompressive_budget(pair, 0.0, 1.0, 1.0);
  const bool production_ok = std::abs(prod.rate - closed) <= 1e-12 && std::abs(budget.production - closed) <= 1e-12;

  const double expected = 2.0 * (1.0 / 12.0) / std::sqrt(1.25);
  const std::vector<double> radii{0.4, 0.2, 0.1, 0.05, 0.01, 0.001};
  const auto uc = fan_measure(pair, undercompressive_fan(f, 0.0, 1.0), 1.0, 0.5, radii);
  double max_err = 0.0;
  const auto [lo, hi] = std::minmax_element(uc.values.begin(), uc.values.end());
  for (double v : uc.values) max_err = std::max(max_err, std::abs(v - expected));
  const bool uc_ok = max_err <= 1e-9 && (*hi - *lo) <= 1e-9 && uc.verdict == Verdict::PositiveLowerBound;

  const auto rare = fan_measure(pair, solve_riemann(f, 0.0, 1.0), 1.0, 0.5, radii);
  const bool rare_ok = rare.verdict == Verdict::Vanishing &&
                       std::all_of(rare.values.begin(), rare.values.end(), [](double v) { return v == 0.0; });
  CriterionResult out;
  out.passed = production_ok && uc_ok && rare_ok;
  out.detail = "D = " + fmt(prod.rate) + " (closed form " + fmt(closed) + "), mu/r = " + fmt(uc.values.front()) +
               " max error " + fmt(max_err) + ", spread " + fmt(*hi - *lo) + ", rarefaction " +
               std::string(to_string(rare.verdict));
  return out;
}

CriterionResult selection_experiment(std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> state(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RandomFunOptions opts;
  opts.break_lo = -2.0;
  opts.break_hi = 2.0;
  const double dx = 0.01;
  const double window_lo = -6.0;
  const double window_hi = 6.0;
  const auto nx = static_cast<std::size_t>(std::llround((window_hi - window_lo) / dx));
  const double bound = 3.0 * dx * (window_hi - window_lo);
  const auto eta = ConvexFun::burgers();

  std::size_t selected_ok = 0;
  std::size_t uc_built = 0;
  std::size_t uc_flagged = 0;
  double worst_l1 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_convex_exact(rng, opts);
    const double speed = std::max({std::abs(f.derivative(-2.0, Side::Minus)), std::abs(f.derivative(2.0, Side::Plus)), 1e-12});
    if (speed > 5.0) f = scaled(f, 5.0 / speed);
    const auto pair = make_pair(f, eta);
    const double ul = state(rng);
    const double ur = state(rng);

    std::vector<WaveFan> candidates{solve_riemann(f, ul, ur)};
    const bool uc_possible = ul < ur && f.derivative(ur, Side::Minus) > f.derivative(ul, Side::Plus);
    if (uc_possible) candidates.push_back(undercompressive_fan(f, ul, ur));

    // Centres on every jump line plus random ones.
    std::vector<std::pair<double, double>> centres;
    for (const auto& c : candidates) {
      for (const auto& w : c.waves) {
        if (w.is_jump()) centres.push_back({1.0, w.speed_lo});
      }
    }
    for (int k = 0; k < 32; ++k) centres.push_back({0.2 + 1.8 * unit(rng), -5.0 + 10.0 * unit(rng)});
    const std::vector<double> radii{0.1, 0.05, 0.02};

    const auto hl = hopf_lax_solve(f, initial_potential(InitialData::riemann(ul, ur, 0.0, window_lo, window_hi), dx),
                                   {1.0}, window_lo, dx, nx);
    int passing = 0;
    bool passing_close = true;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      bool vanishing = true;
      for (const auto& [tb, xb] : centres) {
        if (fan_measure(pair, candidates[ci], tb, xb, radii).verdict != Verdict::Vanishing) vanishing = false;
      }
      if (ci == 1) {
        ++uc_built;
        const double s = candidates[1].waves.front().speed_lo;
        if (fan_measure(pair, candidates[1], 1.0, s, radii).verdict == Verdict::PositiveLowerBound) ++uc_flagged;
      }
      if (!vanishing) continue;
      ++passing;
      const auto sampled = sample_fan_grid(candidates[ci], {1.0}, window_lo, dx, nx);
      const double l1 = l1_distance(sampled, hl, 1.0, window_lo, window_hi);
      worst_l1 = std::max(worst_l1, l1);
      if (!(l1 <= bound)) passing_close = false;
    }
    if (passing == 1 && passing_close) ++selected_ok;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CriterionResult out;
  out.passed = selected_ok == 20 && uc_flagged == uc_built && secs < 300.0;
  out.detail = std::to_string(selected_ok) + "/20 selections match Hopf-Lax (worst L1 " + fmt(worst_l1) +
               " <= " + fmt(bound) + "), undercompressive flagged " + std::to_string(uc_flagged) + "/" +
               std::to_string(uc_built);
  return out;
}

CriterionResult cross_solver() {
  const auto burgers = ConvexFun::burgers();
  const double dx0 = 0.01;
  const double x0 = dx0 / 3.0;  // shock sits at a fixed fraction of the coarsest cell
  const auto fan = solve_riemann(burgers, 1.0, 0.0, x0);
  const auto data = InitialData::riemann(1.0, 0.0, x0, -2.0, 2.0);
  std::vector<double> errors;
  for (double dx : {dx0, dx0 / 2.0, dx0 / 4.0}) {
    const auto nx = static_cast<std::size_t>(std::llround(4.0 / dx));
    const auto hl = hopf_lax_solve(burgers, initial_potential(data, dx), {1.0}, -2.0, dx, nx);
    const auto exact = sample_fan_grid(fan, {1.0}, -2.0, dx, nx);
    errors.push_back(l1_distance(hl, exact, 1.0, -2.0, 2.0));
  }
  const double r1 = errors[0] / errors[1];
  const double r2 = errors[1] / errors[2];
  const bool shock_ok = errors[0] <= 0.02 && r1 >= 1.5 && r1 <= 3.0 && r2 >= 1.5 && r2 <= 3.0;

  const auto flat = ConvexFun::flat();
  const double dx = 0.005;
  const auto comp = InitialData::riemann(-1.0, 2.0, 0.0, -3.0, 3.0);
  const auto god = godunov_solve(flat, comp, 1.0, dx, 0.9);
  const auto hl = hopf_lax_solve(flat, initial_potential(comp, dx), {1.0}, -3.0, dx, god.nx);
  const double composite = l1_distance(god, hl, 1.0, -3.0, 3.0);
  CriterionResult out;
  out.passed = shock_ok && composite <= 0.1;
  out.detail = "shock L1 " + fmt(errors[0]) + ", " + fmt(errors[1]) + ", " + fmt(errors[2]) + " (ratios " +
               fmt(r1) + ", " + fmt(r2) + "); composite fan Godunov vs Hopf-Lax " + fmt(composite);
  return out;
}

CriterionResult oleinik() {
  const auto f = ConvexFun::burgers();
  const double dx = 0.01;
  const std::vector<InitialData> fixtures{
      InitialData::riemann(1.0, 0.0, 0.0, -4.0, 4.0),
      InitialData::riemann(0.0, 1.0, 0.0, -4.0, 4.0),
      InitialData::riemann(-1.0, 1.0, 0.0, -4.0, 4.0),
      InitialData::piecewise_constant({-1.0, 0.0, 1.0}, {0.0, 1.0, -1.0, 0.5}, -4.0, 4.0)};
  const std::vector<double> times{0.5, 1.0, 2.0};
  std::size_t violations = 0;
  double worst = -kInf;
  for (const auto& data : fixtures) {
    const auto sol = hopf_lax_solve(f, initial_potential(data, dx), times, -4.0, dx, 800);
    const auto rep = oleinik_check(sol, 1.0, times);
    violations += rep.violations;
    worst = std::max(worst, rep.max_violation);
  }
  CriterionResult out;
  out.passed = violations == 0;
  out.detail = std::to_string(violations) + " violations over " + std::to_string(fixtures.size() * times.size()) +
               " (fixture, t) checks, largest excess over 1/(ct) " + fmt(worst);
  return out;
}

CriterionResult kruzkov() {
  const auto f = ConvexFun::burgers();
  std::vector<double> k_grid;
  for (int i = 0; i <= 20; ++i) k_grid.push_back(-0.5 + 0.1 * i);
  const auto data = InitialData::riemann(1.0, 0.0, 0.0, -2.0, 2.0);
  const double coarse = kruzkov_residual(f, godunov_solve(f, data, 1.0, 0.005, 0.9), k_grid);
  const double fine = kruzkov_residual(f, godunov_solve(f, data, 1.0, 0.0025, 0.9), k_grid);
  // At roundoff level both values sit on the same floor.
  constexpr double floor = 1e-12;
  const bool decreasing = fine < coarse || (fine <= floor && coarse <= floor);

  const double dx = 0.005;
  const auto uc = undercompressive_fan(f, 0.0, 1.0);
  const auto sampled = sample_fan_grid(uc, time_grid(0.0, 1.0, 0.5 * dx), -2.0, dx, 800);
  const double flagged = kruzkov_residual(f, sampled, {0.5});
  CriterionResult out;
  out.passed = coarse <= 5e-3 && decreasing && flagged >= 0.01;
  out.detail = "Godunov residual " + fmt(coarse) + " (dx 0.005), " + fmt(fine) +
               " (dx 0.0025); undercompressive sample " + fmt(flagged);
  return out;
}

CriterionResult growth_table() {
  struct Row {
    const char* label;
    GrowthDescriptor desc;
    std::optional<double> expected;
  };
  GrowthDescriptor d1;
  d1.alpha = 2.0;
  d1.beta = 1.0;
  GrowthDescriptor d2;
  d2.alpha = 0.0;
  d2.alpha_tilde = 0.5;
  d2.beta = 1.0;
  GrowthDescriptor d3;
  d3.alpha = 1.0;
  d3.beta = 0.0;
  d3.beta_tilde = 0.5;
  GrowthDescriptor dlog;
  dlog.alpha = 1.0;
  dlog.beta = 0.0;
  dlog.log_entropy = true;
  GrowthDescriptor dexp;
  dexp.exp_flux = true;
  dexp.beta = 1.0;
  const std::vector<Row> rows{{"power growth", d1, 1.5},
                              {"linear flux", d2, 1.0},
                              {"linear entropy", d3, (1.0 + 1.0 - 0.5) / (1.0 - 0.5)},
                              {"log entropy", dlog, 1.0 + 1.0},
                              {"exponential flux", dexp, std::nullopt}};
  bool table_ok = true;
  for (const auto& row : rows) {
    const auto g = gamma_closed_form(row.desc);
    if (g.gamma.has_value() != row.expected.has_value()) table_ok = false;
    if (g.gamma && *g.gamma != *row.expected) table_ok = false;
  }

  struct Sample {
    const char* label;
    ConvexFun f;
    ConvexFun eta;
    double gamma;
    bool expect_bounded;
  };
  const std::vector<Sample> samples{
      {"power growth", ConvexFun::power(2.0), ConvexFun::burgers(), 1.5, true},
      {"linear flux", ConvexFun::sublinear(0.5), ConvexFun::burgers(), 1.0, true},
      {"linear entropy", ConvexFun::burgers(), ConvexFun::sublinear(0.5), 3.0, true},
      {"log entropy", ConvexFun::burgers(), ConvexFun::log_entropy(), 2.0, true},
      {"exponential flux", ConvexFun::exponential(), ConvexFun::burgers(), 3.0, false}};
  bool sampled_ok = true;
  std::string detail;
  for (const auto& s : samples) {
    const auto pair = make_pair(s.f, s.eta);
    const auto gamma = gamma_closed_form(describe(pair));
    if (s.expect_bounded && (!gamma.gamma || *gamma.gamma != s.gamma)) sampled_ok = false;
    const auto rep = check_growth_conditions(pair, s.gamma);
    if (rep.c_bounded != s.expect_bounded) sampled_ok = false;
    detail += std::string(detail.empty() ? "" : ", ") + s.label + ": max/min " + fmt(rep.c_growth) +
              (rep.c_bounded ? " bounded" : " unbounded");
  }
  CriterionResult out;
  out.passed = table_ok && sampled_ok;
  out.detail = std::string(table_ok ? "closed forms match; " : "closed forms MISMATCH; ") + detail;
  return out;
}

CriterionResult holder(std::uint64_t seed) {
  const auto e1 = holder_exponents(1.0, 1.0, 1.0);
  const auto e2 = holder_exponents(2.0, 1.0, 1.5);
  const bool closed = e1.gamma1 == 0.5 && std::abs(e1.gamma2 - 1.0 / 3.0) <= 1e-15 && e2.gamma1 == 0.5 &&
                      std::abs(e2.gamma2 - 2.0 / 9.0) <= 1e-15;
  const auto run = holder_refinement(e1.gamma1, e1.gamma2, seed, {0.02, 0.01, 0.005});
  bool ratios_ok = true;
  std::string ratios;
  for (double r : run.ratios) {
    if (!(r <= 1.2)) ratios_ok = false;
    ratios += (ratios.empty() ? "" : ", ") + fmt(r);
  }
  CriterionResult out;
  out.passed = closed && ratios_ok;
  out.detail = "(1,1,1) -> (" + fmt(e1.gamma1) + ", " + fmt(e1.gamma2) + "); seminorm " + fmt(run.seminorm.front()) +
               " -> " + fmt(run.seminorm.back()) + ", refinement ratios " + ratios;
  return out;
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "bilinear-form suite";
    case 2: return "hand value of B";
    case 3: return "degeneracy and contact suite";
    case 4: return "Lax equivalence";
    case 5: return "undercompressive constant";
    case 6: return "selection experiment";
    case 7: return "cross-solver convergence";
    case 8: return "Oleinik one-sided bound";
    case 9: return "Kruzkov residual";
    case 10: return "growth-condition gamma table";
    case 11: return "Holder exponents";
  }
  return "unknown";
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = bilinear_suite(seed); break;
      case 2: r = hand_value(); break;
      case 3: r = degeneracy_suite(seed); break;
      case 4: r = lax_equivalence(seed); break;
      case 5: r = undercompressive_constant(); break;
      case 6: r = selection_experiment(seed); break;
      case 7: r = cross_solver(); break;
      case 8: r = oleinik(); break;
      case 9: r = kruzkov(); break;
      case 10: r = growth_table(); break;
      case 11: r = holder(seed); break;
      default: throw Error(ErrorCode::InvalidArgument, "no such criterion");
    }
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = id;
  r.name = criterion_name(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteriaCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s.precision(3);
  s << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " ("
    << std::fixed << r.seconds << " s)";
  return s.str();
}

}  // namespace entropylab
