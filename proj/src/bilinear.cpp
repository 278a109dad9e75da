#include "entropylab/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "entropylab/error.hpp"
#include "entropylab/io.hpp"
#include "entropylab/random_fun.hpp"

namespace entropylab {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::InvalidArgument, "measure needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.u)) throw Error(ErrorCode::InvalidArgument, "atom location must be finite");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw Error(ErrorCode::InvalidArgument, "atom weights must be positive");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "atom weights must sum to 1");
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.u < y.u; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().u == a.u) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
}

double DiscreteMeasure::mean() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight * a.u;
  return s;
}

double average(const DiscreteMeasure& m, const std::function<double(double)>& h) {
  double s = 0.0;
  for (const auto& a : m.atoms()) {
    const double v = h(a.u);
    if (!std::isfinite(v)) throw Error(ErrorCode::Overflow, "non-finite value at an atom");
    s += a.weight * v;
  }
  if (!std::isfinite(s)) throw Error(ErrorCode::Overflow, "average overflowed");
  return s;
}

double BilinearParts::scale() const {
  return 1.0 + std::max({std::abs(mean_u), std::abs(mean_q), std::abs(mean_uq), std::abs(mean_eta),
                         std::abs(mean_f), std::abs(mean_eta_f)});
}

BilinearParts bilinear_parts(const DiscreteMeasure& m, const EntropyPair& pair) {
  BilinearParts p;
  std::vector<double> q, f, eta;
  for (const auto& a : m.atoms()) {
    q.push_back(pair.q(a.u));
    f.push_back(pair.f(a.u));
    eta.push_back(pair.eta(a.u));
  }
  const auto& atoms = m.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double w = atoms[i].weight;
    p.mean_u += w * atoms[i].u;
    p.mean_q += w * q[i];
    p.mean_uq += w * atoms[i].u * q[i];
    p.mean_eta += w * eta[i];
    p.mean_f += w * f[i];
    p.mean_eta_f += w * eta[i] * f[i];
  }
  // Centered sums keep the two covariances accurate when the means are large.
  double cov_uq = 0.0;
  double cov_ef = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double w = atoms[i].weight;
    cov_uq += w * (atoms[i].u - p.mean_u) * (q[i] - p.mean_q);
    cov_ef += w * (eta[i] - p.mean_eta) * (f[i] - p.mean_f);
  }
  p.value = cov_uq - cov_ef;
  for (double v : {p.mean_q, p.mean_uq, p.mean_eta, p.mean_f, p.mean_eta_f, p.value}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::Overflow, "bilinear form overflowed");
  }
  return p;
}

double bilinear_form(const DiscreteMeasure& m, const EntropyPair& pair) {
  return bilinear_parts(m, pair).value;
}

double p_term(const EntropyPair& pair, double v, double u) {
  if (v == u) return 0.0;
  return (v - u) * (pair.q(v) - pair.q(u)) - (pair.f(v) - pair.f(u)) * (pair.eta(v) - pair.eta(u));
}

double p_average(const DiscreteMeasure& m, const EntropyPair& pair) {
  const double mean = m.mean();
  return average(m, [&](double u) { return p_term(pair, u, mean); });
}

std::pair<double, double> jensen_gaps(const DiscreteMeasure& m, const EntropyPair& pair) {
  const double mean = m.mean();
  const double gf = average(m, [&](double u) { return pair.f(u); }) - pair.f(mean);
  const double ge = average(m, [&](double u) { return pair.eta(u); }) - pair.eta(mean);
  return {gf, ge};
}

namespace {

DiscreteMeasure random_measure(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> loc(-5.0, 5.0);
  std::uniform_real_distribution<double> wt(0.05, 1.0);
  const int n = count(rng);
  std::vector<Atom> atoms(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& a : atoms) {
    a.u = loc(rng);
    a.weight = wt(rng);
    total += a.weight;
  }
  for (auto& a : atoms) a.weight /= total;
  return DiscreteMeasure(std::move(atoms));
}

nlohmann::json measure_json(const DiscreteMeasure& m) {
  auto out = nlohmann::json::array();
  for (const auto& a : m.atoms()) out.push_back({a.u, a.weight});
  return out;
}

}  // namespace

SelfTestResult bilinear_selftest(std::size_t trials, std::uint64_t seed) {
  SelfTestResult result;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  RandomFunOptions flux_opts;
  RandomFunOptions entropy_opts;
  entropy_opts.strict = true;

  auto record = [&](std::size_t trial, const char* check, const DiscreteMeasure& m,
                    const EntropyPair& pair, nlohmann::json values) {
    nlohmann::json j;
    j["trial"] = trial;
    j["check"] = check;
    j["atoms"] = measure_json(m);
    j["pair"] = {{"flux", fun_to_json(pair.flux())}, {"entropy", fun_to_json(pair.entropy())}};
    j["values"] = std::move(values);
    result.failures.push_back({trial, check, j.dump()});
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const auto f = random_convex_exact(rng, flux_opts);
    const auto eta = random_convex_exact(rng, entropy_opts);
    const auto pair = make_pair(f, eta);
    const auto m = random_measure(rng);
    const auto parts = bilinear_parts(m, pair);
    const double tol = 1e-10 * parts.scale();
    const auto [gf, ge] = jensen_gaps(m, pair);
    const double lower = ge * gf;

    if (!(parts.value >= lower - tol && lower >= -tol)) {
      ++result.failures_chain;
      record(t, "nonnegativity", m, pair, {{"B", parts.value}, {"jensen_product", lower}});
    }

    const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
    const auto shifted = make_pair(f.minus_affine(a, b), eta.minus_affine(c, d));
    const auto sp = bilinear_parts(m, shifted);
    if (std::abs(sp.value - parts.value) > 1e-10 * std::max(parts.scale(), sp.scale())) {
      ++result.failures_affine;
      record(t, "affine_invariance", m, pair,
             {{"B", parts.value}, {"B_shifted", sp.value}, {"shift", {a, b, c, d}}});
    }

    const double decomposed = p_average(m, pair) + lower;
    if (std::abs(decomposed - parts.value) > tol) {
      ++result.failures_decomposition;
      record(t, "decomposition", m, pair, {{"B", parts.value}, {"P_plus_Q", decomposed}});
    }
    ++result.trials;
  }

  const std::size_t quad_trials = trials / 10;
  std::uniform_real_distribution<double> curv(0.1, 3.0);
  for (std::size_t t = 0; t < quad_trials; ++t) {
    const double c1 = curv(rng), c2 = curv(rng);
    const auto f = ConvexFun::quadratic(c1).minus_affine(coef(rng), coef(rng));
    const auto eta = ConvexFun::quadratic(c2).minus_affine(coef(rng), coef(rng));
    const auto pair = make_pair(f, eta);
    const auto m = random_measure(rng);
    const auto parts = bilinear_parts(m, pair);
    const double mean = m.mean();
    const double var = average(m, [&](double u) { return (u - mean) * (u - mean); });
    const double mad = average(m, [&](double u) { return std::abs(u - mean); });
    const double k = c1 * c2 / 4.0;
    const double tol = 1e-10 * parts.scale();
    if (!(parts.value >= k * var * var - tol && k * var * var >= k * std::pow(mad, 4) - 1e-10)) {
      ++result.failures_uniform;
      record(t, "uniform_convexity", m, pair,
             {{"B", parts.value}, {"variance_bound", k * var * var}, {"mad_bound", k * std::pow(mad, 4)}});
    }
    ++result.quadratic_trials;
  }
  return result;
}

}  // namespace entropylab
