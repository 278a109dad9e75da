#include "entropylab/meter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "entropylab/error.hpp"

namespace entropylab {

std::string_view to_string(Verdict v) {
  return v == Verdict::Vanishing ? "Vanishing" : "PositiveLowerBound";
}

namespace {

std::vector<double> prepare_radii(std::vector<double> radii) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "at least one radius is required");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
  }
  std::sort(radii.begin(), radii.end(), std::greater<>());
  return radii;
}

void decide(BallDiagnostic& d) {
  d.liminf_estimate = *std::min_element(d.values.begin(), d.values.end());
  if (d.liminf_estimate <= d.rtol) {
    d.verdict = Verdict::Vanishing;
    d.lower_bound = 0.0;
  } else {
    d.verdict = Verdict::PositiveLowerBound;
    d.lower_bound = d.liminf_estimate;
  }
}

// t-length of {t >= 0 : (t - tb)^2 + (x0 + s t - xb)^2 <= r^2}.
double chord_time_length(double x0, double s, double tb, double xb, double r) {
  // In tau = t - tb the condition reads a tau^2 + 2 s e tau + e^2 - r^2 <= 0.
  const double a = 1.0 + s * s;
  const double e = x0 + s * tb - xb;
  const double disc = a * r * r - e * e;
  if (disc <= 0.0) return 0.0;
  const double half = std::sqrt(disc) / a;
  const double mid = tb - s * e / a;
  return std::max(0.0, mid + half - std::max(mid - half, 0.0));
}

// Residual of (eta, q) per cell and step, handed to `visit(n, i, R)`.
template <typename Eta, typename Q, typename Visit>
void for_each_residual(const ConvexFun& f, const GridSolution& sol, Eta eta, Q q, Visit visit) {
  const std::size_t nx = sol.nx;
  std::vector<double> flux(nx + 1);
  for (std::size_t n = 0; n + 1 < sol.t.size(); ++n) {
    const auto& u = sol.u[n];
    const auto& v = sol.u[n + 1];
    const double dt = sol.t[n + 1] - sol.t[n];
    flux[0] = q(u[0]);
    flux[nx] = q(u[nx - 1]);
    for (std::size_t i = 1; i < nx; ++i) flux[i] = q(godunov_state(f, u[i - 1], u[i]));
    for (std::size_t i = 0; i < nx; ++i) {
      const double r = (eta(v[i]) - eta(u[i])) / dt + (flux[i + 1] - flux[i]) / sol.dx;
      visit(n, i, r);
    }
  }
}

}  // namespace

BallDiagnostic fan_measure(const EntropyPair& pair, const WaveFan& fan, double t_bar, double x_bar,
                           std::vector<double> radii) {
  if (!(t_bar > 0.0)) throw Error(ErrorCode::InvalidArgument, "fan_measure: centre needs t > 0");
  BallDiagnostic d;
  d.t_bar = t_bar;
  d.x_bar = x_bar;
  d.radii = prepare_radii(std::move(radii));
  d.rtol = kFanRtol;
  struct Line {
    double speed;
    double rate;
  };
  std::vector<Line> lines;
  for (const auto& w : fan.waves) {
    if (!w.is_jump()) continue;
    const double rate = production_rate(pair, w.state_left, w.state_right).rate;
    if (rate > 0.0) lines.push_back({w.speed_lo, rate});
  }
  for (double r : d.radii) {
    double mu = 0.0;
    for (const auto& l : lines) mu += l.rate * chord_time_length(fan.x0, l.speed, t_bar, x_bar, r);
    d.values.push_back(mu / r);
  }
  decide(d);
  return d;
}

BallDiagnostic grid_measure(const EntropyPair& pair, const GridSolution& sol, double t_bar,
                            double x_bar, std::vector<double> radii) {
  if (sol.t.size() < 2) throw Error(ErrorCode::InvalidArgument, "grid_measure: need at least two times");
  BallDiagnostic d;
  d.t_bar = t_bar;
  d.x_bar = x_bar;
  d.radii = prepare_radii(std::move(radii));
  const double r_min = d.radii.back();
  if (r_min < 4.0 * sol.dx) {
    throw Error(ErrorCode::ResolutionInsufficient, "smallest radius must be at least 4 dx");
  }
  d.rtol = 1e-2 * std::sqrt(sol.dx / r_min);
  std::vector<double> sums(d.radii.size(), 0.0);
  for_each_residual(
      pair.flux(), sol, [&](double u) { return pair.eta(u); }, [&](double u) { return pair.q(u); },
      [&](std::size_t n, std::size_t i, double r) {
        const double tm = 0.5 * (sol.t[n] + sol.t[n + 1]);
        const double xc = sol.x_center(i);
        const double dist2 = (tm - t_bar) * (tm - t_bar) + (xc - x_bar) * (xc - x_bar);
        const double weight = r * sol.dx * (sol.t[n + 1] - sol.t[n]);
        for (std::size_t k = 0; k < d.radii.size(); ++k) {
          if (dist2 <= d.radii[k] * d.radii[k]) sums[k] += weight;
        }
      });
  for (std::size_t k = 0; k < d.radii.size(); ++k) d.values.push_back(std::max(0.0, sums[k]) / d.radii[k]);
  decide(d);
  return d;
}

double kruzkov_residual(const ConvexFun& f, const GridSolution& sol, const std::vector<double>& k_grid) {
  if (sol.t.size() < 2) throw Error(ErrorCode::InvalidArgument, "kruzkov_residual: need at least two times");
  double worst = 0.0;
  for (double k : k_grid) {
    const KruzkovPair kp(f, k);
    for_each_residual(
        f, sol, [&](double u) { return kp.eta(u); }, [&](double u) { return kp.q(u); },
        [&](std::size_t, std::size_t, double r) { worst = std::max(worst, r * sol.dx); });
  }
  return worst;
}

OleinikReport oleinik_check(const GridSolution& sol, double c, const std::vector<double>& t_list) {
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "oleinik_check: needs c > 0");
  OleinikReport report;
  for (double tt : t_list) {
    const std::size_t n = sol.time_index(tt);
    const double t = sol.t[n];
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "oleinik_check: times must be positive");
    const auto& u = sol.u[n];
    double worst = -kInf;
    for (std::size_t i = 0; i < sol.nx; ++i) {
      for (std::size_t j = i + 1; j < sol.nx; ++j) {
        const double slope = (u[j] - u[i]) / (sol.dx * static_cast<double>(j - i));
        worst = std::max(worst, slope);
      }
    }
    const double violation = worst - 1.0 / (c * t);
    const double allowance = 10.0 * sol.dx / t;
    report.times.push_back(t);
    report.violation.push_back(violation);
    report.allowance.push_back(allowance);
    report.max_violation = std::max(report.max_violation, violation);
    if (violation > allowance) ++report.violations;
  }
  return report;
}

HolderExponents holder_exponents(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "holder_exponents: alpha must be >= 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "holder_exponents: beta must be > 0");
  if (!(gamma >= 1.0)) throw Error(ErrorCode::InvalidArgument, "holder_exponents: gamma must be >= 1");
  return {beta / (beta + 1.0), beta / (gamma * (2.0 * beta + 1.0))};
}

std::vector<SamplePair> holder_sample_pairs(std::uint64_t seed, std::size_t count, double t_lo,
                                            double t_hi, double x_lo, double x_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(t_lo, t_hi);
  std::uniform_real_distribution<double> ux(x_lo, x_hi);
  std::uniform_real_distribution<double> scale(-6.0, 0.0);
  std::vector<SamplePair> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    SamplePair p{ut(rng), ux(rng), 0.0, 0.0};
    // Separations spread over several decades so small scales are probed.
    const double h = std::pow(10.0, scale(rng)) * (x_hi - x_lo);
    const double ht = std::pow(10.0, scale(rng)) * (t_hi - t_lo);
    p.x2 = std::clamp(p.x1 + (k % 2 ? h : -h), x_lo, x_hi);
    p.t2 = std::clamp(p.t1 + (k % 3 ? ht : -ht), t_lo, t_hi);
    pairs.push_back(p);
  }
  return pairs;
}

double interpolate_w(const GridSolution& sol, double t, double x) {
  if (!sol.has_w()) throw Error(ErrorCode::InvalidArgument, "interpolate_w: potential not filled");
  if (t < sol.t.front() || t > sol.t.back() || x < sol.x_lo || x > sol.x_hi()) {
    throw Error(ErrorCode::InvalidArgument, "interpolate_w: point outside the grid");
  }
  auto it = std::upper_bound(sol.t.begin(), sol.t.end(), t);
  std::size_t n1 = std::min<std::size_t>(static_cast<std::size_t>(it - sol.t.begin()), sol.t.size() - 1);
  std::size_t n0 = n1 == 0 ? 0 : n1 - 1;
  const double at = n1 == n0 ? 0.0 : (t - sol.t[n0]) / (sol.t[n1] - sol.t[n0]);
  const double pos = (x - sol.x_lo) / sol.dx;
  const auto i0 = std::min<std::size_t>(static_cast<std::size_t>(pos), sol.nx - 1);
  const double ax = pos - static_cast<double>(i0);
  auto row = [&](std::size_t n) { return sol.w[n][i0] + ax * (sol.w[n][i0 + 1] - sol.w[n][i0]); };
  const double w0 = row(n0);
  return w0 + at * (row(n1) - w0);
}

double holder_seminorm(const GridSolution& sol, double gamma1, double gamma2,
                       const std::vector<SamplePair>& pairs) {
  double best = 0.0;
  for (const auto& p : pairs) {
    const double denom = std::pow(std::abs(p.t2 - p.t1), gamma2) + std::pow(std::abs(p.x2 - p.x1), gamma1);
    if (!(denom > 0.0)) continue;
    const double num = std::abs(interpolate_w(sol, p.t2, p.x2) - interpolate_w(sol, p.t1, p.x1));
    best = std::max(best, num / denom);
  }
  return best;
}

}  // namespace entropylab
