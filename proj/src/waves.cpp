#include "entropylab/waves.hpp"

#include <algorithm>
#include <cmath>

#include "entropylab/error.hpp"

namespace entropylab {

std::string_view to_string(WaveType type) {
  switch (type) {
    case WaveType::Shock: return "shock";
    case WaveType::Contact: return "contact";
    case WaveType::Rarefaction: return "rarefaction";
  }
  return "unknown";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::LaxShock: return "LaxShock";
    case Classification::Contact: return "Contact";
    case Classification::UnderCompressive: return "UnderCompressive";
    case Classification::NonConvexReject: return "NonConvexReject";
  }
  return "unknown";
}

namespace {

void require_convex(const ConvexFun& f) {
  if (!validate(f).valid) throw Error(ErrorCode::NonConvexFlux, "flux fails convexity validation");
}

double rh_speed(const ConvexFun& f, double a, double b) { return (f(a) - f(b)) / (a - b); }

bool affine_between(const ConvexFun& f, double lo, double hi) {
  return degeneracy_interval(f, lo, Side::Plus).hi >= hi;
}

}  // namespace

WaveFan solve_riemann(const ConvexFun& f, double u_left, double u_right, double x0) {
  if (!std::isfinite(u_left) || !std::isfinite(u_right) || !std::isfinite(x0)) {
    throw Error(ErrorCode::InvalidArgument, "solve_riemann: states must be finite");
  }
  require_convex(f);
  WaveFan fan{f, u_left, u_right, x0, {}, true};
  if (u_left == u_right) return fan;

  if (u_left > u_right) {
    const double s = rh_speed(f, u_left, u_right);
    const auto type = affine_between(f, u_right, u_left) ? WaveType::Contact : WaveType::Shock;
    fan.waves.push_back({type, s, s, u_left, u_right});
    return fan;
  }

  if (!f.is_exact()) {
    fan.waves.push_back({WaveType::Rarefaction, f.derivative(u_left, Side::Plus),
                         f.derivative(u_right, Side::Minus), u_left, u_right});
    return fan;
  }

  // Rarefaction through each strictly convex stretch, contact across each
  // affine one; kinks of f leave a constant state over a speed interval.
  const auto& b = f.breakpoints();
  const auto& pieces = f.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double lo = std::max(u_left, i == 0 ? -kInf : b[i - 1]);
    const double hi = std::min(u_right, i == b.size() ? kInf : b[i]);
    if (!(lo < hi)) continue;
    const auto& q = pieces[i];
    if (q.a > 0.0) {
      fan.waves.push_back({WaveType::Rarefaction, q.slope(lo), q.slope(hi), lo, hi});
    } else {
      fan.waves.push_back({WaveType::Contact, q.c, q.c, lo, hi});
    }
  }
  // Slopes of neighbouring pieces may disagree in the last bit at a breakpoint.
  double floor = -kInf;
  for (auto& w : fan.waves) {
    w.speed_lo = std::max(w.speed_lo, floor);
    w.speed_hi = std::max(w.speed_hi, w.speed_lo);
    floor = w.speed_hi;
  }
  return fan;
}

WaveFan undercompressive_fan(const ConvexFun& f, double u_left, double u_right, double x0) {
  require_convex(f);
  if (!(u_left < u_right) ||
      !(f.derivative(u_right, Side::Minus) > f.derivative(u_left, Side::Plus))) {
    throw Error(ErrorCode::NotUnderCompressive,
                "undercompressive jump needs u- < u+ and f'(u+ - 0) > f'(u- + 0)");
  }
  const double s = rh_speed(f, u_left, u_right);
  WaveFan fan{f, u_left, u_right, x0, {}, false};
  fan.waves.push_back({WaveType::Shock, s, s, u_left, u_right});
  return fan;
}

double sample_fan(const WaveFan& fan, double t, double x) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample_fan: t must be positive");
  const double xi = (x - fan.x0) / t;
  double state = fan.left;
  for (const auto& w : fan.waves) {
    if (xi < w.speed_lo) return state;
    if (w.type == WaveType::Rarefaction && xi < w.speed_hi) {
      return derivative_inverse(fan.flux, xi, w.state_left, w.state_right);
    }
    state = w.state_right;
  }
  return state;
}

Production production_rate(const EntropyPair& pair, double u_minus, double u_plus) {
  if (u_minus == u_plus) throw Error(ErrorCode::InvalidArgument, "production_rate: states coincide");
  const double s = rh_speed(pair.flux(), u_plus, u_minus);
  const double rate = (pair.q(u_plus) - pair.q(u_minus)) - s * (pair.eta(u_plus) - pair.eta(u_minus));
  return {s, rate};
}

double classification_tolerance(double u_minus, double u_plus) {
  return 1e-10 * (1.0 + std::abs(u_plus) + std::abs(u_minus));
}

DiscontinuityReport classify(const EntropyPair& pair, double u_minus, double u_plus) {
  const auto& f = pair.flux();
  const auto prod = production_rate(pair, u_minus, u_plus);
  DiscontinuityReport report{prod.speed, u_minus, u_plus, prod.rate, Classification::Contact};
  if (!validate(f).valid) {
    report.classification = Classification::NonConvexReject;
    return report;
  }
  const double tol = classification_tolerance(u_minus, u_plus);
  const bool contact = degeneracy_interval(f, u_plus, Side::Minus).contains(u_minus) ||
                       degeneracy_interval(f, u_plus, Side::Plus).contains(u_minus);
  if (contact) {
    if (std::abs(prod.rate) > tol) {
      throw Error(ErrorCode::InternalEquivalenceViolation,
                  "contact jump with nonzero entropy production");
    }
    return report;
  }
  const bool lax = f.derivative(u_minus, Side::Minus) > f.derivative(u_plus, Side::Plus);
  if ((lax && prod.rate > tol) || (!lax && prod.rate < -tol)) {
    throw Error(ErrorCode::InternalEquivalenceViolation,
                "entropy production sign disagrees with the Lax inequality");
  }
  report.classification = lax ? Classification::LaxShock : Classification::UnderCompressive;
  return report;
}

UndercompressiveBudget undercompressive_budget(const EntropyPair& pair, double u_minus,
                                               double u_plus, double c0) {
  const auto& f = pair.flux();
  if (!(u_plus > u_minus) ||
      !(f.derivative(u_plus, Side::Minus) > f.derivative(u_minus, Side::Plus))) {
    throw Error(ErrorCode::NotUnderCompressive,
                "budget needs u+ > u- and f'(u+ - 0) > f'(u- + 0)");
  }
  const double s0 = rh_speed(f, u_plus, u_minus);
  // integral of eta' f' is q(u+) - q(u-); integral of eta' s0 is s0 [eta].
  const double d = (pair.q(u_plus) - pair.q(u_minus)) - s0 * (pair.eta(u_plus) - pair.eta(u_minus));
  return {s0, d, d > 0.0 && d <= 0.5 * c0};
}

}  // namespace entropylab
