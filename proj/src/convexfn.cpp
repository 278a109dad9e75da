#include "entropylab/convexfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entropylab/error.hpp"

namespace entropylab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvexFlux: return "NonConvexFlux";
    case ErrorCode::NonStrictEntropy: return "NonStrictEntropy";
    case ErrorCode::ZeroEntropyFlux: return "ZeroEntropyFlux";
    case ErrorCode::InternalEquivalenceViolation: return "InternalEquivalenceViolation";
    case ErrorCode::NotUnderCompressive: return "NotUnderCompressive";
    case ErrorCode::EmptyFeasibleCone: return "EmptyFeasibleCone";
    case ErrorCode::CFLDegenerate: return "CFLDegenerate";
    case ErrorCode::ResolutionInsufficient: return "ResolutionInsufficient";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

namespace {

constexpr double kContinuityTol = 1e-12;
constexpr double kBisectTol = 1e-8;
constexpr double kDerivativeEqTol = 1e-10;

double sgn(double u) { return (u > 0.0) - (u < 0.0); }

// Rounding in (sigma - c)/(2a) should not open a spurious degeneracy
// interval around a point of strict convexity.
double snap_to(double v, double u) {
  if (std::isfinite(v) && std::abs(v - u) <= 1e-14 * (1.0 + std::abs(u))) return u;
  return v;
}

struct Region {
  double lo;
  double hi;
  QuadPiece piece;
};

// Pieces of an Exact function clipped to the effective domain, in order.
std::vector<Region> regions_of(const ConvexFun& fun) {
  const auto& b = fun.breakpoints();
  const auto& p = fun.pieces();
  std::vector<Region> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double lo = i == 0 ? -kInf : b[i - 1];
    double hi = i == b.size() ? kInf : b[i];
    lo = std::max(lo, fun.domain_lo());
    hi = std::min(hi, fun.domain_hi());
    if (lo < hi || (lo == hi && fun.domain_lo() == fun.domain_hi())) {
      out.push_back({lo, hi, p[i]});
    }
  }
  return out;
}

}  // namespace

ConvexFun::ConvexFun() : rep_(ExactRep{}) {}

ConvexFun ConvexFun::quadratic_pieces(std::vector<double> breakpoints,
                                      std::vector<QuadPiece> pieces,
                                      std::optional<bool> strict_claim,
                                      double domain_lo, double domain_hi) {
  if (pieces.size() != breakpoints.size() + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "quadratic_pieces: need exactly one more piece than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i]) || (i > 0 && !(breakpoints[i - 1] < breakpoints[i]))) {
      throw Error(ErrorCode::InvalidArgument,
                  "quadratic_pieces: breakpoints must be finite and strictly increasing");
    }
  }
  for (const auto& q : pieces) {
    if (!std::isfinite(q.a) || !std::isfinite(q.c) || !std::isfinite(q.d)) {
      throw Error(ErrorCode::InvalidArgument, "quadratic_pieces: non-finite coefficient");
    }
  }
  if (std::isnan(domain_lo) || std::isnan(domain_hi) || domain_lo > domain_hi) {
    throw Error(ErrorCode::InvalidArgument, "quadratic_pieces: empty domain");
  }

  ExactRep rep;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const double x = breakpoints[i];
    const double left = pieces[i].value(x);
    const double right = pieces[i + 1].value(x);
    const double scale = std::max({1.0, std::abs(left), std::abs(right)});
    if (std::abs(left - right) <= kContinuityTol * scale) {
      pieces[i + 1].d += left - right;
    } else {
      rep.defects.push_back({i, left - right});
    }
  }
  rep.breakpoints = std::move(breakpoints);
  rep.pieces = std::move(pieces);
  rep.domain_lo = domain_lo;
  rep.domain_hi = domain_hi;

  ConvexFun fun;
  fun.name_ = "quadratic_pieces";
  fun.rep_ = std::move(rep);

  bool strict = true;
  bool tails_quadratic = true;
  for (const auto& r : regions_of(fun)) {
    if (!(r.piece.a > 0.0)) strict = false;
  }
  const auto& ps = fun.pieces();
  if (!(ps.front().a > 0.0) || !(ps.back().a > 0.0)) tails_quadratic = false;
  fun.strict_claim_ = strict_claim.value_or(strict);
  fun.descriptor_ = AsymptoticDescriptor{GrowthShape::Power, tails_quadratic ? 1.0 : 0.0, std::nullopt};
  return fun;
}

ConvexFun ConvexFun::analytic(std::string name, Rule value, Rule derivative,
                              AsymptoticDescriptor descriptor, bool strict_claim,
                              Rule derivative_minus) {
  if (!value || !derivative) {
    throw Error(ErrorCode::InvalidArgument, "analytic: value and derivative rules are required");
  }
  auto rep = std::make_shared<AnalyticRep>();
  rep->value = std::move(value);
  rep->derivative_plus = std::move(derivative);
  rep->derivative_minus = derivative_minus ? std::move(derivative_minus) : rep->derivative_plus;
  ConvexFun fun;
  fun.name_ = std::move(name);
  fun.strict_claim_ = strict_claim;
  fun.descriptor_ = descriptor;
  fun.rep_ = std::shared_ptr<const AnalyticRep>(std::move(rep));
  return fun;
}

ConvexFun ConvexFun::burgers() {
  auto f = quadratic_pieces({}, {{0.5, 0.0, 0.0}});
  f.name_ = "burgers";
  return f;
}

ConvexFun ConvexFun::quadratic(double curvature) {
  if (!(curvature >= 0.0)) throw Error(ErrorCode::InvalidArgument, "quadratic: curvature must be >= 0");
  auto f = quadratic_pieces({}, {{0.5 * curvature, 0.0, 0.0}});
  f.name_ = "quadratic";
  return f;
}

ConvexFun ConvexFun::absolute() {
  auto f = quadratic_pieces({0.0}, {{0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}});
  f.name_ = "abs";
  return f;
}

ConvexFun ConvexFun::flat() {
  auto f = quadratic_pieces({0.0, 1.0}, {{0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.5, -1.0, 0.5}});
  f.name_ = "flat";
  return f;
}

ConvexFun ConvexFun::power(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "power: alpha must be a finite number >= 0");
  }
  if (alpha == 1.0) return burgers();
  if (alpha == 0.0) return absolute();
  const double e = alpha + 1.0;
  auto f = analytic(
      "power",
      [e](double u) { return std::pow(std::abs(u), e) / e; },
      [alpha](double u) { return sgn(u) * std::pow(std::abs(u), alpha); },
      {GrowthShape::Power, alpha, std::nullopt}, true);
  return f;
}

ConvexFun ConvexFun::exponential() {
  return analytic(
      "exp",
      [](double u) { return std::expm1(std::abs(u)) - std::abs(u); },
      [](double u) { return sgn(u) * std::expm1(std::abs(u)); },
      {GrowthShape::Exponential, 1.0, std::nullopt}, true);
}

ConvexFun ConvexFun::sublinear(double tilde) {
  if (!(tilde > 0.0 && tilde <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sublinear: correction exponent must lie in (0,1]");
  }
  Rule value;
  if (tilde == 1.0) {
    value = [](double u) { return std::abs(u) - std::log1p(std::abs(u)); };
  } else {
    value = [tilde](double u) {
      const double a = std::abs(u);
      return a - std::expm1((1.0 - tilde) * std::log1p(a)) / (1.0 - tilde);
    };
  }
  return analytic(
      "sublinear", std::move(value),
      [tilde](double u) { return sgn(u) * -std::expm1(-tilde * std::log1p(std::abs(u))); },
      {GrowthShape::Sublinear, 0.0, tilde}, true);
}

ConvexFun ConvexFun::log_entropy() {
  return analytic(
      "log_entropy",
      [](double u) {
        const double a = std::abs(u);
        return (1.0 + a) * std::log1p(a) - a;
      },
      [](double u) { return sgn(u) * std::log1p(std::abs(u)); },
      {GrowthShape::Logarithmic, 0.0, std::nullopt}, true);
}

ConvexFun::Backend ConvexFun::backend() const {
  return std::holds_alternative<ExactRep>(rep_) ? Backend::Exact : Backend::Analytic;
}

std::size_t ConvexFun::piece_index(double u, Side side) const {
  const auto& b = std::get<ExactRep>(rep_).breakpoints;
  auto it = side == Side::Plus ? std::upper_bound(b.begin(), b.end(), u)
                               : std::lower_bound(b.begin(), b.end(), u);
  return static_cast<std::size_t>(it - b.begin());
}

double ConvexFun::operator()(double u) const {
  if (!std::isfinite(u)) {
    throw Error(ErrorCode::InvalidArgument, "eval: argument must be finite");
  }
  if (const auto* ex = std::get_if<ExactRep>(&rep_)) {
    if (u < ex->domain_lo || u > ex->domain_hi) return kInf;
    return ex->pieces[piece_index(u, Side::Plus)].value(u);
  }
  return std::get<1>(rep_)->value(u);
}

double ConvexFun::derivative(double u, Side side) const {
  if (const auto* ex = std::get_if<ExactRep>(&rep_)) {
    if (u < ex->domain_lo || (u == ex->domain_lo && side == Side::Minus)) return -kInf;
    if (u > ex->domain_hi || (u == ex->domain_hi && side == Side::Plus)) return kInf;
    const auto& b = ex->breakpoints;
    const auto it = std::lower_bound(b.begin(), b.end(), u);
    if (it != b.end() && *it == u) {
      // Roundoff may leave a zero jump slightly negative; keep f'(u-0) <= f'(u+0).
      const auto i = static_cast<std::size_t>(it - b.begin());
      const double left = ex->pieces[i].slope(u);
      const double right = ex->pieces[i + 1].slope(u);
      return side == Side::Minus ? std::min(left, right) : std::max(left, right);
    }
    return ex->pieces[piece_index(u, side)].slope(u);
  }
  const auto& rep = *std::get<1>(rep_);
  return side == Side::Minus ? rep.derivative_minus(u) : rep.derivative_plus(u);
}

const std::vector<double>& ConvexFun::breakpoints() const {
  static const std::vector<double> empty;
  const auto* ex = std::get_if<ExactRep>(&rep_);
  return ex ? ex->breakpoints : empty;
}

const std::vector<QuadPiece>& ConvexFun::pieces() const {
  static const std::vector<QuadPiece> empty;
  const auto* ex = std::get_if<ExactRep>(&rep_);
  return ex ? ex->pieces : empty;
}

const std::vector<ConvexFun::Defect>& ConvexFun::continuity_defects() const {
  static const std::vector<Defect> empty;
  const auto* ex = std::get_if<ExactRep>(&rep_);
  return ex ? ex->defects : empty;
}

double ConvexFun::domain_lo() const {
  const auto* ex = std::get_if<ExactRep>(&rep_);
  return ex ? ex->domain_lo : -kInf;
}

double ConvexFun::domain_hi() const {
  const auto* ex = std::get_if<ExactRep>(&rep_);
  return ex ? ex->domain_hi : kInf;
}

const AsymptoticDescriptor& ConvexFun::descriptor() const { return descriptor_; }

ConvexFun ConvexFun::minus_affine(double slope, double offset) const {
  if (const auto* ex = std::get_if<ExactRep>(&rep_)) {
    auto pieces = ex->pieces;
    for (auto& q : pieces) {
      q.c -= slope;
      q.d -= offset;
    }
    auto out = quadratic_pieces(ex->breakpoints, std::move(pieces), strict_claim_,
                                ex->domain_lo, ex->domain_hi);
    out.name_ = name_ + "-affine";
    out.descriptor_ = descriptor_;
    return out;
  }
  auto rep = std::get<1>(rep_);
  return analytic(
      name_ + "-affine",
      [rep, slope, offset](double u) { return rep->value(u) - slope * u - offset; },
      [rep, slope](double u) { return rep->derivative_plus(u) - slope; }, descriptor_,
      strict_claim_, [rep, slope](double u) { return rep->derivative_minus(u) - slope; });
}

ExtendedInterval derivative_range(const ConvexFun& fun) {
  if (fun.is_exact()) {
    const auto regions = regions_of(fun);
    const auto& first = regions.front();
    const auto& last = regions.back();
    double lo = -kInf;
    double hi = kInf;
    if (std::isinf(first.lo) && first.piece.a == 0.0) lo = first.piece.c;
    if (std::isinf(last.hi) && last.piece.a == 0.0) hi = last.piece.c;
    return {lo, hi, false};
  }
  const auto& desc = fun.descriptor();
  const bool bounded = desc.shape == GrowthShape::Sublinear ||
                       (desc.shape == GrowthShape::Power && desc.exponent == 0.0);
  if (!bounded) return {-kInf, kInf, false};
  return {fun.derivative(-1e300, Side::Minus), fun.derivative(1e300, Side::Plus), true};
}

namespace {

ExtendedInterval exact_degeneracy(const ConvexFun& fun, double u, double sigma) {
  const auto regions = regions_of(fun);
  // inf{v : f'(v+0) >= sigma}
  double inf_v = kInf;
  for (const auto& r : regions) {
    const auto& q = r.piece;
    double v = kInf;
    if (q.a > 0.0) {
      v = std::max(r.lo, (sigma - q.c) / (2.0 * q.a));
      if (!(v < r.hi)) v = kInf;
    } else if (q.c >= sigma) {
      v = r.lo;
    }
    if (v < kInf) {
      inf_v = v;
      break;
    }
  }
  // sup{v : f'(v-0) <= sigma}
  double sup_v = -kInf;
  for (auto it = regions.rbegin(); it != regions.rend(); ++it) {
    const auto& q = it->piece;
    double v = -kInf;
    if (q.a > 0.0) {
      v = std::min(it->hi, (sigma - q.c) / (2.0 * q.a));
      if (!(v > it->lo)) v = -kInf;
    } else if (q.c <= sigma) {
      v = it->hi;
    }
    if (v > -kInf) {
      sup_v = v;
      break;
    }
  }
  inf_v = std::min(snap_to(inf_v, u), u);
  sup_v = std::max(snap_to(sup_v, u), u);
  return {inf_v, sup_v, false};
}

// Walks away from u in direction dir until f' leaves sigma, then bisects.
double analytic_degeneracy_edge(const ConvexFun& fun, double u, double sigma, double dir,
                                bool& approximate) {
  const double tol = kDerivativeEqTol * std::max(1.0, std::abs(sigma));
  auto same = [&](double v) {
    const double d = fun.derivative(v, dir > 0 ? Side::Minus : Side::Plus);
    return std::abs(d - sigma) <= tol;
  };
  double good = u;
  double step = kBisectTol;
  double bad = u + dir * step;
  while (same(bad)) {
    good = bad;
    step *= 2.0;
    if (step > 1e12) {
      approximate = true;
      return dir * kInf;
    }
    bad = u + dir * step;
  }
  int iterations = 0;
  while (std::abs(bad - good) > kBisectTol) {
    const double mid = 0.5 * (good + bad);
    if (same(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
    if (++iterations > 200) {
      approximate = true;
      break;
    }
  }
  return good;
}

}  // namespace

ExtendedInterval degeneracy_interval(const ConvexFun& fun, double u, Side side) {
  if (!std::isfinite(u)) throw Error(ErrorCode::InvalidArgument, "degeneracy_interval: u must be finite");
  const double sigma = fun.derivative(u, side);
  if (fun.is_exact()) return exact_degeneracy(fun, u, sigma);
  if (fun.strict_claim()) return {u, u, false};
  ExtendedInterval out{u, u, false};
  out.lo = analytic_degeneracy_edge(fun, u, sigma, -1.0, out.approximate);
  out.hi = analytic_degeneracy_edge(fun, u, sigma, 1.0, out.approximate);
  return out;
}

double conjugate(const ConvexFun& fun, double p) {
  if (std::isnan(p)) throw Error(ErrorCode::InvalidArgument, "conjugate: p is NaN");
  if (fun.is_exact()) {
    double best = -kInf;
    for (const auto& r : regions_of(fun)) {
      const auto& q = r.piece;
      double value;
      if (q.a > 0.0) {
        const double star = (p - q.c) / (2.0 * q.a);
        if (star > r.lo && star < r.hi) {
          value = (p - q.c) * (p - q.c) / (4.0 * q.a) - q.d;
        } else {
          const double end = star <= r.lo ? r.lo : r.hi;
          value = p * end - q.value(end);
        }
      } else if (q.a == 0.0) {
        const double g = p - q.c;
        if (g == 0.0) {
          value = -q.d;
        } else {
          const double end = g > 0.0 ? r.hi : r.lo;
          value = std::isinf(end) ? kInf : g * end - q.d;
        }
      } else {
        auto at = [&](double end) { return std::isinf(end) ? kInf : p * end - q.value(end); };
        value = std::max(at(r.lo), at(r.hi));
      }
      best = std::max(best, value);
    }
    return best;
  }

  // Analytic: bracket the maximizer of p*u - f(u), then bisect on f'.
  auto below = [&](double v) { return fun.derivative(v, Side::Minus) <= p; };
  double lo = -1.0;
  double hi = 1.0;
  while (!(fun.derivative(lo, Side::Plus) <= p)) {
    lo *= 2.0;
    if (lo < -1e15) return kInf;
  }
  while (below(hi)) {
    hi *= 2.0;
    if (hi > 1e15) return kInf;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::max(p * lo - fun(lo), p * hi - fun(hi));
}

ConvexFun legendre_transform(const ConvexFun& fun) {
  if (!fun.is_exact()) {
    throw Error(ErrorCode::InvalidArgument, "legendre_transform: Exact backend required");
  }
  const auto regions = regions_of(fun);
  if (fun.domain_lo() == fun.domain_hi()) {
    const double x = fun.domain_lo();
    return ConvexFun::quadratic_pieces({}, {{0.0, x, -fun(x)}});
  }

  struct Seg {
    double p_lo;
    double p_hi;
    QuadPiece piece;
  };
  std::vector<Seg> segs;
  auto add = [&](double lo, double hi, QuadPiece q) {
    if (lo < hi) segs.push_back({lo, hi, q});
  };
  auto kink = [&](double x) { return QuadPiece{0.0, x, -fun(x)}; };

  const auto& first = regions.front();
  if (std::isfinite(first.lo)) add(-kInf, first.piece.slope(first.lo), kink(first.lo));
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const auto& r = regions[k];
    const auto& q = r.piece;
    if (q.a > 0.0) {
      const double s_lo = std::isfinite(r.lo) ? q.slope(r.lo) : -kInf;
      const double s_hi = std::isfinite(r.hi) ? q.slope(r.hi) : kInf;
      add(s_lo, s_hi, {1.0 / (4.0 * q.a), -q.c / (2.0 * q.a), q.c * q.c / (4.0 * q.a) - q.d});
    }
    if (k + 1 < regions.size()) {
      const double x = r.hi;
      add(q.slope(x), regions[k + 1].piece.slope(x), kink(x));
    }
  }
  const auto& last = regions.back();
  if (std::isfinite(last.hi)) add(last.piece.slope(last.hi), kInf, kink(last.hi));

  const auto range = derivative_range(fun);
  if (segs.empty()) {
    // f is affine on the whole line.
    return ConvexFun::quadratic_pieces({}, {{0.0, 0.0, -first.piece.d}}, std::nullopt,
                                       range.lo, range.hi);
  }
  std::vector<double> bps;
  std::vector<QuadPiece> pieces;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    // Segments swallowed by roundoff in the slopes are dropped.
    if (k + 1 < segs.size() && !bps.empty() && !(segs[k].p_hi > bps.back())) continue;
    pieces.push_back(segs[k].piece);
    if (k + 1 < segs.size()) bps.push_back(segs[k].p_hi);
  }
  auto out = ConvexFun::quadratic_pieces(std::move(bps), std::move(pieces), std::nullopt,
                                         range.lo, range.hi);
  return out;
}

double derivative_inverse(const ConvexFun& fun, double xi, double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "derivative_inverse: empty range");
  if (fun.is_exact()) {
    const auto regions = regions_of(fun);
    for (auto it = regions.rbegin(); it != regions.rend(); ++it) {
      const double rlo = std::max(it->lo, lo);
      const double rhi = std::min(it->hi, hi);
      if (!(rlo < rhi)) continue;
      const auto& q = it->piece;
      if (q.a > 0.0) {
        const double v = std::min(rhi, (xi - q.c) / (2.0 * q.a));
        if (v > rlo) return v;
      } else if (q.c <= xi) {
        return rhi;
      }
    }
    return lo;
  }
  auto ok = [&](double v) { return fun.derivative(v, Side::Minus) <= xi; };
  double a = lo;
  double b = hi;
  if (std::isinf(a) || std::isinf(b)) {
    // Bracket inside a finite window first.
    double left = std::isinf(a) ? -1.0 : a;
    double right = std::isinf(b) ? 1.0 : b;
    while (std::isinf(a) && ok(left)) {
      right = left;
      left *= 2.0;
      if (left < -1e300) return -kInf;
    }
    while (std::isinf(b) && ok(right)) {
      left = right;
      right *= 2.0;
      if (right > 1e300) return kInf;
    }
    a = std::isinf(a) ? left : a;
    b = std::isinf(b) ? right : b;
    if (!ok(a)) return std::isinf(lo) ? -kInf : lo;
  }
  if (ok(b)) return b;
  if (!ok(a)) return a;
  for (int i = 0; i < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
    const double mid = 0.5 * (a + b);
    if (ok(mid)) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return a;
}

double minimizer(const ConvexFun& fun) { return derivative_inverse(fun, 0.0, -kInf, kInf); }

ValidationReport validate(const ConvexFun& fun) {
  ValidationReport report;
  auto issue = [&](IssueKind kind, std::size_t index, std::string message) {
    report.valid = false;
    report.issues.push_back({kind, index, std::move(message)});
  };

  if (fun.is_exact()) {
    const auto& b = fun.breakpoints();
    const auto& p = fun.pieces();
    bool strict = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double lo = i == 0 ? -kInf : b[i - 1];
      const double hi = i == b.size() ? kInf : b[i];
      if (hi < fun.domain_lo() || lo > fun.domain_hi()) continue;
      if (p[i].a < 0.0) {
        std::ostringstream msg;
        msg << "piece " << i << " is not convex (a=" << p[i].a << ")";
        issue(IssueKind::NonConvexPiece, i, msg.str());
      }
      if (!(p[i].a > 0.0)) strict = false;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < fun.domain_lo() || b[i] > fun.domain_hi()) continue;
      const double left = p[i].slope(b[i]);
      const double right = p[i + 1].slope(b[i]);
      if (left > right + 1e-12 * std::max({1.0, std::abs(left), std::abs(right)})) {
        std::ostringstream msg;
        msg << "derivative decreases at breakpoint " << i << " (u=" << b[i] << ": " << left
            << " > " << right << ")";
        issue(IssueKind::DerivativeDecrease, i, msg.str());
      }
    }
    for (const auto& defect : fun.continuity_defects()) {
      std::ostringstream msg;
      msg << "pieces disagree at breakpoint " << defect.breakpoint << " by " << defect.mismatch;
      issue(IssueKind::Discontinuity, defect.breakpoint, msg.str());
    }
    report.strict = report.valid && strict;
  } else {
    report.sampled = true;
    std::vector<double> samples{0.0};
    for (int k = -60; k <= 60; ++k) {
      const double v = std::pow(10.0, k / 20.0);
      samples.push_back(v);
      samples.push_back(-v);
    }
    std::sort(samples.begin(), samples.end());
    bool strict = true;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const double dm = fun.derivative(samples[j], Side::Minus);
      const double dp = fun.derivative(samples[j], Side::Plus);
      if (!std::isfinite(dm) || !std::isfinite(dp)) continue;
      if (dm > dp + 1e-12 * std::max(1.0, std::abs(dp))) {
        issue(IssueKind::DerivativeDecrease, j, "one-sided derivatives out of order at a sample");
      }
      if (j + 1 < samples.size()) {
        const double next = fun.derivative(samples[j + 1], Side::Minus);
        if (!std::isfinite(next)) continue;
        if (dp > next + 1e-12 * std::max(1.0, std::abs(next))) {
          std::ostringstream msg;
          msg << "derivative decreases between samples " << samples[j] << " and "
              << samples[j + 1];
          issue(IssueKind::DerivativeDecrease, j, msg.str());
        }
        if (!(next > dp)) strict = false;
      }
    }
    report.strict = report.valid && strict;
  }
  if (fun.strict_claim() && !report.strict && report.valid) {
    issue(IssueKind::FalseStrictFlag, 0, "strict convexity claimed but an affine stretch exists");
  }
  return report;
}

}  // namespace entropylab
