#include "entropylab/entropypair.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <sstream>

#include "entropylab/error.hpp"

namespace entropylab {

namespace {

std::string issues_text(const ValidationReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.issues.size(); ++i) {
    if (i) out << "; ";
    out << report.issues[i].message;
  }
  return out.str();
}

double representative(const std::vector<double>& b, std::size_t j) {
  if (b.empty()) return 0.0;
  if (j == 0) return b.front() - 1.0;
  if (j == b.size()) return b.back() + 1.0;
  return 0.5 * (b[j - 1] + b[j]);
}

}  // namespace

EntropyPair::EntropyPair(ConvexFun f, ConvexFun eta, double base)
    : flux_(std::move(f)), entropy_(std::move(eta)), base_(base) {}

EntropyPair make_pair(const ConvexFun& f, const ConvexFun& eta, double base_point) {
  if (!std::isfinite(base_point)) {
    throw Error(ErrorCode::InvalidArgument, "make_pair: base point must be finite");
  }
  const auto fr = validate(f);
  if (!fr.valid) throw Error(ErrorCode::NonConvexFlux, "flux is not convex: " + issues_text(fr));
  const auto er = validate(eta);
  if (!er.valid || !er.strict) {
    throw Error(ErrorCode::NonStrictEntropy,
                er.valid ? std::string("entropy is not strictly convex")
                         : "entropy is not convex: " + issues_text(er));
  }
  for (const auto* g : {&f, &eta}) {
    if (std::isfinite(g->domain_lo()) || std::isfinite(g->domain_hi())) {
      throw Error(ErrorCode::InvalidArgument, "make_pair: functions must be finite on the whole line");
    }
  }

  EntropyPair pair(f, eta, base_point);
  if (!f.is_exact() || !eta.is_exact()) return pair;

  std::vector<double> b = f.breakpoints();
  b.insert(b.end(), eta.breakpoints().begin(), eta.breakpoints().end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());

  std::vector<CubicPiece> pieces(b.size() + 1);
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const double x = representative(b, j);
    const auto& pf = f.pieces()[f.piece_index(x, Side::Plus)];
    const auto& pe = eta.pieces()[eta.piece_index(x, Side::Plus)];
    // (2 af u + cf)(2 ae u + ce) integrated term by term.
    pieces[j].k3 = 4.0 * pf.a * pe.a / 3.0;
    pieces[j].k2 = pf.a * pe.c + pe.a * pf.c;
    pieces[j].k1 = pf.c * pe.c;
  }
  const auto jb = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), base_point) - b.begin());
  pieces[jb].k0 = -pieces[jb].value(base_point);
  for (std::size_t j = jb + 1; j < pieces.size(); ++j) {
    pieces[j].k0 = pieces[j - 1].value(b[j - 1]) - pieces[j].value(b[j - 1]);
  }
  for (std::size_t j = jb; j-- > 0;) {
    pieces[j].k0 = pieces[j + 1].value(b[j]) - pieces[j].value(b[j]);
  }
  pair.q_breaks_ = std::move(b);
  pair.q_pieces_ = std::move(pieces);
  return pair;
}

double integrate_product(const ConvexFun& f, const ConvexFun& eta, double a, double b) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_product(f, eta, b, a);
  auto g = [&](double x) { return eta.derivative(x, Side::Plus) * f.derivative(x, Side::Plus); };
  if (!std::isfinite(g(a)) || !std::isfinite(g(b))) return kInf;

  std::vector<double> cuts{a};
  if (a < 0.0 && 0.0 < b) cuts.push_back(0.0);
  for (const auto* h : {&f, &eta}) {
    for (double x : h->breakpoints()) {
      if (a < x && x < b) cuts.push_back(x);
    }
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) continue;
    try {
      total += gauss_kronrod<double, 15>::integrate(g, cuts[i], cuts[i + 1], 20, 1e-13);
    } catch (const std::exception&) {
      return kInf;
    }
  }
  return total;
}

double EntropyPair::q(double u) const {
  if (!std::isfinite(u)) throw Error(ErrorCode::InvalidArgument, "q: argument must be finite");
  if (exact_q()) {
    const auto j = std::upper_bound(q_breaks_.begin(), q_breaks_.end(), u) - q_breaks_.begin();
    return q_pieces_[static_cast<std::size_t>(j)].value(u);
  }
  return integrate_product(flux_, entropy_, base_, u);
}

double quadratic_form(const EntropyPair& pair, double u) {
  return u * pair.q(u) - pair.f(u) * pair.eta(u);
}

double q_ratio(const EntropyPair& pair, double u) {
  const double q = pair.q(u);
  if (q == 0.0) throw Error(ErrorCode::ZeroEntropyFlux, "q_ratio: entropy flux vanishes at u");
  return quadratic_form(pair, u) / std::abs(q);
}

GrowthDescriptor describe(const EntropyPair& pair) {
  GrowthDescriptor d;
  const auto& fd = pair.flux().descriptor();
  switch (fd.shape) {
    case GrowthShape::Power: d.alpha = fd.exponent; break;
    case GrowthShape::Sublinear: d.alpha = 0.0; d.alpha_tilde = fd.correction; break;
    case GrowthShape::Exponential: d.exp_flux = true; d.alpha = 0.0; break;
    case GrowthShape::Logarithmic: d.alpha = 0.0; break;
  }
  const auto& ed = pair.entropy().descriptor();
  switch (ed.shape) {
    case GrowthShape::Power: d.beta = ed.exponent; break;
    case GrowthShape::Sublinear: d.beta = 0.0; d.beta_tilde = ed.correction; break;
    case GrowthShape::Logarithmic: d.beta = 0.0; d.log_entropy = true; break;
    case GrowthShape::Exponential: d.beta = 0.0; break;
  }
  return d;
}

GammaResult gamma_closed_form(const GrowthDescriptor& d) {
  auto unavailable = [](std::string label, std::string reason) {
    return GammaResult{std::nullopt, std::move(label), std::move(reason)};
  };
  if (d.alpha < 0.0 || d.beta < 0.0) {
    return unavailable("invalid", "exponents must be nonnegative");
  }
  if (d.exp_flux) {
    return unavailable("exponential flux",
                       "Q/eta grows like e^|u| while Q/f grows polynomially; no gamma >= 1 works");
  }
  const auto in_open = [](const std::optional<double>& t) { return t && *t > 0.0 && *t < 1.0; };
  const auto in_half_open = [](const std::optional<double>& t) { return t && *t > 0.0 && *t <= 1.0; };
  if (d.log_entropy) {
    if (d.alpha > 0.0) return {d.alpha + 1.0, "log entropy", ""};
    if (in_open(d.alpha_tilde)) return {1.0, "log entropy, sublinear flux", ""};
    return unavailable("log entropy", "linear flux needs a correction exponent in (0,1)");
  }
  if (d.alpha > 0.0 && d.beta > 0.0) {
    return {std::max((d.alpha + 1.0) / (d.beta + 1.0), 1.0), "power growth", ""};
  }
  if (d.alpha == 0.0 && d.beta > 0.0) {
    if (in_half_open(d.alpha_tilde)) return {1.0, "linear flux", ""};
    return unavailable("linear flux", "flux correction exponent must lie in (0,1]");
  }
  if (d.alpha > 0.0 && d.beta == 0.0) {
    if (in_open(d.beta_tilde)) {
      return {(d.alpha + 1.0 - *d.beta_tilde) / (1.0 - *d.beta_tilde), "linear entropy", ""};
    }
    return unavailable("linear entropy", "entropy correction exponent must lie in (0,1)");
  }
  if (in_open(d.alpha_tilde) && in_open(d.beta_tilde) && *d.alpha_tilde + *d.beta_tilde <= 1.0) {
    return {1.0, "linear flux and entropy", ""};
  }
  return unavailable("linear flux and entropy", "correction exponents must lie in (0,1) with sum at most 1");
}

double gamma_from_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  return std::max(lambda, 1.0);
}

GrowthReport check_growth_conditions(const EntropyPair& pair, double gamma,
                                     const GrowthSampling& sampling) {
  if (!(gamma >= 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be >= 1");
  if (!(sampling.lo > 0.0 && sampling.hi > sampling.lo && sampling.points_per_sign >= 2)) {
    throw Error(ErrorCode::InvalidArgument, "growth sampling must exclude 0 and be increasing");
  }
  GrowthReport report;
  report.gamma = gamma;
  const auto& ed = pair.entropy().descriptor();
  report.beta = ed.shape == GrowthShape::Power ? ed.exponent : 0.0;

  const int n = sampling.points_per_sign;
  const double ratio = std::log(sampling.hi / sampling.lo);
  bool h_increasing = true;
  bool h_large = true;

  for (double sign : {1.0, -1.0}) {
    GrowthSide& side = sign > 0 ? report.plus : report.minus;
    side.sign = sign;
    std::vector<double> c_values;
    for (int j = 0; j < n; ++j) {
      const double au = sampling.lo * std::exp(ratio * j / (n - 1));
      const double u = sign * au;
      const double f = pair.f(u);
      const double eta = pair.eta(u);
      const double q = pair.q(u);
      const double Q = u * q - f * eta;
      if (!std::isfinite(f) || !std::isfinite(eta) || !std::isfinite(q) || !std::isfinite(Q) ||
          q == 0.0 || !(Q > 0.0) || !(f > 0.0) || !(eta > 0.0)) {
        ++report.nonfinite_samples;
        continue;
      }
      report.min_f_over_abs_u = std::min(report.min_f_over_abs_u, f / au);
      report.min_eta_over_power =
          std::min(report.min_eta_over_power, eta / std::pow(au, report.beta + 1.0));
      side.abs_u.push_back(au);
      side.h.push_back(Q / std::abs(q));
      // (Q/eta)/(Q/f)^gamma evaluated in logs to keep it finite.
      const double log_c = std::log(Q) - std::log(eta) - gamma * (std::log(Q) - std::log(f));
      side.c_ratio.push_back(std::exp(log_c));
    }
    const std::size_t m = side.h.size();
    if (m < 2) {
      h_increasing = false;
      h_large = false;
      continue;
    }
    for (std::size_t j = m / 2; j + 1 < m; ++j) {
      if (side.h[j + 1] < side.h[j] * (1.0 - 1e-9)) h_increasing = false;
    }
    if (side.h.back() < report.h_threshold) h_large = false;
    double running_min = kInf;
    for (double c : side.c_ratio) {
      running_min = std::min(running_min, c);
      report.c_growth = std::max(report.c_growth, c / running_min);
      report.c_max = std::max(report.c_max, c);
      report.c_min = std::min(report.c_min, c);
    }
  }
  const std::size_t finite = report.plus.c_ratio.size() + report.minus.c_ratio.size();
  report.linear_growth = finite > 0 && report.min_f_over_abs_u > 0.0 && report.min_eta_over_power > 0.0;
  report.h_eventually_increasing = h_increasing;
  report.h_exceeds_threshold = h_large;
  // A majority of usable samples is required before calling the ratio bounded.
  report.c_bounded = 2 * finite >= static_cast<std::size_t>(n) && std::isfinite(report.c_max) &&
                     report.c_growth < 10.0;
  return report;
}

}  // namespace entropylab
