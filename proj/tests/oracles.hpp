#ifndef ENTROPYLAB_TESTS_ORACLES_HPP_
#define ENTROPYLAB_TESTS_ORACLES_HPP_

// Reference computations that share no code path with the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

// sup_u (p u - f(u)) over [lo, hi]: coarse scan, then ternary search on the
// concave objective.
inline double conjugate(const Fn& f, double p, double lo, double hi, int n = 4000) {
  auto g = [&](double u) { return p * u - f(u); };
  double best_u = lo;
  double best = g(lo);
  const double h = (hi - lo) / n;
  for (int i = 1; i <= n; ++i) {
    const double u = lo + i * h;
    const double v = g(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  double a = std::max(lo, best_u - h);
  double b = std::min(hi, best_u + h);
  for (int k = 0; k < 200; ++k) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (g(m1) < g(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  return std::max(best, g(0.5 * (a + b)));
}

// Central difference; exact for quadratics away from kinks.
inline double slope(const Fn& f, double u, double h = 1e-5) { return (f(u + h) - f(u - h)) / (2.0 * h); }

// Composite Simpson rule for the integral of g over [a, b].
inline double simpson(const Fn& g, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Derivative of a function that is quadratic on [a, b], from values inside [a, b] only.
inline double slope_in(const Fn& f, double x, double a, double b) {
  const double h = std::min(1e-4, 0.25 * (b - a));
  if (x - h < a) return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  if (x + h > b) return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// q(u) = integral over [0, u] of eta' f', split at the given kinks.
inline double entropy_flux(const Fn& f, const Fn& eta, double u, std::vector<double> kinks = {},
                           int n = 4000) {
  const double lo = std::min(0.0, u);
  const double hi = std::max(0.0, u);
  std::vector<double> cuts{lo};
  for (double k : kinks) {
    if (k > lo && k < hi) cuts.push_back(k);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    total += simpson([&](double x) { return slope_in(eta, x, a, b) * slope_in(f, x, a, b); }, a, b, n);
  }
  return u >= 0.0 ? total : -total;
}

// B from its definition: <u q> - <u><q> - (<eta f> - <eta><f>).
inline double bilinear(const std::vector<std::pair<double, double>>& atoms, const Fn& f, const Fn& eta,
                       const Fn& q) {
  double mu = 0, mq = 0, muq = 0, me = 0, mf = 0, mef = 0;
  for (const auto& [u, w] : atoms) {
    mu += w * u;
    mq += w * q(u);
    muq += w * u * q(u);
    me += w * eta(u);
    mf += w * f(u);
    mef += w * eta(u) * f(u);
  }
  return (muq - mu * mq) - (mef - me * mf);
}

// min over a y grid of w0(y) + t fstar((x - y)/t), plus the listed kink
// locations where a grid would miss a corner.
inline double hopf_lax(const Fn& w0, const Fn& fstar, double t, double x, double y_lo, double y_hi,
                       const std::vector<double>& extra = {}, int n = 200000) {
  auto g = [&](double y) { return w0(y) + t * fstar((x - y) / t); };
  double best = std::numeric_limits<double>::infinity();
  const double h = (y_hi - y_lo) / n;
  for (int i = 0; i <= n; ++i) best = std::min(best, g(y_lo + i * h));
  for (double y : extra) best = std::min(best, g(y));
  return best;
}

// Godunov flux: max of f at the endpoints if a > b, else min of f on [a, b]
// by a scan refined with ternary search (f convex).
inline double godunov_flux(const Fn& f, double a, double b, int n = 2000) {
  if (a > b) return std::max(f(a), f(b));
  const double h = (b - a) / n;
  double best_u = a;
  for (int i = 1; i <= n; ++i) {
    if (f(a + i * h) < f(best_u)) best_u = a + i * h;
  }
  double lo = std::max(a, best_u - h);
  double hi = std::min(b, best_u + h);
  for (int k = 0; k < 200; ++k) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) > f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::min({f(a), f(b), f(best_u), f(0.5 * (lo + hi))});
}

}  // namespace oracle

#endif  // ENTROPYLAB_TESTS_ORACLES_HPP_
