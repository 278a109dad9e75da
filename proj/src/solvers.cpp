#include "entropylab/solvers.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "entropylab/error.hpp"

namespace entropylab {

std::size_t GridSolution::time_index(double tt) const {
  if (t.empty()) throw Error(ErrorCode::InvalidArgument, "solution has no stored times");
  auto it = std::lower_bound(t.begin(), t.end(), tt);
  if (it == t.end()) return t.size() - 1;
  if (it == t.begin()) return 0;
  const auto hi = static_cast<std::size_t>(it - t.begin());
  return (tt - t[hi - 1] <= t[hi] - tt) ? hi - 1 : hi;
}

std::pair<double, double> GridSolution::traces(std::size_t n, std::size_t face) const {
  const auto& row = u.at(n);
  const std::size_t left = face == 0 ? 0 : face - 1;
  const std::size_t right = std::min(face, nx - 1);
  return {row[left], row[right]};
}

double GridSolution::mass(std::size_t n) const {
  double s = 0.0;
  for (double v : u.at(n)) s += v;
  return s * dx;
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> nodes, std::vector<double> values,
                                 double slope_left, double slope_right)
    : nodes_(std::move(nodes)),
      values_(std::move(values)),
      slope_left_(slope_left),
      slope_right_(slope_right) {
  if (nodes_.empty() || nodes_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidArgument, "piecewise-linear potential needs matching nodes and values");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i]) ||
        (i > 0 && !(nodes_[i - 1] < nodes_[i]))) {
      throw Error(ErrorCode::InvalidArgument, "potential nodes must be finite and increasing");
    }
  }
  if (!std::isfinite(slope_left_) || !std::isfinite(slope_right_)) {
    throw Error(ErrorCode::InvalidArgument, "potential far-field slopes must be finite");
  }
}

PiecewiseLinear::Segment PiecewiseLinear::segment(std::size_t k) const {
  const std::size_t n = nodes_.size();
  if (k == 0) return {-kInf, nodes_.front(), slope_left_, nodes_.front(), values_.front()};
  if (k == n) return {nodes_.back(), kInf, slope_right_, nodes_.back(), values_.back()};
  const double slope = (values_[k] - values_[k - 1]) / (nodes_[k] - nodes_[k - 1]);
  return {nodes_[k - 1], nodes_[k], slope, nodes_[k - 1], values_[k - 1]};
}

double PiecewiseLinear::operator()(double y) const {
  const auto k = static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), y) - nodes_.begin());
  const auto s = segment(k);
  return s.anchor_value + s.slope * (y - s.anchor);
}

InitialData InitialData::riemann(double u_left, double u_right, double x0, double x_lo, double x_hi) {
  return piecewise_constant({x0}, {u_left, u_right}, x_lo, x_hi);
}

InitialData InitialData::piecewise_constant(std::vector<double> breaks, std::vector<double> values,
                                            double x_lo, double x_hi) {
  if (values.size() != breaks.size() + 1) {
    throw Error(ErrorCode::InvalidArgument, "initial data: need one more value than breaks");
  }
  if (!(x_lo < x_hi) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
    throw Error(ErrorCode::InvalidArgument, "initial data: window must be finite and nonempty");
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i]) || (i > 0 && !(breaks[i - 1] < breaks[i]))) {
      throw Error(ErrorCode::InvalidArgument, "initial data: breaks must be increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "initial data: values must be finite");
  }
  InitialData d;
  d.kind = Kind::PiecewiseConstant;
  d.breaks = std::move(breaks);
  d.values = std::move(values);
  d.x_lo = x_lo;
  d.x_hi = x_hi;
  return d;
}

InitialData InitialData::sampled(std::function<double(double)> rule, double x_lo, double x_hi,
                                 std::function<double(double)> antiderivative) {
  if (!rule) throw Error(ErrorCode::InvalidArgument, "initial data: sampled rule required");
  if (!(x_lo < x_hi) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
    throw Error(ErrorCode::InvalidArgument, "initial data: window must be finite and nonempty");
  }
  InitialData d;
  d.kind = Kind::Sampled;
  d.rule = std::move(rule);
  d.antiderivative = std::move(antiderivative);
  d.x_lo = x_lo;
  d.x_hi = x_hi;
  return d;
}

double InitialData::far_left() const {
  return kind == Kind::PiecewiseConstant ? values.front() : rule(x_lo);
}

double InitialData::far_right() const {
  return kind == Kind::PiecewiseConstant ? values.back() : rule(x_hi);
}

double InitialData::value(double x) const {
  if (kind == Kind::Sampled) return rule(x);
  const auto k = std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin();
  return values[static_cast<std::size_t>(k)];
}

double InitialData::cell_average(double a, double b) const {
  if (kind == Kind::PiecewiseConstant) {
    const auto lo = std::upper_bound(breaks.begin(), breaks.end(), a);
    if (lo == breaks.end() || *lo >= b) return values[static_cast<std::size_t>(lo - breaks.begin())];
  }
  return integral(a, b) / (b - a);
}

double InitialData::integral(double a, double b) const {
  if (a == b) return 0.0;
  if (a > b) return -integral(b, a);
  if (kind == Kind::PiecewiseConstant) {
    double s = 0.0;
    double pos = a;
    for (std::size_t k = 0; k < values.size() && pos < b; ++k) {
      const double end = k < breaks.size() ? std::min(breaks[k], b) : b;
      if (end > pos) {
        s += values[k] * (end - pos);
        pos = end;
      }
    }
    return s;
  }
  if (antiderivative) return antiderivative(b) - antiderivative(a);
  std::vector<double> cuts{a};
  for (double x : singular_points) {
    if (a < x && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    s += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(rule, cuts[i], cuts[i + 1], 15, 1e-12);
  }
  return s;
}

std::pair<double, double> InitialData::range() const {
  if (kind == Kind::PiecewiseConstant) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
  }
  double lo = kInf;
  double hi = -kInf;
  constexpr int n = 4096;
  for (int i = 0; i <= n; ++i) {
    const double v = rule(x_lo + (x_hi - x_lo) * i / n);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double x : singular_points) {
    if (x_lo <= x && x <= x_hi) {
      lo = std::min(lo, rule(x));
      hi = std::max(hi, rule(x));
    }
  }
  return {lo, hi};
}

PiecewiseLinear initial_potential(const InitialData& data, double spacing) {
  std::vector<double> nodes;
  std::vector<double> values;
  if (data.kind == InitialData::Kind::PiecewiseConstant) {
    nodes = data.breaks.empty() ? std::vector<double>{data.x_lo} : data.breaks;
    for (double y : nodes) values.push_back(data.integral(data.x_lo, y));
  } else {
    if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "potential node spacing must be positive");
    const auto n = static_cast<std::size_t>(std::ceil((data.x_hi - data.x_lo) / spacing - 1e-9));
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double y = k == n ? data.x_hi : data.x_lo + static_cast<double>(k) * spacing;
      if (k > 0) acc += data.integral(nodes.back(), y);
      nodes.push_back(y);
      values.push_back(acc);
    }
  }
  return PiecewiseLinear(std::move(nodes), std::move(values), data.far_left(), data.far_right());
}

namespace {

// f* with its effective domain, evaluated in closed form for Exact fluxes.
class ConjugateKernel {
 public:
  explicit ConjugateKernel(const ConvexFun& f) : f_(f) {
    const auto range = derivative_range(f);
    lo_ = range.lo;
    hi_ = range.hi;
    if (f.is_exact()) fstar_.emplace(legendre_transform(f));
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double operator()(double p) const { return fstar_ ? (*fstar_)(p) : conjugate(f_, p); }
  const ConvexFun& flux() const { return f_; }

 private:
  const ConvexFun& f_;
  std::optional<ConvexFun> fstar_;
  double lo_;
  double hi_;
};

// On a linear stretch of w0 with slope sigma the objective is
// t (f*(p) - sigma p) + const in p = (x - y)/t, minimized on the subdifferential
// [f'(sigma-0), f'(sigma+0)]; clamping it into the admissible p-range gives
// the exact minimum over the stretch.
double hopf_lax_kernel(const ConjugateKernel& kernel, const PiecewiseLinear& w0, double t, double x) {
  if (t == 0.0) return w0(x);
  const auto& f = kernel.flux();
  double best = kInf;
  for (std::size_t k = 0; k < w0.segments(); ++k) {
    const auto seg = w0.segment(k);
    const double plo = std::max(std::isinf(seg.hi) ? -kInf : (x - seg.hi) / t, kernel.lo());
    const double phi = std::min(std::isinf(seg.lo) ? kInf : (x - seg.lo) / t, kernel.hi());
    if (!(plo <= phi)) continue;
    const double left = f.derivative(seg.slope, Side::Minus);
    const double right = f.derivative(seg.slope, Side::Plus);
    double p;
    if (right < plo) {
      p = plo;
    } else if (left > phi) {
      p = phi;
    } else {
      p = std::max(left, plo);
    }
    if (!std::isfinite(p)) {
      // The slope of w0 lies outside the domain of f and the cone is unbounded.
      throw Error(ErrorCode::EmptyFeasibleCone,
                  "w0 slope outside the domain of f: no finite minimizer in the cone");
    }
    const double y = x - t * p;
    const double value = seg.anchor_value + seg.slope * (y - seg.anchor) + t * kernel(p);
    if (value < best) best = value;
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::EmptyFeasibleCone,
                "no admissible y: the x-window must be enlarged for this flux");
  }
  return best;
}

double max_speed(const ConvexFun& f, double lo, double hi) {
  return std::max({std::abs(f.derivative(lo, Side::Minus)), std::abs(f.derivative(lo, Side::Plus)),
                   std::abs(f.derivative(hi, Side::Minus)), std::abs(f.derivative(hi, Side::Plus))});
}

std::size_t cell_count(double x_lo, double x_hi, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorCode::InvalidArgument, "dx must be positive");
  const double r = (x_hi - x_lo) / dx;
  const auto n = static_cast<std::size_t>(std::llround(r));
  if (n == 0 || std::abs(static_cast<double>(n) - r) > 1e-9 * r) {
    throw Error(ErrorCode::InvalidArgument, "window length must be an integer multiple of dx");
  }
  return n;
}

}  // namespace

double hopf_lax_value(const ConvexFun& f, const PiecewiseLinear& w0, double t, double x) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "hopf_lax_value: t must be >= 0");
  return hopf_lax_kernel(ConjugateKernel(f), w0, t, x);
}

GridSolution hopf_lax_solve(const ConvexFun& f, const PiecewiseLinear& w0,
                            const std::vector<double>& t_grid, double x_lo, double dx,
                            std::size_t nx) {
  if (!validate(f).valid) throw Error(ErrorCode::NonConvexFlux, "hopf_lax_solve: flux is not convex");
  if (!(dx > 0.0) || nx == 0) throw Error(ErrorCode::InvalidArgument, "hopf_lax_solve: empty grid");
  const ConjugateKernel kernel(f);
  GridSolution sol;
  sol.source = SolutionSource::HopfLax;
  sol.x_lo = x_lo;
  sol.dx = dx;
  sol.nx = nx;
  for (std::size_t n = 0; n < t_grid.size(); ++n) {
    const double t = t_grid[n];
    if (!(t >= 0.0) || (n > 0 && !(t > t_grid[n - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "hopf_lax_solve: times must be increasing and >= 0");
    }
    std::vector<double> w(nx + 1);
    for (std::size_t i = 0; i <= nx; ++i) w[i] = hopf_lax_kernel(kernel, w0, t, sol.x_face(i));
    std::vector<double> u(nx);
    for (std::size_t i = 0; i < nx; ++i) u[i] = (w[i + 1] - w[i]) / dx;
    sol.t.push_back(t);
    sol.w.push_back(std::move(w));
    sol.u.push_back(std::move(u));
  }
  return sol;
}

double godunov_state(const ConvexFun& f, double a, double b) {
  if (a <= b) return std::clamp(minimizer(f), a, b);
  const double s = (f(a) - f(b)) / (a - b);
  return s > 0.0 ? a : b;
}

double godunov_flux(const ConvexFun& f, double a, double b) {
  if (a <= b) return f(std::clamp(minimizer(f), a, b));
  return std::max(f(a), f(b));
}

GridSolution godunov_solve(const ConvexFun& f, const InitialData& u0, double t_end, double dx,
                           double cfl, const GodunovOptions& options) {
  if (!validate(f).valid) throw Error(ErrorCode::NonConvexFlux, "godunov_solve: flux is not convex");
  if (!(cfl > 0.0 && cfl <= 0.95)) throw Error(ErrorCode::InvalidArgument, "cfl must lie in (0, 0.95]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidArgument, "t_end must be positive");
  const std::size_t nx = cell_count(u0.x_lo, u0.x_hi, dx);
  const std::size_t stride = std::max<std::size_t>(1, options.store_stride);

  GridSolution sol;
  sol.source = SolutionSource::Godunov;
  sol.x_lo = u0.x_lo;
  sol.dx = dx;
  sol.nx = nx;
  std::vector<double> u(nx);
  for (std::size_t i = 0; i < nx; ++i) u[i] = u0.cell_average(sol.x_face(i), sol.x_face(i + 1));

  auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  const double speed0 = max_speed(f, *lo, *hi);
  if (speed0 == 0.0) {
    if (!options.exact_if_degenerate) {
      throw Error(ErrorCode::CFLDegenerate, "max |f'| vanishes on the data range");
    }
    sol.t = {0.0, t_end};
    sol.u = {u, u};
    return sol;
  }
  if (u0.kind == InitialData::Kind::PiecewiseConstant) {
    const double reach = speed0 * t_end;
    for (double b : u0.breaks) {
      if (b - u0.x_lo < reach || u0.x_hi - b < reach) {
        throw Error(ErrorCode::InvalidArgument,
                    "window does not contain the domain of dependence (max|f'| t_end)");
      }
    }
  }

  sol.t.push_back(0.0);
  sol.u.push_back(u);
  std::vector<double> flux(nx + 1);
  std::vector<double> next(nx);
  double t = 0.0;
  std::size_t step = 0;
  while (t < t_end) {
    auto [cur_lo, cur_hi] = std::minmax_element(u.begin(), u.end());
    double dt = cfl * dx / max_speed(f, *cur_lo, *cur_hi);
    bool last = false;
    if (t + dt >= t_end * (1.0 - 1e-14)) {
      dt = t_end - t;
      last = true;
    }
    flux[0] = f(u[0]);
    flux[nx] = f(u[nx - 1]);
    for (std::size_t i = 1; i < nx; ++i) flux[i] = godunov_flux(f, u[i - 1], u[i]);
    const double lambda = dt / dx;
    for (std::size_t i = 0; i < nx; ++i) next[i] = u[i] - lambda * (flux[i + 1] - flux[i]);
    sol.boundary_flux_integral += dt * (flux[0] - flux[nx]);
    u.swap(next);
    t = last ? t_end : t + dt;
    ++step;
    if (last || step % stride == 0) {
      sol.t.push_back(t);
      sol.u.push_back(u);
    }
  }
  return sol;
}

GridSolution sample_fan_grid(const WaveFan& fan, const std::vector<double>& t_grid, double x_lo,
                             double dx, std::size_t nx) {
  GridSolution sol;
  sol.source = SolutionSource::AnalyticFanSampling;
  sol.x_lo = x_lo;
  sol.dx = dx;
  sol.nx = nx;
  for (double t : t_grid) {
    std::vector<double> u(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = sol.x_center(i);
      u[i] = t > 0.0 ? sample_fan(fan, t, x) : (x < fan.x0 ? fan.left : fan.right);
    }
    sol.t.push_back(t);
    sol.u.push_back(std::move(u));
  }
  return sol;
}

GridSolution reconstruct_potential(GridSolution sol, const ConvexFun& f) {
  if (sol.u.empty()) throw Error(ErrorCode::InvalidArgument, "reconstruct_potential: no data");
  const std::size_t nx = sol.nx;
  auto face_flux = [&](const std::vector<double>& u) {
    std::vector<double> g(nx + 1);
    g[0] = f(u[0]);
    g[nx] = f(u[nx - 1]);
    for (std::size_t i = 1; i < nx; ++i) g[i] = f(godunov_state(f, u[i - 1], u[i]));
    return g;
  };
  sol.w.assign(sol.t.size(), std::vector<double>(nx + 1, 0.0));
  for (std::size_t i = 0; i < nx; ++i) sol.w[0][i + 1] = sol.w[0][i] + sol.u[0][i] * sol.dx;
  auto g_prev = face_flux(sol.u[0]);
  for (std::size_t n = 1; n < sol.t.size(); ++n) {
    const auto g = face_flux(sol.u[n]);
    const double half = 0.5 * (sol.t[n] - sol.t[n - 1]);
    for (std::size_t i = 0; i <= nx; ++i) sol.w[n][i] = sol.w[n - 1][i] - half * (g_prev[i] + g[i]);
    g_prev = g;
  }
  return sol;
}

double l1_distance(const GridSolution& a, const GridSolution& b, double t, double window_lo,
                   double window_hi) {
  for (const auto* s : {&a, &b}) {
    if (s->t.empty()) throw Error(ErrorCode::TimeOutOfRange, "l1_distance: solution has no times");
    const double slack = 1e-9 * (1.0 + std::abs(t));
    if (t < s->t.front() - slack || t > s->t.back() + slack) {
      throw Error(ErrorCode::TimeOutOfRange, "l1_distance: time outside the stored grid");
    }
  }
  const GridSolution& coarse = a.dx >= b.dx ? a : b;
  const GridSolution& fine = a.dx >= b.dx ? b : a;
  const double ratio = coarse.dx / fine.dx;
  const auto k = static_cast<std::size_t>(std::llround(ratio));
  const double offset = (coarse.x_lo - fine.x_lo) / fine.dx;
  const auto off = std::llround(offset);
  if (k == 0 || std::abs(ratio - static_cast<double>(k)) > 1e-9 * ratio ||
      std::abs(offset - static_cast<double>(off)) > 1e-6) {
    throw Error(ErrorCode::InvalidArgument, "l1_distance: grids are not nested");
  }
  const auto& uc = coarse.u[coarse.time_index(t)];
  const auto& uf = fine.u[fine.time_index(t)];
  double total = 0.0;
  for (std::size_t j = 0; j < coarse.nx; ++j) {
    const double xc = coarse.x_center(j);
    if (xc < window_lo || xc > window_hi) continue;
    const long long start = off + static_cast<long long>(j * k);
    if (start < 0 || start + static_cast<long long>(k) > static_cast<long long>(fine.nx)) continue;
    double avg = 0.0;
    for (std::size_t m = 0; m < k; ++m) avg += uf[static_cast<std::size_t>(start) + m];
    avg /= static_cast<double>(k);
    total += std::abs(uc[j] - avg) * coarse.dx;
  }
  return total;
}

std::vector<double> time_grid(double t0, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= t0)) throw Error(ErrorCode::InvalidArgument, "time_grid: bad range");
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((t_end - t0) / dt - 1e-9)));
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = t0 + (t_end - t0) * static_cast<double>(k) / static_cast<double>(n);
  out[n] = t_end;
  return out;
}

}  // namespace entropylab
