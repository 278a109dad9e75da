#ifndef ENTROPYLAB_SOLVERS_HPP_
#define ENTROPYLAB_SOLVERS_HPP_

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "entropylab/convexfn.hpp"
#include "entropylab/waves.hpp"

namespace entropylab {

enum class SolutionSource { HopfLax, Godunov, AnalyticFanSampling };

/// Cell averages on cells [x_lo + i dx, x_lo + (i+1) dx], i < nx, at the
/// stored times. w, when present, holds nx+1 face values per time.
struct GridSolution {
  SolutionSource source = SolutionSource::HopfLax;
  double x_lo = 0.0;
  double dx = 0.0;
  std::size_t nx = 0;
  std::vector<double> t;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> w;
  double boundary_flux_integral = 0.0;  // integral of F_left - F_right over time

  double x_face(std::size_t i) const { return x_lo + static_cast<double>(i) * dx; }
  double x_center(std::size_t i) const { return x_lo + (static_cast<double>(i) + 0.5) * dx; }
  double x_hi() const { return x_face(nx); }
  bool has_w() const { return !w.empty(); }

  /// Index of the stored time closest to tt.
  std::size_t time_index(double tt) const;

  /// (u-, u+) one-sided difference quotients of w at face i, i.e. the
  /// averages of the cells on either side.
  std::pair<double, double> traces(std::size_t n, std::size_t face) const;

  double mass(std::size_t n) const;
};

/// Continuous piecewise-linear function with linear extension beyond the
/// first and last node.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> nodes, std::vector<double> values, double slope_left,
                  double slope_right);

  double operator()(double y) const;
  std::size_t segments() const { return nodes_.size() + 1; }

  /// Segment k spans [lo, hi] (infinite for the tails) with the given slope
  /// and value at `anchor`.
  struct Segment {
    double lo;
    double hi;
    double slope;
    double anchor;
    double anchor_value;
  };
  Segment segment(std::size_t k) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  double slope_left_;
  double slope_right_;
};

struct InitialData {
  enum class Kind { PiecewiseConstant, Sampled };
  Kind kind = Kind::PiecewiseConstant;
  // PiecewiseConstant: values.size() == breaks.size() + 1.
  std::vector<double> breaks;
  std::vector<double> values;
  // Sampled: u0 rule with optional exact antiderivative.
  std::function<double(double)> rule;
  std::function<double(double)> antiderivative;
  std::vector<double> singular_points;  // split points for quadrature
  double x_lo = -1.0;
  double x_hi = 1.0;

  static InitialData riemann(double u_left, double u_right, double x0, double x_lo, double x_hi);
  static InitialData piecewise_constant(std::vector<double> breaks, std::vector<double> values,
                                        double x_lo, double x_hi);
  static InitialData sampled(std::function<double(double)> rule, double x_lo, double x_hi,
                             std::function<double(double)> antiderivative = {});

  double far_left() const;
  double far_right() const;
  double value(double x) const;
  /// Integral of u0 over [a, b].
  double integral(double a, double b) const;
  /// Mean over [a, b]; exact when [a, b] lies inside one constant piece.
  double cell_average(double a, double b) const;
  /// Smallest and largest value attained.
  std::pair<double, double> range() const;
};

/// Potential w0 anchored at w0(x_lo) = 0. Piecewise-constant data give an
/// exact potential; sampled data are integrated between nodes spaced by
/// `spacing` over [x_lo, x_hi].
PiecewiseLinear initial_potential(const InitialData& data, double spacing);

/// min_y { w0(y) + t f*((x-y)/t) }; w0(x) at t = 0.
/// Throws EmptyFeasibleCone when no y gives a finite value.
double hopf_lax_value(const ConvexFun& f, const PiecewiseLinear& w0, double t, double x);

/// Hopf-Lax potentials at faces and exact cell averages of u = w_x.
GridSolution hopf_lax_solve(const ConvexFun& f, const PiecewiseLinear& w0,
                            const std::vector<double>& t_grid, double x_lo, double dx,
                            std::size_t nx);

/// Godunov flux: min of f over [a,b] if a <= b, else max(f(a), f(b)).
double godunov_flux(const ConvexFun& f, double a, double b);

/// Value of the Riemann solution at x/t = 0 (right trace for stationary jumps).
double godunov_state(const ConvexFun& f, double a, double b);

struct GodunovOptions {
  bool exact_if_degenerate = false;  // otherwise throw CFLDegenerate
  std::size_t store_stride = 1;
};

GridSolution godunov_solve(const ConvexFun& f, const InitialData& u0, double t_end, double dx,
                           double cfl, const GodunovOptions& options = {});

/// Exact cell-centre samples of a fan at the given times (t = 0 uses the
/// Riemann data).
GridSolution sample_fan_grid(const WaveFan& fan, const std::vector<double>& t_grid, double x_lo,
                             double dx, std::size_t nx);

/// Fills w: integral in x at the first stored time (w(t0, x_lo) = 0), then
/// trapezoid in t of -f at the faces, using the Godunov interface state.
GridSolution reconstruct_potential(GridSolution sol, const ConvexFun& f);

/// Sum |u_a - u_b| dx over cells centred in [window_lo, window_hi] at the
/// stored times nearest t. Grids must share faces up to an integer ratio.
double l1_distance(const GridSolution& a, const GridSolution& b, double t, double window_lo,
                   double window_hi);

/// Uniform grid of times t_0, t_0 + dt, ..., t_end (t_end always included).
std::vector<double> time_grid(double t0, double t_end, double dt);

}  // namespace entropylab

#endif  // ENTROPYLAB_SOLVERS_HPP_
