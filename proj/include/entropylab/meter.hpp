#ifndef ENTROPYLAB_METER_HPP_
#define ENTROPYLAB_METER_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "entropylab/entropypair.hpp"
#include "entropylab/solvers.hpp"
#include "entropylab/waves.hpp"

namespace entropylab {

enum class Verdict { Vanishing, PositiveLowerBound };

std::string_view to_string(Verdict v);

/// mu(B_r)/r at one centre. mu is the positive part of the entropy
/// production, so all values are >= 0.
struct BallDiagnostic {
  double t_bar = 0.0;
  double x_bar = 0.0;
  std::vector<double> radii;   // decreasing
  std::vector<double> values;  // mu(B_r)/r per radius
  double liminf_estimate = 0.0;
  double rtol = 0.0;
  Verdict verdict = Verdict::Vanishing;
  double lower_bound = 0.0;  // c in PositiveLowerBound(c)
};

inline constexpr double kFanRtol = 1e-9;

/// Exact: max(D_t, 0) times the t-length of each jump line inside the ball.
BallDiagnostic fan_measure(const EntropyPair& pair, const WaveFan& fan, double t_bar, double x_bar,
                           std::vector<double> radii);

/// Discrete residual R = d_t eta + d_x q-hat summed over cells whose
/// (mid-step time, centre) lies in the ball; mu = max(0, sum R dx dt).
/// Throws ResolutionInsufficient if the smallest radius is below 4 dx.
BallDiagnostic grid_measure(const EntropyPair& pair, const GridSolution& sol, double t_bar,
                            double x_bar, std::vector<double> radii);

/// Largest positive part of R dx over all cells, steps and k (an entropy
/// production rate along x, comparable with D_t).
double kruzkov_residual(const ConvexFun& f, const GridSolution& sol, const std::vector<double>& k_grid);

struct OleinikReport {
  std::vector<double> times;
  std::vector<double> violation;  // max slope - 1/(c t) per time
  std::vector<double> allowance;  // 10 dx / t per time
  double max_violation = -kInf;
  std::size_t violations = 0;     // times where violation > allowance
};

/// Throws InvalidArgument for c <= 0.
OleinikReport oleinik_check(const GridSolution& sol, double c, const std::vector<double>& t_list);

struct HolderExponents {
  double gamma1;
  double gamma2;
};

/// gamma1 = beta/(beta+1), gamma2 = beta/(gamma(2 beta + 1)).
HolderExponents holder_exponents(double alpha, double beta, double gamma);

struct SamplePair {
  double t1;
  double x1;
  double t2;
  double x2;
};

std::vector<SamplePair> holder_sample_pairs(std::uint64_t seed, std::size_t count, double t_lo,
                                            double t_hi, double x_lo, double x_hi);

/// Bilinear interpolation of the stored potential.
double interpolate_w(const GridSolution& sol, double t, double x);

/// max |w(p) - w(p')| / (|t - t'|^gamma2 + |x - x'|^gamma1) over the pairs.
double holder_seminorm(const GridSolution& sol, double gamma1, double gamma2,
                       const std::vector<SamplePair>& pairs);

}  // namespace entropylab

#endif  // ENTROPYLAB_METER_HPP_
