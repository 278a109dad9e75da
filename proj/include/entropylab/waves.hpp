#ifndef ENTROPYLAB_WAVES_HPP_
#define ENTROPYLAB_WAVES_HPP_

#include <string_view>
#include <vector>

#include "entropylab/convexfn.hpp"
#include "entropylab/entropypair.hpp"

namespace entropylab {

// Jump brackets throughout: [g] = g(u+) - g(u-), u- on the left of the line.

enum class WaveType { Shock, Contact, Rarefaction };

std::string_view to_string(WaveType type);

struct Wave {
  WaveType type;
  double speed_lo;  // equals speed_hi for jumps
  double speed_hi;
  double state_left;
  double state_right;

  bool is_jump() const { return type != WaveType::Rarefaction; }
};

/// Self-similar Riemann solution centred at (0, x0).
struct WaveFan {
  ConvexFun flux;
  double left;
  double right;
  double x0 = 0.0;
  std::vector<Wave> waves;
  bool admissible = true;
};

/// Entropy solution of the Riemann problem. Throws NonConvexFlux.
WaveFan solve_riemann(const ConvexFun& f, double u_left, double u_right, double x0 = 0.0);

/// Single upward jump at the Rankine-Hugoniot speed (not admissible).
/// Throws NotUnderCompressive unless f'(u_right-0) > f'(u_left+0).
WaveFan undercompressive_fan(const ConvexFun& f, double u_left, double u_right, double x0 = 0.0);

/// Value at (t, x), t > 0; right trace on jumps.
double sample_fan(const WaveFan& fan, double t, double x);

struct Production {
  double speed;
  double rate;  // D_t = [q] - s[eta]
};

Production production_rate(const EntropyPair& pair, double u_minus, double u_plus);

enum class Classification { LaxShock, Contact, UnderCompressive, NonConvexReject };

std::string_view to_string(Classification c);

struct DiscontinuityReport {
  double speed;
  double u_minus;
  double u_plus;
  double production_rate;
  Classification classification;
};

/// Throws InternalEquivalenceViolation if the production sign contradicts
/// the Lax inequality.
DiscontinuityReport classify(const EntropyPair& pair, double u_minus, double u_plus);

/// Tolerance on D_t used for contact detection.
double classification_tolerance(double u_minus, double u_plus);

struct UndercompressiveBudget {
  double s0;
  double production;  // integral of eta'(f' - s0) from u- to u+
  bool satisfies_budget;
};

UndercompressiveBudget undercompressive_budget(const EntropyPair& pair, double u_minus,
                                               double u_plus, double c0);

}  // namespace entropylab

#endif  // ENTROPYLAB_WAVES_HPP_
