#ifndef ENTROPYLAB_RANDOM_FUN_HPP_
#define ENTROPYLAB_RANDOM_FUN_HPP_

#include <random>

#include "entropylab/convexfn.hpp"

namespace entropylab {

struct RandomFunOptions {
  int max_breakpoints = 4;
  double break_lo = -4.0;
  double break_hi = 4.0;
  bool strict = false;           // every piece with a > 0
  double affine_probability = 0.3;
  double max_curvature = 2.0;    // upper bound for a
  double max_jump = 2.0;         // derivative jump at a breakpoint
  double slope_scale = 2.0;      // initial slope drawn from [-slope_scale, slope_scale]
};

/// Random convex Exact function; deterministic for a given engine state.
ConvexFun random_convex_exact(std::mt19937_64& rng, const RandomFunOptions& options = {});

}  // namespace entropylab

#endif  // ENTROPYLAB_RANDOM_FUN_HPP_
