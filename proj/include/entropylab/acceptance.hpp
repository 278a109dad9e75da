#ifndef ENTROPYLAB_ACCEPTANCE_HPP_
#define ENTROPYLAB_ACCEPTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "entropylab/solvers.hpp"

namespace entropylab {

/// u0(x) = max(|x|, cutoff)^-exponent on [x_lo, x_hi], with exact antiderivative.
InitialData truncated_singular_data(double exponent, double cutoff, double x_lo, double x_hi);

struct HolderRun {
  std::vector<double> dx;
  std::vector<double> seminorm;
  std::vector<double> ratios;  // seminorm[k+1] / seminorm[k]
};

/// Burgers Hopf-Lax runs from truncated singular data, seminorm on
/// [0.5, 1] x [-0.5, 0.5] at successive halvings of dx.
HolderRun holder_refinement(double gamma1, double gamma2, std::uint64_t seed,
                            const std::vector<double>& dx_levels);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriteriaCount = 11;

/// Runs one acceptance criterion (1..11).
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// "PASS [n] name: detail (t s)".
std::string format_result(const CriterionResult& r);

}  // namespace entropylab

#endif  // ENTROPYLAB_ACCEPTANCE_HPP_
