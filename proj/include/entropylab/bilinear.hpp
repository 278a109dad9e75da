#ifndef ENTROPYLAB_BILINEAR_HPP_
#define ENTROPYLAB_BILINEAR_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entropylab/entropypair.hpp"

namespace entropylab {

struct Atom {
  double u;
  double weight;
};

/// Finite probability measure; duplicate locations are merged.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double mean() const;

 private:
  std::vector<Atom> atoms_;
};

/// Sum of w_i h(u_i); throws Overflow on a non-finite term.
double average(const DiscreteMeasure& m, const std::function<double(double)>& h);

struct BilinearParts {
  double mean_u = 0.0;
  double mean_q = 0.0;
  double mean_uq = 0.0;
  double mean_eta = 0.0;
  double mean_f = 0.0;
  double mean_eta_f = 0.0;
  double value = 0.0;

  /// 1 + max |component average|
  double scale() const;
};

BilinearParts bilinear_parts(const DiscreteMeasure& m, const EntropyPair& pair);
double bilinear_form(const DiscreteMeasure& m, const EntropyPair& pair);

/// (v-u)(q(v)-q(u)) - (f(v)-f(u))(eta(v)-eta(u)).
double p_term(const EntropyPair& pair, double v, double u);

/// <P(u, <u>)>.
double p_average(const DiscreteMeasure& m, const EntropyPair& pair);

/// (<f> - f(<u>), <eta> - eta(<u>)).
std::pair<double, double> jensen_gaps(const DiscreteMeasure& m, const EntropyPair& pair);

struct SelfTestFailure {
  std::size_t trial;
  std::string check;
  std::string repro_json;
};

struct SelfTestResult {
  std::size_t trials = 0;
  std::size_t quadratic_trials = 0;
  std::size_t failures_chain = 0;
  std::size_t failures_affine = 0;
  std::size_t failures_decomposition = 0;
  std::size_t failures_uniform = 0;
  std::vector<SelfTestFailure> failures;

  std::size_t total_failures() const {
    return failures_chain + failures_affine + failures_decomposition + failures_uniform;
  }
};

/// Randomized checks of nonnegativity, affine invariance and the P/Q
/// decomposition on `trials` pairs, plus trials/10 uniform-convexity checks.
SelfTestResult bilinear_selftest(std::size_t trials, std::uint64_t seed);

}  // namespace entropylab

#endif  // ENTROPYLAB_BILINEAR_HPP_
