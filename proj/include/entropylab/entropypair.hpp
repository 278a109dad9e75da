#ifndef ENTROPYLAB_ENTROPYPAIR_HPP_
#define ENTROPYLAB_ENTROPYPAIR_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "entropylab/convexfn.hpp"

namespace entropylab {

/// k3*u^3 + k2*u^2 + k1*u + k0.
struct CubicPiece {
  double k3 = 0.0;
  double k2 = 0.0;
  double k1 = 0.0;
  double k0 = 0.0;

  double value(double u) const { return ((k3 * u + k2) * u + k1) * u + k0; }
};

/// Flux f, strictly convex entropy eta and the entropy flux q with
/// q' = eta' f', q(base_point) = 0.
class EntropyPair {
 public:
  const ConvexFun& flux() const { return flux_; }
  const ConvexFun& entropy() const { return entropy_; }
  double base_point() const { return base_; }

  /// True when q is stored as exact cubics (both inputs Exact).
  bool exact_q() const { return !q_pieces_.empty(); }
  const std::vector<double>& q_breakpoints() const { return q_breaks_; }
  const std::vector<CubicPiece>& q_pieces() const { return q_pieces_; }

  double f(double u) const { return flux_(u); }
  double eta(double u) const { return entropy_(u); }
  double q(double u) const;

 private:
  friend EntropyPair make_pair(const ConvexFun& f, const ConvexFun& eta, double base_point);

  EntropyPair(ConvexFun f, ConvexFun eta, double base);

  ConvexFun flux_;
  ConvexFun entropy_;
  double base_;
  std::vector<double> q_breaks_;
  std::vector<CubicPiece> q_pieces_;
};

/// Throws NonConvexFlux / NonStrictEntropy when validation fails.
EntropyPair make_pair(const ConvexFun& f, const ConvexFun& eta, double base_point = 0.0);

/// Integral of eta'(xi) f'(xi) over [a, b] for arbitrary backends.
double integrate_product(const ConvexFun& f, const ConvexFun& eta, double a, double b);

/// eta_k(u) = |u - k|, q_k(u) = sgn(u - k)(f(u) - f(k)).
class KruzkovPair {
 public:
  KruzkovPair(ConvexFun f, double k) : flux_(std::move(f)), k_(k), fk_(flux_(k)) {}

  double k() const { return k_; }
  double eta(double u) const { return std::abs(u - k_); }
  double q(double u) const {
    const double s = (u > k_) - (u < k_);
    return s * (flux_(u) - fk_);
  }

 private:
  ConvexFun flux_;
  double k_;
  double fk_;
};

inline KruzkovPair kruzkov_pair(const ConvexFun& f, double k) { return KruzkovPair(f, k); }

/// Q(u) = u q(u) - f(u) eta(u).
double quadratic_form(const EntropyPair& pair, double u);

/// h(u) = Q(u)/|q(u)|; throws ZeroEntropyFlux where q vanishes.
double q_ratio(const EntropyPair& pair, double u);

struct GrowthDescriptor {
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<double> alpha_tilde;
  std::optional<double> beta_tilde;
  bool log_entropy = false;
  bool exp_flux = false;
};

/// Reads the asymptotic descriptors carried by the pair's functions.
GrowthDescriptor describe(const EntropyPair& pair);

struct GammaResult {
  std::optional<double> gamma;  // empty means Unavailable
  std::string label;
  std::string reason;
};

GammaResult gamma_closed_form(const GrowthDescriptor& desc);

/// gamma = max(lambda, 1) under the Lipschitz-type bound on f'/eta'.
double gamma_from_lambda(double lambda);

struct GrowthSide {
  double sign = 1.0;
  std::vector<double> abs_u;
  std::vector<double> h;
  std::vector<double> c_ratio;
};

struct GrowthReport {
  std::string label = "sampled evidence";
  double gamma = 1.0;
  double beta = 0.0;
  // growth of f and eta
  double min_f_over_abs_u = kInf;
  double min_eta_over_power = kInf;
  bool linear_growth = false;
  // monotone tail of h
  bool h_eventually_increasing = false;
  bool h_exceeds_threshold = false;
  double h_threshold = 10.0;
  // ratio bound
  double c_max = 0.0;
  double c_min = kInf;
  double c_growth = 0.0;  // largest increase of the ratio along increasing |u|
  bool c_bounded = false;
  std::size_t nonfinite_samples = 0;
  GrowthSide plus;
  GrowthSide minus;
};

struct GrowthSampling {
  double lo = 1e2;
  double hi = 1e6;
  int points_per_sign = 64;
};

GrowthReport check_growth_conditions(const EntropyPair& pair, double gamma,
                                     const GrowthSampling& sampling = {});

}  // namespace entropylab

#endif  // ENTROPYLAB_ENTROPYPAIR_HPP_
