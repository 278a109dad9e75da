#ifndef ENTROPYLAB_CONVEXFN_HPP_
#define ENTROPYLAB_CONVEXFN_HPP_

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace entropylab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Side { Minus, Plus };

/// a*u^2 + c*u + d on one interval.
struct QuadPiece {
  double a = 0.0;
  double c = 0.0;
  double d = 0.0;

  double value(double u) const { return (a * u + c) * u + d; }
  double slope(double u) const { return 2.0 * a * u + c; }
};

/// Closed interval of the extended real line; endpoints may be +-inf.
struct ExtendedInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool approximate = false;

  bool is_point() const { return lo == hi; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class GrowthShape { Power, Sublinear, Logarithmic, Exponential };

/// Declared behaviour of the derivative as |u| -> infinity:
///   Power:       g'(u) ~ sgn(u) |u|^exponent
///   Sublinear:   g'(u) ~ sgn(u) (1 - m |u|^-correction)
///   Logarithmic: g'(u) ~ sgn(u) (log|u| + 1)
///   Exponential: g'(u) ~ sgn(u) e^|u|
struct AsymptoticDescriptor {
  GrowthShape shape = GrowthShape::Power;
  double exponent = 1.0;
  std::optional<double> correction;
};

/// Convex, locally Lipschitz scalar function with exact one-sided
/// derivatives. Immutable once built.
///
/// The Exact backend stores pieces.size() == breakpoints.size() + 1
/// quadratics; piece i lives on [b_{i-1}, b_i] with b_{-1} = -inf and
/// b_m = +inf. An optional closed effective domain [domain_lo, domain_hi]
/// makes the function +inf outside of it (this is how Legendre conjugates
/// of linearly growing functions are represented).
///
/// The Analytic backend wraps value/derivative rules together with an
/// asymptotic descriptor used by the growth-condition machinery.
class ConvexFun {
 public:
  enum class Backend { Exact, Analytic };
  using Rule = std::function<double(double)>;

  struct Defect {
    std::size_t breakpoint;
    double mismatch;
  };

  static ConvexFun quadratic_pieces(std::vector<double> breakpoints,
                                    std::vector<QuadPiece> pieces,
                                    std::optional<bool> strict_claim = std::nullopt,
                                    double domain_lo = -kInf,
                                    double domain_hi = kInf);

  /// derivative_minus defaults to derivative (C^1 rule).
  static ConvexFun analytic(std::string name, Rule value, Rule derivative,
                            AsymptoticDescriptor descriptor, bool strict_claim,
                            Rule derivative_minus = {});

  // Named members of the library.
  static ConvexFun burgers();                    // u^2/2
  static ConvexFun quadratic(double curvature);  // curvature * u^2/2
  static ConvexFun absolute();                   // |u|
  static ConvexFun flat();                       // u^2/2 | 0 on [0,1] | (u-1)^2/2
  static ConvexFun power(double alpha);          // |u|^(alpha+1)/(alpha+1)
  static ConvexFun exponential();                // e^|u| - 1 - |u|
  static ConvexFun sublinear(double tilde);      // f' = sgn(u)(1 - (1+|u|)^-tilde)
  static ConvexFun log_entropy();                // (1+|u|)log(1+|u|) - |u|

  Backend backend() const;
  bool is_exact() const { return backend() == Backend::Exact; }
  const std::string& name() const { return name_; }
  bool strict_claim() const { return strict_claim_; }

  /// Throws Error(InvalidArgument) for non-finite u.
  double operator()(double u) const;
  double derivative(double u, Side side) const;

  // Exact backend accessors (empty for Analytic).
  const std::vector<double>& breakpoints() const;
  const std::vector<QuadPiece>& pieces() const;
  const std::vector<Defect>& continuity_defects() const;
  double domain_lo() const;
  double domain_hi() const;

  const AsymptoticDescriptor& descriptor() const;

  /// Returns f(u) - (slope*u + offset), same backend.
  ConvexFun minus_affine(double slope, double offset) const;

  /// Index of the piece governing u from the given side.
  std::size_t piece_index(double u, Side side) const;

 private:
  struct ExactRep {
    std::vector<double> breakpoints;
    std::vector<QuadPiece> pieces;
    std::vector<Defect> defects;
    double domain_lo = -kInf;
    double domain_hi = kInf;
  };
  struct AnalyticRep {
    Rule value;
    Rule derivative_plus;
    Rule derivative_minus;
  };

  ConvexFun();

  std::string name_;
  bool strict_claim_ = false;
  AsymptoticDescriptor descriptor_;
  std::variant<ExactRep, std::shared_ptr<const AnalyticRep>> rep_;
};

/// Closed range [inf f', sup f'] over the effective domain.
ExtendedInterval derivative_range(const ConvexFun& fun);

/// I^{+-}(u) = {v : f(v) - f(u) - f'(u+-0)(v-u) = 0}, a closed interval that
/// always contains u.
ExtendedInterval degeneracy_interval(const ConvexFun& fun, double u, Side side);

/// sup_u (p*u - f(u)); +inf is a legal result.
double conjugate(const ConvexFun& fun, double p);

/// Closed-form Legendre transform of an Exact function, itself Exact.
ConvexFun legendre_transform(const ConvexFun& fun);

/// sup{u in [lo, hi] : f'(u-0) <= xi}, clamped to [lo, hi]. This is the
/// right-continuous generalized inverse of f' used for rarefaction states.
double derivative_inverse(const ConvexFun& fun, double xi, double lo, double hi);

/// A point of the minimizer set of f (the largest one when it is an
/// interval), or -inf / +inf when f is monotone.
double minimizer(const ConvexFun& fun);

enum class IssueKind { NonConvexPiece, DerivativeDecrease, Discontinuity, FalseStrictFlag };

struct ValidationIssue {
  IssueKind kind;
  std::size_t index;
  std::string message;
};

struct ValidationReport {
  bool valid = true;
  bool strict = false;
  bool sampled = false;
  std::vector<ValidationIssue> issues;
};

ValidationReport validate(const ConvexFun& fun);

}  // namespace entropylab

#endif  // ENTROPYLAB_CONVEXFN_HPP_
