#ifndef ENTROPYLAB_ERROR_HPP_
#define ENTROPYLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace entropylab {

enum class ErrorCode {
  InvalidArgument,
  NonConvexFlux,
  NonStrictEntropy,
  ZeroEntropyFlux,
  InternalEquivalenceViolation,
  NotUnderCompressive,
  EmptyFeasibleCone,
  CFLDegenerate,
  ResolutionInsufficient,
  TimeOutOfRange,
  Overflow,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace entropylab

#endif  // ENTROPYLAB_ERROR_HPP_
