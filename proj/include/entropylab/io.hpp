#ifndef ENTROPYLAB_IO_HPP_
#define ENTROPYLAB_IO_HPP_

#include <json.hpp>
#include <string>

#include "entropylab/convexfn.hpp"

namespace entropylab {

struct WaveFan;
struct BallDiagnostic;
struct GridSolution;

/// {"kind":"quadratic_pieces",...} or {"kind":"named","name":...}.
nlohmann::json fun_to_json(const ConvexFun& fun);

/// Throws Error(InvalidArgument) naming the offending field.
ConvexFun fun_from_json(const nlohmann::json& spec);

/// Shortest round-trip decimal form with '.' separator.
std::string format_number(double v);

nlohmann::json fan_to_json(const WaveFan& fan);

/// Header "t,x,u[,w]".
std::string solution_csv(const GridSolution& sol);

/// Header "t_bar,x_bar,r,mu_over_r".
std::string diagnostics_csv(const std::vector<BallDiagnostic>& balls);

}  // namespace entropylab

#endif  // ENTROPYLAB_IO_HPP_
