#include "entropylab/random_fun.hpp"

#include <algorithm>
#include <vector>

namespace entropylab {

ConvexFun random_convex_exact(std::mt19937_64& rng, const RandomFunOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  std::uniform_int_distribution<int> count(0, options.max_breakpoints);
  const int m = count(rng);
  std::vector<double> b;
  while (static_cast<int>(b.size()) < m) {
    b.push_back(uniform(options.break_lo, options.break_hi));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }

  std::vector<QuadPiece> pieces(b.size() + 1);
  for (auto& q : pieces) {
    const bool affine = !options.strict && unit(rng) < options.affine_probability;
    q.a = affine ? 0.0 : uniform(0.05, options.max_curvature);
  }
  pieces[0].c = uniform(-options.slope_scale, options.slope_scale);
  pieces[0].d = uniform(-1.0, 1.0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double x = b[i];
    const double jump = unit(rng) < 0.5 ? 0.0 : uniform(0.0, options.max_jump);
    const double right = pieces[i].slope(x) + jump;
    pieces[i + 1].c = right - 2.0 * pieces[i + 1].a * x;
    pieces[i + 1].d = pieces[i].value(x) - (pieces[i + 1].a * x + pieces[i + 1].c) * x;
  }
  return ConvexFun::quadratic_pieces(std::move(b), std::move(pieces));
}

}  // namespace entropylab
