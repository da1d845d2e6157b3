#ifndef HAILCHI_OPTIMIZE_H_
#define HAILCHI_OPTIMIZE_H_

#include <functional>
#include <vector>

namespace hailchi {

struct ScalarMinimum {
  double x;
  double value;
  int iterations;
};

/// Brent's method (golden section with parabolic steps) on [lo, hi]. Stops
/// when the bracket is below rel_tol * |x| + 1e-300. Throws ConvergenceError
/// after max_iterations.
ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol = 1e-10, int max_iterations = 500);

struct SimplexOptions {
  double diameter_tol = 1e-10;
  int max_iterations = 20000;
};

struct SimplexMinimum {
  std::vector<double> x;
  double value;
  int iterations;
};

/// Nelder-Mead simplex descent from `start` with per-coordinate initial steps.
/// Converged once the largest vertex-to-best distance drops below
/// diameter_tol. Throws ConvergenceError (with the best vertex) otherwise.
SimplexMinimum nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> start, const std::vector<double>& steps,
                           const SimplexOptions& options = {});

}  // namespace hailchi

#endif  // HAILCHI_OPTIMIZE_H_
