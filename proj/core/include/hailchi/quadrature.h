#ifndef HAILCHI_QUADRATURE_H_
#define HAILCHI_QUADRATURE_H_

#include <functional>

namespace hailchi {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subintervals = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subintervals = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite [a, b].
/// Stops once the summed error estimate is below max(abs_tol, rel_tol |I|).
/// Throws QuadratureError when the subinterval budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace hailchi

#endif  // HAILCHI_QUADRATURE_H_
