#include "hailchi/optimize.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hailchi/error.h"

namespace hailchi {

ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol, int max_iterations) {
  if (!(lo < hi)) throw DomainError("brent_minimize: empty bracket");
  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  constexpr double kAbsFloor = 1e-300;

  double a = lo, b = hi;
  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = f(x);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = rel_tol * std::fabs(x) + kAbsFloor;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - mid) <= tol2 - 0.5 * (b - a)) return {x, fx, iter};

    bool golden = true;
    if (std::fabs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double e_prev = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, mid - x);
        golden = false;
      }
    }
    if (golden) {
      e = (x >= mid) ? a - x : b - x;
      d = kGolden * e;
    }
    const double u = std::fabs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  throw ConvergenceError("brent_minimize: iteration limit reached", {x}, fx);
}

SimplexMinimum nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> start, const std::vector<double>& steps,
                           const SimplexOptions& options) {
  const std::size_t n = start.size();
  if (n == 0 || steps.size() != n) throw DomainError("nelder_mead: bad dimensions");

  std::vector<std::vector<double>> vertex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) vertex[i + 1][i] += steps[i];
  std::vector<double> value(n + 1);
  for (std::size_t i = 0; i <= n; ++i) value[i] = f(vertex[i]);

  std::vector<std::size_t> order(n + 1);
  auto point_along = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                         double coefficient) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + coefficient * (worst[k] - centroid[k]);
    return p;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double dist = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double diff = vertex[i][k] - vertex[best][k];
        dist += diff * diff;
      }
      diameter = std::max(diameter, std::sqrt(dist));
    }
    if (diameter < options.diameter_tol) return {vertex[best], value[best], iter};

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += vertex[i][k] / static_cast<double>(n);
    }

    const std::vector<double> reflected = point_along(centroid, vertex[worst], -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      const std::vector<double> expanded = point_along(centroid, vertex[worst], -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < value[worst];
    const std::vector<double> contracted =
        point_along(centroid, vertex[worst], outside ? -0.5 : 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : value[worst])) {
      vertex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        vertex[i][k] = vertex[best][k] + 0.5 * (vertex[i][k] - vertex[best][k]);
      }
      value[i] = f(vertex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(value.begin(), value.end()) - value.begin());
  throw ConvergenceError("nelder_mead: iteration limit reached", vertex[best], value[best]);
}

}  // namespace hailchi
