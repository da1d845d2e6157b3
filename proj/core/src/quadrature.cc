#include "hailchi/quadrature.h"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "hailchi/error.h"

namespace hailchi {
namespace {

// Abscissae and weights of the 15-point Kronrod rule and the embedded
// 7-point Gauss rule on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (a == b) return {};

  std::priority_queue<Segment> segments;
  Segment first = kronrod15(f, a, b);
  double total = first.value;
  double error = first.error;
  segments.push(first);

  while (error > std::max(options.abs_tol, options.rel_tol * std::fabs(total))) {
    if (static_cast<int>(segments.size()) >= options.max_subintervals) {
      throw QuadratureError("integrate: subinterval budget exhausted, error estimate " +
                                std::to_string(error),
                            total, error);
    }
    const Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    segments.push(left);
    segments.push(right);
  }

  // Resum to drop the drift accumulated by incremental updates.
  QuadratureResult result;
  result.subintervals = static_cast<int>(segments.size());
  while (!segments.empty()) {
    result.value += segments.top().value;
    result.error += segments.top().error;
    segments.pop();
  }
  return result;
}

}  // namespace hailchi
