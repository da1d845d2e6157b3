#include "hailchi/special_functions.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hailchi/error.h"

namespace hailchi {
namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Series for P(a, x), valid (and fast) for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), modified Lentz, x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

// Acklam's rational approximation, relative error ~1.15e-9.
double normal_quantile_guess(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "normal_quantile: p must lie in (0, 1)");
  double x = normal_quantile_guess(p);
  // Two Newton steps on normal_cdf. The residual is taken from the nearer
  // tail so it keeps full relative precision for p close to 1.
  for (int step = 0; step < 2; ++step) {
    const double density = normal_pdf(x);
    if (density <= 0.0) break;
    const double residual =
        p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_cdf(-x);
    x -= residual / density;
  }
  return x;
}

double lognormal_pdf(double r, double mu, double sigma) {
  require(r > 0.0, "lognormal_pdf: r must be positive");
  require(sigma > 0.0, "lognormal_pdf: sigma must be positive");
  const double z = (std::log(r) - mu) / sigma;
  return normal_pdf(z) / (r * sigma);
}

double lognormal_cdf(double r, double mu, double sigma) {
  require(r >= 0.0, "lognormal_cdf: r must be nonnegative");
  require(sigma > 0.0, "lognormal_cdf: sigma must be positive");
  if (r == 0.0) return 0.0;
  return normal_cdf((std::log(r) - mu) / sigma);
}

double lognormal_quantile(double p, double mu, double sigma) {
  require(sigma > 0.0, "lognormal_quantile: sigma must be positive");
  return std::exp(mu + sigma * normal_quantile(p));
}

double reg_gamma_P(double a, double x) {
  require(a > 0.0, "reg_gamma_P: a must be positive");
  require(x >= 0.0, "reg_gamma_P: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double reg_beta_I(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, "reg_beta_I: a and b must be positive");
  require(x >= 0.0 && x <= 1.0, "reg_beta_I: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The continued fraction converges fast for x < (a + 1) / (a + b + 2);
  // otherwise use the reflection I_x(a, b) = 1 - I_{1-x}(b, a).
  if (x * (a + b + 2.0) < a + 1.0) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double chi_pdf(double r, int n) {
  require(n >= 1, "chi_pdf: n must be at least 1");
  require(r >= 0.0, "chi_pdf: r must be nonnegative");
  const double half_n = 0.5 * n;
  if (r == 0.0) {
    return n == 1 ? std::sqrt(2.0 / std::numbers::pi) : 0.0;
  }
  const double log_density = (1.0 - half_n) * std::numbers::ln2 -
                             std::lgamma(half_n) + (n - 1) * std::log(r) -
                             0.5 * r * r;
  return std::exp(log_density);
}

double chi_cdf(double r, int n) {
  require(n >= 1, "chi_cdf: n must be at least 1");
  require(r >= 0.0, "chi_cdf: r must be nonnegative");
  return reg_gamma_P(0.5 * n, 0.5 * r * r);
}

double chi_family_cdf(double r, double lambda) {
  require(lambda > 0.0, "chi_family_cdf: lambda must be positive");
  require(r >= 0.0, "chi_family_cdf: r must be nonnegative");
  const double scaled = lambda * r;
  return -std::expm1(-0.5 * scaled * scaled);
}

double chi_family_quantile(double p, double lambda) {
  require(lambda > 0.0, "chi_family_quantile: lambda must be positive");
  require(p >= 0.0 && p < 1.0, "chi_family_quantile: p must lie in [0, 1)");
  return std::sqrt(-2.0 * std::log1p(-p)) / lambda;
}

double disc_average_density(double eps, double mu, double sigma) {
  require(eps > 0.0, "disc_average_density: eps must be positive");
  require(sigma > 0.0, "disc_average_density: sigma must be positive");
  return normal_cdf((std::log(eps) - mu) / sigma) / (std::numbers::pi * eps * eps);
}

double f_distribution_sf(double f, double d1, double d2) {
  require(d1 > 0.0 && d2 > 0.0, "f_distribution_sf: dof must be positive");
  require(f >= 0.0, "f_distribution_sf: statistic must be nonnegative");
  if (std::isinf(f)) return 0.0;
  // Pr(F > f) = I_{d2 / (d2 + d1 f)}(d2 / 2, d1 / 2).
  return reg_beta_I(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

}  // namespace hailchi
