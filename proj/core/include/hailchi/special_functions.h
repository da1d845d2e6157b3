#ifndef HAILCHI_SPECIAL_FUNCTIONS_H_
#define HAILCHI_SPECIAL_FUNCTIONS_H_

// Univariate distributions and the special functions behind them.
//
// Every function here is pure and throws hailchi::DomainError on arguments
// outside its documented domain.

namespace hailchi {

/// Standard normal distribution function.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse of normal_cdf on (0, 1). Round trip accurate to ~1e-15.
double normal_quantile(double p);

/// Log-normal density g(r; mu, sigma) for r > 0, sigma > 0.
double lognormal_pdf(double r, double mu, double sigma);

/// Log-normal distribution function N((ln r - mu) / sigma). r == 0 maps to 0.
double lognormal_cdf(double r, double mu, double sigma);

/// Inverse of lognormal_cdf.
double lognormal_quantile(double p, double mu, double sigma);

/// Regularized lower incomplete gamma function P(a, x), a > 0, x >= 0.
double reg_gamma_P(double a, double x);

/// Regularized incomplete beta function I_x(a, b), a, b > 0, 0 <= x <= 1.
double reg_beta_I(double a, double b, double x);

/// Density of the chi distribution with n degrees of freedom.
double chi_pdf(double r, int n);

/// Distribution function of the chi distribution, P(n/2, r^2/2).
double chi_cdf(double r, int n);

/// Scaled Rayleigh law F(r; lambda) = 1 - exp(-lambda^2 r^2 / 2).
double chi_family_cdf(double r, double lambda);

/// Inverse of chi_family_cdf for p in [0, 1).
double chi_family_quantile(double p, double lambda);

/// Average log-normal radial mass per unit area over a disc of radius eps:
/// N((ln eps - mu) / sigma) / (pi eps^2).
double disc_average_density(double eps, double mu, double sigma);

/// Upper-tail probability Pr(F > f) for Snedecor's F with (d1, d2) dof.
double f_distribution_sf(double f, double d1, double d2);

}  // namespace hailchi

#endif  // HAILCHI_SPECIAL_FUNCTIONS_H_
