#ifndef HAILCHI_FITTING_H_
#define HAILCHI_FITTING_H_

// Per-storm analysis: weighted binormal MLE, reduction to a weighted radial
// sample, least-squares fits of the scaled Rayleigh and log-normal CDFs to
// its empirical distribution, and goodness-of-fit summaries.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hailchi/hail_event.h"
#include "hailchi/linalg.h"

namespace hailchi {

// How an event location is reduced to a radial distance from the fitted
// centre.
enum class RadialMetric {
  // sqrt((x - mu)^T Sigma^{-1} (x - mu)); constant on the fitted ellipses.
  kMahalanobis,
  // |x - mu|.
  kEuclidean,
  // sqrt((x - mu)^T Sigma (x - mu)). Not affine invariant.
  kCovarianceForm,
};

std::string_view to_string(RadialMetric metric);
RadialMetric parse_radial_metric(std::string_view name);  // throws DomainError

struct BinormalFit {
  Vec2 mean;
  SymPosDefMatrix cov;
  double total_weight;

  const EigenDecomposition& eigen() const { return cov.eigen(); }
};

/// Weighted mean sum(P_i x_i) / sum(P_i).
Vec2 estimate_mean(std::span<const HailEvent> events);

/// Weighted (biased, MLE) covariance about `mean`. Throws DegenerateCovariance
/// when the result is not numerically positive definite.
SymPosDefMatrix estimate_cov(std::span<const HailEvent> events, Vec2 mean);

BinormalFit fit_binormal(std::span<const HailEvent> events);

double mahalanobis(Vec2 x, const BinormalFit& fit);
double radial_distance(Vec2 x, const BinormalFit& fit, RadialMetric metric);

// Events ordered by distance with their normalized cumulative weight, i.e.
// the weighted empirical CDF evaluated at each sorted distance.
struct RadialSeries {
  std::vector<double> distances;     // nondecreasing
  std::vector<double> cum_weights;   // strictly increasing, last == 1
  std::vector<std::size_t> order;    // order[i] = event index of entry i
  double total_weight = 0.0;         // raw sum of P_i

  std::size_t size() const { return distances.size(); }
};

RadialSeries radial_series(std::span<const HailEvent> events, const BinormalFit& fit,
                           RadialMetric metric = RadialMetric::kMahalanobis);

/// Builds a series directly from distances and weights (same normalization).
RadialSeries make_radial_series(std::span<const double> distances,
                                std::span<const double> weights);

struct ChiFit {
  double lambda_hat;
  double sse;
  friend bool operator==(const ChiFit&, const ChiFit&) = default;
};

struct LogNormalFit {
  double mu_hat;
  double sigma_hat;
  double sse;
  // All distances coincide, so the objective has a ridge of minimizers. The
  // reported point is one exact minimizer with sigma_hat = 1.
  bool degenerate = false;
};

double chi_objective(const RadialSeries& series, double lambda);
double lognormal_objective(const RadialSeries& series, double mu, double sigma);

/// Least-squares fit of F(r; lambda) = 1 - exp(-lambda^2 r^2 / 2).
ChiFit fit_chi(const RadialSeries& series);

struct LogNormalFitOptions {
  int restarts = 5;
  double diameter_tol = 1e-10;
  int max_iterations = 20000;
};

/// Least-squares fit of the log-normal CDF. Requires all distances > 0.
LogNormalFit fit_lognormal(const RadialSeries& series, const LogNormalFitOptions& options = {});

/// fit_lognormal on the Euclidean-distance series.
LogNormalFit fit_lognormal_euclidean(std::span<const HailEvent> events, const BinormalFit& fit);

struct FTestOptions {
  // Degrees of freedom are n - offset for each fit.
  int chi_dof_offset = 1;
  int lognormal_dof_offset = 2;
};

struct FTestResult {
  double f_statistic;
  double p_value;  // upper tail of F(dof_chi, dof_lognormal)
  int dof_chi;
  int dof_lognormal;
};

FTestResult f_test(double sse_chi, double sse_lognormal, int n, const FTestOptions& options = {});

using Cdf = std::function<double(double)>;
using Quantile = std::function<double(double)>;
using QqPoint = std::pair<double, double>;  // (theoretical, empirical)

/// cum_i - cdf(d_i).
std::vector<double> residuals(const RadialSeries& series, const Cdf& cdf);

/// Q-Q pairs using plotting positions p_i = cum_i * n / (n + 1).
std::vector<QqPoint> qq_points(const RadialSeries& series, const Quantile& quantile);

struct GoFReport {
  FTestResult f_test;
  std::vector<double> residuals_chi;
  std::vector<double> residuals_lognormal;
  std::vector<QqPoint> qq_chi;
  std::vector<QqPoint> qq_lognormal;
};

GoFReport goodness_of_fit(const RadialSeries& series, const ChiFit& chi,
                          const LogNormalFit& lognormal, const FTestOptions& options = {});

/// `count` points on the level set {x : mahalanobis(x) == level}, ordered by
/// parametric angle. The polyline closes from the last vertex to the first.
std::vector<Vec2> ellipse_points(const BinormalFit& fit, double level, int count);

}  // namespace hailchi

#endif  // HAILCHI_FITTING_H_
