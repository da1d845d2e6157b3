#include "hailchi/fitting.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "hailchi/error.h"
#include "hailchi/optimize.h"
#include "hailchi/special_functions.h"
#include "normal_sampler.h"

namespace hailchi {
namespace {

constexpr int kChiGridPoints = 240;
constexpr double kChiGridSpan = 1e-8;  // smallest grid lambda relative to lambda_max
constexpr std::uint64_t kRestartSeed = 0x6861696c;

void check_events(std::span<const HailEvent> events) {
  if (events.empty()) throw DataError("no events");
  for (const HailEvent& e : events) {
    if (!std::isfinite(e.lon) || !std::isfinite(e.lat)) {
      throw DomainError("event has non-finite coordinates");
    }
    if (!std::isfinite(e.prob) || e.prob < 0.0) {
      throw DomainError("event has an invalid weight");
    }
  }
}

}  // namespace

std::string_view to_string(RadialMetric metric) {
  switch (metric) {
    case RadialMetric::kMahalanobis: return "mahalanobis";
    case RadialMetric::kEuclidean: return "euclidean";
    case RadialMetric::kCovarianceForm: return "covariance";
  }
  return "unknown";
}

RadialMetric parse_radial_metric(std::string_view name) {
  if (name == "mahalanobis") return RadialMetric::kMahalanobis;
  if (name == "euclidean") return RadialMetric::kEuclidean;
  if (name == "covariance") return RadialMetric::kCovarianceForm;
  throw DomainError("unknown radial metric '" + std::string(name) + "'");
}

Vec2 estimate_mean(std::span<const HailEvent> events) {
  check_events(events);
  double total = 0.0;
  Vec2 sum{0.0, 0.0};
  for (const HailEvent& e : events) {
    total += e.prob;
    sum[0] += e.prob * e.lon;
    sum[1] += e.prob * e.lat;
  }
  if (!(total > 0.0)) throw DomainError("estimate_mean: total weight must be positive");
  return {sum[0] / total, sum[1] / total};
}

SymPosDefMatrix estimate_cov(std::span<const HailEvent> events, Vec2 mean) {
  check_events(events);
  double total = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const HailEvent& e : events) {
    const double dx = e.lon - mean[0];
    const double dy = e.lat - mean[1];
    total += e.prob;
    sxx += e.prob * dx * dx;
    sxy += e.prob * dx * dy;
    syy += e.prob * dy * dy;
  }
  if (!(total > 0.0)) throw DomainError("estimate_cov: total weight must be positive");
  try {
    return SymPosDefMatrix(2, {sxx / total, sxy / total, sxy / total, syy / total});
  } catch (const NotPositiveDefinite&) {
    throw DegenerateCovariance(
        "weighted covariance is singular or has condition number above 1e12 (" +
        std::to_string(events.size()) + " events)");
  }
}

BinormalFit fit_binormal(std::span<const HailEvent> events) {
  const Vec2 mean = estimate_mean(events);
  SymPosDefMatrix cov = estimate_cov(events, mean);
  double total = 0.0;
  for (const HailEvent& e : events) total += e.prob;
  return {mean, std::move(cov), total};
}

double mahalanobis(Vec2 x, const BinormalFit& fit) {
  const double diff[2] = {x[0] - fit.mean[0], x[1] - fit.mean[1]};
  return std::sqrt(fit.cov.inverse_quadratic_form(diff));
}

double radial_distance(Vec2 x, const BinormalFit& fit, RadialMetric metric) {
  const double diff[2] = {x[0] - fit.mean[0], x[1] - fit.mean[1]};
  switch (metric) {
    case RadialMetric::kMahalanobis: return std::sqrt(fit.cov.inverse_quadratic_form(diff));
    case RadialMetric::kEuclidean: return std::hypot(diff[0], diff[1]);
    case RadialMetric::kCovarianceForm: return std::sqrt(fit.cov.quadratic_form(diff));
  }
  throw DomainError("radial_distance: unknown metric");
}

RadialSeries make_radial_series(std::span<const double> distances,
                                std::span<const double> weights) {
  const std::size_t n = distances.size();
  if (n == 0) throw DataError("radial series needs at least one point");
  if (weights.size() != n) throw DomainError("radial series: weight count mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(distances[i] >= 0.0) || !std::isfinite(distances[i])) {
      throw DomainError("radial series: distances must be finite and >= 0");
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw DomainError("radial series: weights must be positive");
    }
    total += weights[i];
  }

  RadialSeries series;
  series.total_weight = total;
  series.order.resize(n);
  std::iota(series.order.begin(), series.order.end(), 0);
  std::stable_sort(series.order.begin(), series.order.end(),
                   [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });
  series.distances.resize(n);
  series.cum_weights.resize(n);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = series.order[i];
    series.distances[i] = distances[k];
    running += weights[k];
    series.cum_weights[i] = running / total;
  }
  series.cum_weights.back() = 1.0;
  return series;
}

RadialSeries radial_series(std::span<const HailEvent> events, const BinormalFit& fit,
                           RadialMetric metric) {
  check_events(events);
  std::vector<double> distances(events.size());
  std::vector<double> weights(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    distances[i] = radial_distance(events[i].location(), fit, metric);
    weights[i] = events[i].prob;
  }
  return make_radial_series(distances, weights);
}

double chi_objective(const RadialSeries& series, double lambda) {
  double sum = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double r = chi_family_cdf(series.distances[i], lambda) - series.cum_weights[i];
    sum += r * r;
  }
  return sum;
}

double lognormal_objective(const RadialSeries& series, double mu, double sigma) {
  double sum = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double r = lognormal_cdf(series.distances[i], mu, sigma) - series.cum_weights[i];
    sum += r * r;
  }
  return sum;
}

ChiFit fit_chi(const RadialSeries& series) {
  if (series.size() < 2) throw DomainError("fit_chi: need at least 2 points");
  double min_positive = std::numeric_limits<double>::infinity();
  for (double d : series.distances) {
    if (d > 0.0) min_positive = std::min(min_positive, d);
  }
  if (!std::isfinite(min_positive)) throw DomainError("fit_chi: all distances are zero");

  // Coarse log-spaced scan over (0, lambda_max] to bracket the global
  // minimum, then Brent refinement inside the bracket.
  const double lambda_max = 10.0 / min_positive;
  const double log_lo = std::log(lambda_max * kChiGridSpan);
  const double log_hi = std::log(lambda_max);
  std::vector<double> grid(kChiGridPoints);
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kChiGridPoints; ++k) {
    grid[k] = std::exp(log_lo + (log_hi - log_lo) * k / (kChiGridPoints - 1));
    const double value = chi_objective(series, grid[k]);
    if (value < best_value) {
      best_value = value;
      best = static_cast<std::size_t>(k);
    }
  }
  const double lo = best > 0 ? grid[best - 1] : 0.5 * grid[0];
  const double hi = best + 1 < grid.size() ? grid[best + 1] : grid.back();
  const ScalarMinimum refined =
      brent_minimize([&](double lambda) { return chi_objective(series, lambda); }, lo, hi);
  double lambda_hat = refined.x;
  if (best_value < refined.value) lambda_hat = grid[best];
  return {lambda_hat, chi_objective(series, lambda_hat)};
}

LogNormalFit fit_lognormal(const RadialSeries& series, const LogNormalFitOptions& options) {
  const std::size_t n = series.size();
  if (n < 3) throw DomainError("fit_lognormal: need at least 3 points");
  if (series.distances.front() <= 0.0) {
    throw DomainError("fit_lognormal: zero distance in series");
  }

  // Start from the weighted moments of log distance.
  double mean_log = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_log += (series.cum_weights[i] - previous) * std::log(series.distances[i]);
    previous = series.cum_weights[i];
  }
  double var_log = 0.0;
  previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = std::log(series.distances[i]) - mean_log;
    var_log += (series.cum_weights[i] - previous) * dev * dev;
    previous = series.cum_weights[i];
  }

  if (series.distances.back() == series.distances.front()) {
    // G(r0) can take any value in (0, 1); the best constant is the mean of
    // the cumulative weights.
    const double target =
        std::accumulate(series.cum_weights.begin(), series.cum_weights.end(), 0.0) /
        static_cast<double>(n);
    const double sigma = 1.0;
    const double mu = std::log(series.distances.front()) - sigma * normal_quantile(target);
    return {mu, sigma, lognormal_objective(series, mu, sigma), true};
  }

  const double sigma0 = std::max(std::sqrt(var_log), 1e-3);
  // Parameterized as (mu, ln sigma) so the simplex never leaves sigma > 0.
  auto objective = [&](const std::vector<double>& p) {
    return lognormal_objective(series, p[0], std::exp(p[1]));
  };
  SimplexOptions simplex;
  simplex.diameter_tol = options.diameter_tol;
  simplex.max_iterations = options.max_iterations;

  SimplexMinimum best =
      nelder_mead(objective, {mean_log, std::log(sigma0)}, {0.5 * sigma0, 0.25}, simplex);
  internal::NormalSampler jitter(kRestartSeed);
  for (int r = 0; r < options.restarts; ++r) {
    const double sigma_best = std::exp(best.x[1]);
    std::vector<double> start = {best.x[0] + 0.5 * sigma_best * jitter(),
                                 best.x[1] + 0.25 * jitter()};
    try {
      SimplexMinimum candidate =
          nelder_mead(objective, std::move(start), {0.5 * sigma_best, 0.25}, simplex);
      if (candidate.value < best.value) best = std::move(candidate);
    } catch (const ConvergenceError&) {
      // A restart that stalls does not invalidate the converged answer.
    }
  }
  const double mu_hat = best.x[0];
  const double sigma_hat = std::exp(best.x[1]);
  return {mu_hat, sigma_hat, lognormal_objective(series, mu_hat, sigma_hat), false};
}

LogNormalFit fit_lognormal_euclidean(std::span<const HailEvent> events, const BinormalFit& fit) {
  return fit_lognormal(radial_series(events, fit, RadialMetric::kEuclidean));
}

FTestResult f_test(double sse_chi, double sse_lognormal, int n, const FTestOptions& options) {
  if (!(sse_chi > 0.0) || !(sse_lognormal > 0.0)) {
    throw DomainError("f_test: sums of squares must be positive");
  }
  if (n < 4) throw DomainError("f_test: need at least 4 events");
  const int dof_chi = n - options.chi_dof_offset;
  const int dof_lognormal = n - options.lognormal_dof_offset;
  if (dof_chi < 1 || dof_lognormal < 1) {
    throw DomainError("f_test: degrees of freedom must be positive");
  }
  const double f = (sse_chi / dof_chi) / (sse_lognormal / dof_lognormal);
  return {f, f_distribution_sf(f, dof_chi, dof_lognormal), dof_chi, dof_lognormal};
}

std::vector<double> residuals(const RadialSeries& series, const Cdf& cdf) {
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    out[i] = series.cum_weights[i] - cdf(series.distances[i]);
  }
  return out;
}

std::vector<QqPoint> qq_points(const RadialSeries& series, const Quantile& quantile) {
  const double n = static_cast<double>(series.size());
  std::vector<QqPoint> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double p = series.cum_weights[i] * n / (n + 1.0);
    out[i] = {quantile(p), series.distances[i]};
  }
  return out;
}

GoFReport goodness_of_fit(const RadialSeries& series, const ChiFit& chi,
                          const LogNormalFit& lognormal, const FTestOptions& options) {
  const double lambda = chi.lambda_hat;
  const double mu = lognormal.mu_hat;
  const double sigma = lognormal.sigma_hat;
  GoFReport report;
  report.f_test = f_test(chi.sse, lognormal.sse, static_cast<int>(series.size()), options);
  report.residuals_chi = residuals(series, [&](double r) { return chi_family_cdf(r, lambda); });
  report.residuals_lognormal =
      residuals(series, [&](double r) { return lognormal_cdf(r, mu, sigma); });
  report.qq_chi = qq_points(series, [&](double p) { return chi_family_quantile(p, lambda); });
  report.qq_lognormal =
      qq_points(series, [&](double p) { return lognormal_quantile(p, mu, sigma); });
  return report;
}

std::vector<Vec2> ellipse_points(const BinormalFit& fit, double level, int count) {
  if (!(level > 0.0)) throw DomainError("ellipse_points: level must be positive");
  if (count < 8) throw DomainError("ellipse_points: need at least 8 vertices");
  const EigenDecomposition& eigen = fit.eigen();
  const SquareMatrix& q = eigen.rotation;
  std::vector<Vec2> points(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / count;
    // Point in principal-axis coordinates, mapped back by Q^T.
    const double y0 = level * eigen.semi_axes[0] * std::cos(angle);
    const double y1 = level * eigen.semi_axes[1] * std::sin(angle);
    points[static_cast<std::size_t>(j)] = {fit.mean[0] + q(0, 0) * y0 + q(1, 0) * y1,
                                           fit.mean[1] + q(0, 1) * y0 + q(1, 1) * y1};
  }
  return points;
}

}  // namespace hailchi
