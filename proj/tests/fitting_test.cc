#include "hailchi/fitting.h"

#include <gtest/gtest.h>

#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <random>

#include "hailchi/error.h"
#include "hailchi/special_functions.h"
#include "hailchi/storm_model.h"
#include "test_support.h"

namespace hailchi {
namespace {

using testing::random_events;
using testing::storm4_events;

struct Moments {
  double m0, m1, c00, c01, c11;
};

Moments weighted_moments(const std::vector<HailEvent>& events) {
  double w = 0, s0 = 0, s1 = 0;
  for (const auto& e : events) {
    w += e.prob;
    s0 += e.prob * e.lon;
    s1 += e.prob * e.lat;
  }
  Moments m{s0 / w, s1 / w, 0, 0, 0};
  for (const auto& e : events) {
    m.c00 += e.prob * (e.lon - m.m0) * (e.lon - m.m0) / w;
    m.c01 += e.prob * (e.lon - m.m0) * (e.lat - m.m1) / w;
    m.c11 += e.prob * (e.lat - m.m1) * (e.lat - m.m1) / w;
  }
  return m;
}

TEST(BinormalTest, MatchesWeightedMoments) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto events = random_events(rng, 30);
    const Moments want = weighted_moments(events);
    const BinormalFit fit = fit_binormal(events);
    EXPECT_NEAR(fit.mean[0], want.m0, 1e-12);
    EXPECT_NEAR(fit.mean[1], want.m1, 1e-12);
    EXPECT_NEAR(fit.cov(0, 0), want.c00, 1e-12);
    EXPECT_NEAR(fit.cov(0, 1), want.c01, 1e-12);
    EXPECT_NEAR(fit.cov(1, 1), want.c11, 1e-12);
  }
}

TEST(BinormalTest, IntegerWeightsEqualReplication) {
  std::mt19937_64 rng(2);
  auto events = random_events(rng, 12);
  std::vector<HailEvent> replicated;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const int copies = 1 + static_cast<int>(i % 3);
    events[i].prob = copies / 3.0;
    for (int c = 0; c < copies; ++c) {
      HailEvent e = events[i];
      e.prob = 1.0;
      replicated.push_back(e);
    }
  }
  const BinormalFit a = fit_binormal(events), b = fit_binormal(replicated);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(a.mean[i], b.mean[i], 1e-12);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(a.cov(i, j), b.cov(i, j), 1e-12);
  }
}

TEST(BinormalTest, RecoversSimulatedCovariance) {
  const auto events = sample_events(100000, {2, -1}, 77);
  const BinormalFit fit = fit_binormal(events);
  EXPECT_NEAR(fit.cov(0, 0), 5.0, 0.1);
  EXPECT_NEAR(fit.cov(0, 1), -2.0, 0.06);
  EXPECT_NEAR(fit.cov(1, 1), 2.0, 0.04);
}

TEST(BinormalTest, DegenerateInputs) {
  auto events = storm4_events();
  EXPECT_THROW(fit_binormal(std::vector<HailEvent>(events.begin(), events.begin() + 2)),
               DegenerateCovariance);
  std::vector<HailEvent> line(5, events[0]);
  for (int i = 0; i < 5; ++i) {
    line[i].lon += 0.1 * i;
    line[i].lat += 0.2 * i;
  }
  EXPECT_THROW(fit_binormal(line), DegenerateCovariance);
  EXPECT_THROW(fit_binormal({}), DataError);
  events[3].prob = -0.1;
  EXPECT_THROW(fit_binormal(events), DomainError);
  for (auto& e : events) e.prob = 0.0;
  EXPECT_THROW(fit_binormal(events), DomainError);
}

TEST(RadialTest, MetricsOnKnownCovariance) {
  const BinormalFit fit{{1.0, 2.0}, SymPosDefMatrix(2, {4.0, 0.0, 0.0, 1.0}), 1.0};
  EXPECT_DOUBLE_EQ(mahalanobis({3.0, 2.0}, fit), 1.0);
  EXPECT_DOUBLE_EQ(radial_distance({3.0, 2.0}, fit, RadialMetric::kEuclidean), 2.0);
  EXPECT_DOUBLE_EQ(radial_distance({3.0, 2.0}, fit, RadialMetric::kCovarianceForm), 4.0);
  EXPECT_EQ(parse_radial_metric("covariance"), RadialMetric::kCovarianceForm);
  EXPECT_EQ(to_string(RadialMetric::kEuclidean), "euclidean");
  EXPECT_THROW(parse_radial_metric("manhattan"), DomainError);
}

TEST(RadialTest, SeriesIsWeightedEcdf) {
  const std::vector<double> d = {3.0, 1.0, 2.0, 1.0};
  const std::vector<double> w = {1.0, 2.0, 3.0, 4.0};
  const RadialSeries s = make_radial_series(d, w);
  EXPECT_EQ(s.distances, (std::vector<double>{1.0, 1.0, 2.0, 3.0}));
  EXPECT_EQ(s.order, (std::vector<std::size_t>{1, 3, 2, 0}));
  EXPECT_NEAR(s.cum_weights[0], 0.2, 1e-16);
  EXPECT_NEAR(s.cum_weights[1], 0.6, 1e-16);
  EXPECT_NEAR(s.cum_weights[2], 0.9, 1e-16);
  EXPECT_EQ(s.cum_weights[3], 1.0);
  EXPECT_EQ(s.total_weight, 10.0);
  EXPECT_THROW(make_radial_series(d, std::vector<double>{1, 1, 1}), DomainError);
}

// Brute-force minimum over a fine log grid.
double grid_min_chi(const RadialSeries& s, double lo, double hi) {
  double best = INFINITY;
  for (int k = 0; k <= 200000; ++k) {
    best = std::min(best, chi_objective(s, lo * std::pow(hi / lo, k / 200000.0)));
  }
  return best;
}

TEST(ChiFitTest, NoWorseThanDenseGrid) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto events = random_events(rng, 25);
    const RadialSeries s = radial_series(events, fit_binormal(events));
    const ChiFit fit = fit_chi(s);
    EXPECT_LE(fit.sse, grid_min_chi(s, 1e-3, 1e3) + 1e-14);
    const double h = 1e-6 * fit.lambda_hat;
    const double slope = (chi_objective(s, fit.lambda_hat + h) - chi_objective(s, fit.lambda_hat - h)) / (2 * h);
    EXPECT_NEAR(slope, 0.0, 1e-6);
  }
}

TEST(ChiFitTest, ExactRayleighQuantilesRecoverLambda) {
  const double lambda = 3.7;
  std::vector<double> d, w(50, 1.0);
  for (int i = 1; i <= 50; ++i) d.push_back(chi_family_quantile((i - 0.5) / 50.0, lambda));
  const RadialSeries s = make_radial_series(d, w);
  EXPECT_NEAR(fit_chi(s).lambda_hat, lambda, 0.15);
}

TEST(ChiFitTest, SimulatedStormHasUnitScale) {
  const auto events = sample_events(10000, {1, 1}, 12345);
  const ChiFit fit = fit_chi(radial_series(events, fit_binormal(events)));
  EXPECT_NEAR(fit.lambda_hat, 1.0, 0.02);
}

TEST(LogNormalFitTest, NoWorseThanGridSearch) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    const auto events = random_events(rng, 30);
    const RadialSeries s = radial_series(events, fit_binormal(events));
    const LogNormalFit fit = fit_lognormal(s);
    double best = INFINITY;
    for (double mu = -4; mu <= 3; mu += 0.005) {
      for (double ls = -3; ls <= 1.5; ls += 0.005) {
        best = std::min(best, lognormal_objective(s, mu, std::exp(ls)));
      }
    }
    EXPECT_LE(fit.sse, best + 1e-12);
    EXPECT_FALSE(fit.degenerate);
  }
}

TEST(LogNormalFitTest, ExactQuantilesRecoverParameters) {
  std::vector<double> d, w(200, 1.0);
  for (int i = 1; i <= 200; ++i) d.push_back(lognormal_quantile(i / 201.0, -0.7, 0.4));
  const LogNormalFit fit = fit_lognormal(make_radial_series(d, w));
  EXPECT_NEAR(fit.mu_hat, -0.7, 0.01);
  EXPECT_NEAR(fit.sigma_hat, 0.4, 0.01);
}

TEST(LogNormalFitTest, EqualDistancesAreDegenerate) {
  const std::vector<double> d(5, 0.3), w(5, 1.0);
  const LogNormalFit fit = fit_lognormal(make_radial_series(d, w));
  EXPECT_TRUE(fit.degenerate);
  EXPECT_EQ(fit.sigma_hat, 1.0);
  EXPECT_NEAR(lognormal_cdf(0.3, fit.mu_hat, fit.sigma_hat), 0.6, 1e-14);
}

TEST(LogNormalFitTest, RejectsZeroDistance) {
  EXPECT_THROW(fit_lognormal(make_radial_series(std::vector<double>{0, 1, 2},
                                                std::vector<double>{1, 1, 1})),
               DomainError);
}

TEST(FixtureTest, CovarianceFormPenalties) {
  const auto events = storm4_events();
  const BinormalFit fit = fit_binormal(events);
  EXPECT_NEAR(fit.total_weight, 21.1, 1e-12);
  const RadialSeries s = radial_series(events, fit, RadialMetric::kCovarianceForm);
  const ChiFit chi = fit_chi(s);
  EXPECT_NEAR(chi.lambda_hat, 7.308, 0.02);
  EXPECT_NEAR(chi.sse, 0.067, 0.002);
  const LogNormalFit ln = fit_lognormal(s);
  EXPECT_NEAR(ln.mu_hat, -1.862, 0.01);
  EXPECT_NEAR(ln.sigma_hat, 0.6227, 0.005);
  EXPECT_NEAR(ln.sse, 0.0483, 0.001);
  EXPECT_NEAR(fit_lognormal_euclidean(events, fit).sse, 0.045, 0.002);
  const FTestResult f = f_test(chi.sse, ln.sse, 46);
  EXPECT_NEAR(f.p_value, 0.142, 0.03);
}

TEST(FixtureTest, MahalanobisFitValues) {
  const auto events = storm4_events();
  const BinormalFit fit = fit_binormal(events);
  const RadialSeries s = radial_series(events, fit);
  const ChiFit chi = fit_chi(s);
  const LogNormalFit ln = fit_lognormal(s);
  EXPECT_NEAR(chi.lambda_hat, 1.136, 0.001);
  EXPECT_NEAR(chi.sse, 0.1326, 0.0005);
  EXPECT_NEAR(ln.sse, 0.0678, 0.0005);
  // Weighted mean squared Mahalanobis radius of the MLE is exactly 2.
  double m2 = 0;
  for (const auto& e : events) m2 += e.prob * std::pow(mahalanobis(e.location(), fit), 2);
  EXPECT_NEAR(m2 / fit.total_weight, 2.0, 1e-12);
}

TEST(FTestTest, MatchesReferenceDistribution) {
  const FTestResult r = f_test(0.067, 0.0483, 46);
  EXPECT_EQ(r.dof_chi, 45);
  EXPECT_EQ(r.dof_lognormal, 44);
  EXPECT_NEAR(r.f_statistic, (0.067 / 45) / (0.0483 / 44), 1e-15);
  boost::math::fisher_f_distribution<double> ref(45, 44);
  EXPECT_NEAR(r.p_value, boost::math::cdf(boost::math::complement(ref, r.f_statistic)), 1e-12);
  FTestOptions same{2, 2};
  EXPECT_EQ(f_test(1.0, 1.0, 10, same).p_value, 0.5);
  EXPECT_THROW(f_test(0.0, 1.0, 10), DomainError);
  EXPECT_THROW(f_test(1.0, 1.0, 3), DomainError);
}

TEST(GoFTest, ResidualsAndQqPoints) {
  const std::vector<double> d = {0.1, 0.2, 0.4}, w = {1, 1, 2};
  const RadialSeries s = make_radial_series(d, w);
  const auto res = residuals(s, [](double r) { return r; });
  EXPECT_NEAR(res[0], 0.25 - 0.1, 1e-15);
  EXPECT_NEAR(res[2], 1.0 - 0.4, 1e-15);
  const auto qq = qq_points(s, [](double p) { return 10 * p; });
  EXPECT_NEAR(qq[2].first, 10 * 0.75, 1e-14);
  EXPECT_EQ(qq[2].second, 0.4);
}

TEST(EllipseTest, PointsLieOnLevelSet) {
  std::mt19937_64 rng(5);
  const auto events = random_events(rng, 40);
  const BinormalFit fit = fit_binormal(events);
  for (double level : {0.5, 1.0, 2.0}) {
    for (const Vec2& p : ellipse_points(fit, level, 64)) {
      EXPECT_NEAR(mahalanobis(p, fit), level, 1e-10);
    }
  }
  EXPECT_THROW(ellipse_points(fit, 1.0, 4), DomainError);
}

// Random invertible affine map applied to every event.
std::vector<HailEvent> transform(const std::vector<HailEvent>& events, const double a[4],
                                 const double b[2]) {
  std::vector<HailEvent> out = events;
  for (auto& e : out) {
    const double x = e.lon, y = e.lat;
    e.lon = a[0] * x + a[1] * y + b[0];
    e.lat = a[2] * x + a[3] * y + b[1];
  }
  return out;
}

TEST(InvarianceTest, WeightScaleAndAffineMaps) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0), scale(0.01, 100.0);
  std::uniform_int_distribution<int> size(8, 60);
  for (int trial = 0; trial < 50; ++trial) {
    const auto events = random_events(rng, size(rng));
    const BinormalFit base = fit_binormal(events);
    const RadialSeries s0 = radial_series(events, base);
    const ChiFit chi0 = fit_chi(s0);
    const LogNormalFit ln0 = fit_lognormal(s0);

    auto scaled = events;
    const double c = scale(rng);
    for (auto& e : scaled) e.prob *= c;
    const BinormalFit fs = fit_binormal(scaled);
    EXPECT_NEAR(fs.mean[0], base.mean[0], 1e-8);
    EXPECT_NEAR(fs.cov(0, 1), base.cov(0, 1), 1e-8);
    const RadialSeries ss = radial_series(scaled, fs);
    EXPECT_NEAR(fit_chi(ss).lambda_hat, chi0.lambda_hat, 1e-8);
    EXPECT_NEAR(fit_lognormal(ss).mu_hat, ln0.mu_hat, 1e-8);

    double a[4];
    do {
      for (double& x : a) x = u(rng);
    } while (std::abs(a[0] * a[3] - a[1] * a[2]) < 0.2);
    const double b[2] = {10 * u(rng), 10 * u(rng)};
    const auto moved = transform(events, a, b);
    const BinormalFit fm = fit_binormal(moved);
    EXPECT_NEAR(fm.mean[0], a[0] * base.mean[0] + a[1] * base.mean[1] + b[0], 1e-8);
    EXPECT_NEAR(fm.mean[1], a[2] * base.mean[0] + a[3] * base.mean[1] + b[1], 1e-8);
    // A Sigma A^T
    const double s00 = base.cov(0, 0), s01 = base.cov(0, 1), s11 = base.cov(1, 1);
    EXPECT_NEAR(fm.cov(0, 0), a[0] * a[0] * s00 + 2 * a[0] * a[1] * s01 + a[1] * a[1] * s11, 1e-8);
    EXPECT_NEAR(fm.cov(0, 1),
                a[0] * a[2] * s00 + (a[0] * a[3] + a[1] * a[2]) * s01 + a[1] * a[3] * s11, 1e-8);
    const RadialSeries sm = radial_series(moved, fm);
    for (std::size_t i = 0; i < s0.size(); ++i) EXPECT_NEAR(sm.distances[i], s0.distances[i], 1e-8);
    const ChiFit chim = fit_chi(sm);
    const LogNormalFit lnm = fit_lognormal(sm);
    EXPECT_NEAR(chim.lambda_hat, chi0.lambda_hat, 1e-8);
    EXPECT_NEAR(chim.sse, chi0.sse, 1e-8);
    EXPECT_NEAR(lnm.mu_hat, ln0.mu_hat, 1e-8);
    EXPECT_NEAR(lnm.sigma_hat, ln0.sigma_hat, 1e-8);
    EXPECT_NEAR(lnm.sse, ln0.sse, 1e-8);
  }
}

}  // namespace
}  // namespace hailchi
