// One line per acceptance criterion; exits nonzero if any criterion fails.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "hailchi/clustering.h"
#include "hailchi/commands.h"
#include "hailchi/fitting.h"
#include "hailchi/special_functions.h"
#include "hailchi/storm_model.h"
#include "test_support.h"

namespace {

using namespace hailchi;
using Clock = std::chrono::steady_clock;

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

StormReport fit_fixture(RadialMetric metric, double* elapsed) {
  testing::TempDir dir("acceptance");
  RunConfig config;
  config.inputs = {testing::data_path("storm4.csv")};
  config.out_dir = dir.str();
  config.single_storm = true;
  config.metric = metric;
  std::ostringstream log;
  const auto start = Clock::now();
  FitSummary summary = cmd_fit(config, log);
  *elapsed = seconds_since(start);
  return summary.reports.at(0);
}

void criteria_1_to_4() {
  double t_cov = 0, t_mah = 0;
  const StormReport r = fit_fixture(RadialMetric::kCovarianceForm, &t_cov);
  const StormReport m = fit_fixture(RadialMetric::kMahalanobis, &t_mah);
  const std::string reference =
      fmt(" [mahalanobis metric: lambda=%.4f S_F=%.4f mu=%.4f sigma=%.4f S^d_G=%.4f p=%.4f]",
          m.chi->lambda_hat, m.chi->sse, m.lognormal->mu_hat, m.lognormal->sigma_hat,
          m.lognormal->sse, m.gof->p_value);

  const double lambda = r.chi->lambda_hat, sf = r.chi->sse;
  verdict(1, within(lambda, 7.288, 7.328) && within(sf, 0.065, 0.069) && t_cov < 1.0,
          fmt("chi fit lambda=%.4f S_F=%.5f (%.3f s, covariance metric)", lambda, sf, t_cov) +
              reference);

  const double mu = r.lognormal->mu_hat, sigma = r.lognormal->sigma_hat, sdg = r.lognormal->sse;
  verdict(2,
          within(mu, -1.872, -1.852) && within(sigma, 0.6177, 0.6277) &&
              within(sdg, 0.0473, 0.0493) && t_cov < 1.0,
          fmt("log-normal fit mu=%.4f sigma=%.4f S^d_G=%.5f (%.3f s)", mu, sigma, sdg, t_cov));

  const double sg = r.lognormal_euclidean->sse;
  verdict(3, within(sg, 0.043, 0.047), fmt("Euclidean log-normal S_G=%.5f", sg));

  const double p = r.gof->p_value;
  verdict(4, within(p, 0.112, 0.172),
          fmt("F-test F=%.4f p=%.4f dof=(%d,%d)", r.gof->f_statistic, p, r.gof->dof_chi,
              r.gof->dof_lognormal));
}

void criterion_5() {
  const auto start = Clock::now();
  double worst = 0;
  for (Velocity2 v : {Velocity2{0, 0}, Velocity2{1, 0}, Velocity2{2, -1}, Velocity2{1, 1}}) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Vec2 x = {-2.0 + i, -2.0 + j};
        const double closed = total_damage_closed(x, v);
        const double quad = total_damage_quadrature(x, v);
        worst = std::max(worst, std::abs(closed - quad) / closed);
      }
    }
  }
  const double t = seconds_since(start);
  verdict(5, worst <= 1e-8 && t < 5.0,
          fmt("closed form vs quadrature max rel err=%.2e (%.3f s)", worst, t));
}

void criterion_6() {
  const auto start = Clock::now();
  const std::size_t n = 100000;
  const Velocity2 v{1, 1};
  const auto events = sample_events(n, v, 20100120);
  const TravelingStormParams params = covariance_from_velocity(v);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x[2] = {events[i].lon, events[i].lat};
    r[i] = std::sqrt(params.covariance.inverse_quadratic_form(x));
  }
  std::sort(r.begin(), r.end());
  double ks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = chi_cdf(r[i], 2);
    ks = std::max({ks, f - double(i) / n, double(i + 1) / n - f});
  }
  const double critical = 1.63 / std::sqrt(double(n));
  const double t = seconds_since(start);
  verdict(6, ks < critical && t < 10.0,
          fmt("KS of Mahalanobis radii vs chi(2): D=%.5f < %.5f (%.3f s)", ks, critical, t));
}

void criterion_7() {
  using boost::math::quadrature::gauss_kronrod;
  double worst_chi = 0;
  for (int n = 1; n <= 6; ++n) {
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const double quad =
          gauss_kronrod<double, 31>::integrate([n](double t) { return chi_pdf(t, n); }, 0.0, r, 15,
                                               1e-15);
      worst_chi = std::max(worst_chi, std::abs(chi_cdf(r, n) - quad));
    }
  }
  double worst_gamma = 0;
  for (int k = 0; k <= 5000; ++k) {
    const double x = 50.0 * k / 5000.0;
    worst_gamma = std::max(worst_gamma, std::abs(reg_gamma_P(1.0, x) - (1.0 - std::exp(-x))));
  }
  verdict(7, worst_chi <= 1e-8 && worst_gamma <= 1e-13,
          fmt("chi_cdf vs quadrature max err=%.2e; P(1,x) vs 1-exp(-x) max err=%.2e", worst_chi,
              worst_gamma));
}

Dendrogram brute_force(const std::vector<FeatureVector>& pts) {
  const std::size_t n = pts.size();
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0;
    for (std::size_t k = 0; k < pts[a].size(); ++k) s += std::pow(pts[a][k] - pts[b][k], 2);
    return std::sqrt(s);
  };
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    ids[i] = i;
  }
  Dendrogram d;
  d.leaf_count = n;
  while (members.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        for (std::size_t a : members[i]) {
          for (std::size_t b : members[j]) {
            if (dist(a, b) < best) {
              best = dist(a, b);
              bi = i;
              bj = j;
            }
          }
        }
      }
    }
    d.merges.push_back({std::min(ids[bi], ids[bj]), std::max(ids[bi], ids[bj]), best});
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    ids[bi] = n + d.merges.size() - 1;
    members.erase(members.begin() + bj);
    ids.erase(ids.begin() + bj);
  }
  return d;
}

void criterion_8() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(5, 40);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int mismatched = 0;
  double worst_height = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FeatureVector> pts(size(rng));
    for (auto& p : pts) p = {u(rng), u(rng)};
    const Dendrogram got = single_linkage(pts);
    const Dendrogram want = brute_force(pts);
    bool same = got.merges.size() == want.merges.size();
    for (std::size_t m = 0; same && m < got.merges.size(); ++m) {
      same = got.merges[m].left == want.merges[m].left &&
             got.merges[m].right == want.merges[m].right;
      worst_height = std::max(worst_height, std::abs(got.merges[m].height - want.merges[m].height));
    }
    if (!same) ++mismatched;
  }
  verdict(8, mismatched == 0 && worst_height <= 1e-12,
          fmt("single linkage vs brute force: %d/200 trees differ, max height diff=%.1e",
              mismatched, worst_height));
}

void criterion_9() {
  double elapsed = 0;
  const StormReport r = fit_fixture(RadialMetric::kCovarianceForm, &elapsed);
  const double mu = r.lognormal->mu_hat, sigma = r.lognormal->sigma_hat;
  bool decreasing = true;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 6; ++k) {
    const double d = disc_average_density(std::pow(10.0, -k), mu, sigma);
    decreasing = decreasing && d < previous;
    previous = d;
  }
  verdict(9, decreasing && previous < 1e-12,
          fmt("disc-average density strictly decreasing, %.2e at eps=1e-6", previous));
}

void criterion_10() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-2.0, 2.0), scale(0.01, 100.0);
  std::uniform_int_distribution<int> size(8, 60);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto events = testing::random_events(rng, size(rng));
    const BinormalFit base = fit_binormal(events);
    const RadialSeries s0 = radial_series(events, base);
    const ChiFit c0 = fit_chi(s0);
    const LogNormalFit l0 = fit_lognormal(s0);
    auto compare = [&](const std::vector<HailEvent>& other) {
      const RadialSeries s = radial_series(other, fit_binormal(other));
      const ChiFit c = fit_chi(s);
      const LogNormalFit l = fit_lognormal(s);
      for (double diff : {c.lambda_hat - c0.lambda_hat, c.sse - c0.sse, l.mu_hat - l0.mu_hat,
                          l.sigma_hat - l0.sigma_hat, l.sse - l0.sse}) {
        worst = std::max(worst, std::abs(diff));
      }
    };

    auto scaled = events;
    const double c = scale(rng);
    for (auto& e : scaled) e.prob *= c;
    compare(scaled);

    double a[4];
    do {
      for (double& x : a) x = u(rng);
    } while (std::abs(a[0] * a[3] - a[1] * a[2]) < 0.2);
    const double b0 = 10 * u(rng), b1 = 10 * u(rng);
    auto moved = events;
    const BinormalFit fm = [&] {
      for (auto& e : moved) {
        const double x = e.lon, y = e.lat;
        e.lon = a[0] * x + a[1] * y + b0;
        e.lat = a[2] * x + a[3] * y + b1;
      }
      return fit_binormal(moved);
    }();
    worst = std::max(worst, std::abs(fm.mean[0] - (a[0] * base.mean[0] + a[1] * base.mean[1] + b0)));
    worst = std::max(worst, std::abs(fm.mean[1] - (a[2] * base.mean[0] + a[3] * base.mean[1] + b1)));
    compare(moved);
  }
  verdict(10, worst <= 1e-8,
          fmt("weight scaling and affine maps on 50 datasets: max deviation=%.2e", worst));
}

void guarded(int id, const std::function<void()>& check) {
  try {
    check();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, criteria_1_to_4);
  guarded(5, criterion_5);
  guarded(6, criterion_6);
  guarded(7, criterion_7);
  guarded(8, criterion_8);
  guarded(9, criterion_9);
  guarded(10, criterion_10);
  std::printf("%s: %d criterion failure(s)\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
