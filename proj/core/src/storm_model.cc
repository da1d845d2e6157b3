#include "hailchi/storm_model.h"

#include <cmath>
#include <numbers>

#include "hailchi/error.h"
#include "hailchi/quadrature.h"
#include "normal_sampler.h"

namespace hailchi {
namespace {

constexpr double kTimeHorizon = 12.0;
constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;

}  // namespace

double instantaneous_damage(Vec2 x, Vec2 c) {
  const double dx = x[0] - c[0];
  const double dy = x[1] - c[1];
  return kInvTwoPi * std::exp(-0.5 * (dx * dx + dy * dy));
}

double intensity(double t) {
  return std::numbers::inv_sqrtpi / std::numbers::sqrt2 * std::exp(-0.5 * t * t);
}

TravelingStormParams covariance_from_velocity(Velocity2 v) {
  if (!std::isfinite(v.v1) || !std::isfinite(v.v2)) {
    throw DomainError("covariance_from_velocity: velocity must be finite");
  }
  const double var1 = 1.0 + v.v1 * v.v1;
  const double var2 = 1.0 + v.v2 * v.v2;
  const double sigma1 = std::sqrt(var1);
  const double sigma2 = std::sqrt(var2);
  const double rho = v.v1 * v.v2 / (sigma1 * sigma2);
  // rho * sigma1 * sigma2 is exactly v1 v2.
  SymPosDefMatrix cov(2, {var1, v.v1 * v.v2, v.v1 * v.v2, var2});
  return {sigma1, sigma2, rho, std::move(cov)};
}

double total_damage_closed(Vec2 x, Velocity2 v) {
  const double alpha_sq = 1.0 + v.v1 * v.v1 + v.v2 * v.v2;
  const double norm_sq = x[0] * x[0] + x[1] * x[1];
  const double inner = v.v1 * x[0] + v.v2 * x[1];
  return kInvTwoPi * std::exp(-0.5 * (norm_sq - inner * inner / alpha_sq)) /
         std::sqrt(alpha_sq);
}

double total_damage_quadrature(Vec2 x, Velocity2 v) {
  auto integrand = [&](double t) {
    return intensity(t) * instantaneous_damage(x, {t * v.v1, t * v.v2});
  };
  QuadratureOptions options;
  options.abs_tol = 1e-12;
  options.rel_tol = 1e-13;
  return integrate(integrand, -kTimeHorizon, kTimeHorizon, options).value;
}

std::vector<HailEvent> sample_events(std::size_t count, Velocity2 v, std::uint64_t seed,
                                     const SampleOptions& options) {
  if (count == 0) throw DomainError("sample_events: count must be positive");
  if (!std::isfinite(v.v1) || !std::isfinite(v.v2)) {
    throw DomainError("sample_events: velocity must be finite");
  }
  internal::NormalSampler normal(seed);
  std::vector<HailEvent> events;
  events.reserve(count);
  const double unit = static_cast<double>(options.time_unit.count());
  for (std::size_t i = 0; i < count; ++i) {
    const double t = normal();
    const double lon = t * v.v1 + normal();
    const double lat = t * v.v2 + normal();
    const auto offset = std::chrono::seconds(std::llround(t * unit));
    events.push_back({options.origin + offset, lon, lat, 1.0});
  }
  return events;
}

}  // namespace hailchi
