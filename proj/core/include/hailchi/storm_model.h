#ifndef HAILCHI_STORM_MODEL_H_
#define HAILCHI_STORM_MODEL_H_

// Forward model of a storm whose binormal damage kernel travels at constant
// velocity under a normal intensity envelope (time rescaled so the envelope
// has unit standard deviation).

#include <chrono>
#include <cstdint>
#include <vector>

#include "hailchi/hail_event.h"
#include "hailchi/linalg.h"

namespace hailchi {

struct Velocity2 {
  double v1 = 0.0;  // east, degrees per model time unit
  double v2 = 0.0;  // north
};

// Standard-form parameters of the time-integrated damage density.
struct TravelingStormParams {
  double sigma1;
  double sigma2;
  double rho;
  SymPosDefMatrix covariance;
};

/// Instantaneous binormal damage density at x for a storm centred at c.
double instantaneous_damage(Vec2 x, Vec2 c);

/// Standard normal storm intensity at (rescaled) time t.
double intensity(double t);

TravelingStormParams covariance_from_velocity(Velocity2 v);

/// Total damage density: closed form of the time integral of
/// intensity(t) * instantaneous_damage(x, t v).
double total_damage_closed(Vec2 x, Velocity2 v);

/// The same density by adaptive quadrature over t in [-12, 12].
/// Throws QuadratureError if the integrator does not converge.
double total_damage_quadrature(Vec2 x, Velocity2 v);

struct SampleOptions {
  // Synthetic timestamps are origin + t * time_unit (rounded to seconds).
  Timestamp origin = std::chrono::sys_days{std::chrono::year{2010} / 1 / 20};
  std::chrono::seconds time_unit{3600};
};

/// Monte Carlo realisation of the model: t ~ N(0, 1), then the event
/// location ~ N(t v, I). Severe probability is 1. Deterministic in `seed`.
std::vector<HailEvent> sample_events(std::size_t count, Velocity2 v, std::uint64_t seed,
                                     const SampleOptions& options = {});

}  // namespace hailchi

#endif  // HAILCHI_STORM_MODEL_H_
