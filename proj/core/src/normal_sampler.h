#ifndef HAILCHI_SRC_NORMAL_SAMPLER_H_
#define HAILCHI_SRC_NORMAL_SAMPLER_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hailchi::internal {

// Standard normal variates from mt19937_64 via Box-Muller. Unlike
// std::normal_distribution the output sequence is identical on every
// standard library.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform_open() {
    // 53 random bits mapped into (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hailchi::internal

#endif  // HAILCHI_SRC_NORMAL_SAMPLER_H_
