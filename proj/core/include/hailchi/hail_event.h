#ifndef HAILCHI_HAIL_EVENT_H_
#define HAILCHI_HAIL_EVENT_H_

#include <array>
#include <chrono>

namespace hailchi {

using Vec2 = std::array<double, 2>;
using Timestamp = std::chrono::sys_seconds;

// One radar hail detection. `prob` is the severe probability in (0, 1],
// used as the event's weight.
struct HailEvent {
  Timestamp time{};
  double lon = 0.0;
  double lat = 0.0;
  double prob = 1.0;

  Vec2 location() const { return {lon, lat}; }
  friend bool operator==(const HailEvent&, const HailEvent&) = default;
};

}  // namespace hailchi

#endif  // HAILCHI_HAIL_EVENT_H_
