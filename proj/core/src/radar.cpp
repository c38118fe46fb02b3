#include "wvc/radar.hpp"

#include <algorithm>
#include <cmath>

#include "wvc/awareness.hpp"

namespace wvc {

double f_size(double sigma) { return std::min(2.0, 0.4 + 0.6 * sigma); }

double detection_probability(double kappa, double sigma, double beta, double dt) {
  return -std::expm1(-kappa * f_size(sigma) * beta * dt);
}

std::pair<std::size_t, std::size_t> radars_near(std::span<const RadarNode> radars, double x, double reach) {
  auto lo = std::lower_bound(radars.begin(), radars.end(), x - reach,
                             [](const RadarNode& r, double v) { return r.x < v; });
  auto hi = std::upper_bound(lo, radars.end(), x + reach, [](double v, const RadarNode& r) { return v < r.x; });
  return {static_cast<std::size_t>(lo - radars.begin()), static_cast<std::size_t>(hi - radars.begin())};
}

std::optional<DetectionEvent> try_detect(AnimalState& animal, std::span<const RadarNode> radars,
                                         const AwarenessState& awareness, double now, double dt,
                                         const DetectionParams& params, Rng& rng) {
  if (animal.detected) return std::nullopt;
  const auto [first, last] = radars_near(radars, animal.x, params.r_det);
  const double r2 = params.r_det * params.r_det;
  bool in_range = false;
  for (std::size_t i = first; i < last; ++i) {
    const RadarNode& radar = radars[i];
    const double dx = animal.x - radar.x;
    const double dy = animal.y - radar.y;
    if (dx * dx + dy * dy > r2) continue;
    if (!in_range) {
      in_range = true;
      if (!animal.first_in_range_at) animal.first_in_range_at = now;
    }
    const bool boosted = awareness.mode == Mode::Aware && radar.id < awareness.boost_until.size() &&
                         awareness.boost_until[radar.id] > now;
    const double p = detection_probability(params.kappa, animal.size, boosted ? params.boost_factor : 1.0, dt);
    if (uniform01(rng) < p) {
      animal.detected = true;
      animal.detected_at = now;
      return DetectionEvent{animal.id, radar.id, now, now - *animal.first_in_range_at};
    }
  }
  return std::nullopt;
}

}  // namespace wvc
