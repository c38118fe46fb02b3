#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "wvc/agents.hpp"

namespace wvc {

/// Cross-section and body dimensions of the corridor. The road occupies the
/// band y in [0, road_width()]; lane 0 carries +x traffic, lane 1 carries -x.
struct GeometryParams {
  double lane_width = 3.7;
  std::size_t lanes = 2;
  double vehicle_length = 4.5;
  double vehicle_width = 1.8;
  double animal_radius = 0.5;
  double spawn_offset = -25.0;
  double exit_offset = 25.0;
  double radar_shoulder_offset = 0.5;

  double road_width() const { return lane_width * static_cast<double>(lanes); }
  double lane_centre(std::size_t lane) const { return lane_width * (static_cast<double>(lane) + 0.5); }
  bool on_road(double y) const { return y >= 0.0 && y <= road_width(); }
};

constexpr std::size_t lane_for(Direction d) { return d == Direction::Forward ? 0 : 1; }

/// Distance travelled along `direction` from `from` to reach `to` on a ring of
/// circumference `length`; result in [0, length).
inline double ring_distance_ahead(double from, double to, Direction direction, double length) {
  double d = std::fmod(sign(direction) * (to - from), length);
  if (d < 0.0) d += length;
  return d;
}

/// Shortest separation between two ring coordinates.
inline double ring_separation(double a, double b, double length) {
  double d = std::fmod(std::abs(a - b), length);
  return std::min(d, length - d);
}

inline double wrap(double x, double length) {
  double w = std::fmod(x, length);
  if (w < 0.0) w += length;
  // fmod of a tiny negative can round to length itself
  return w >= length ? 0.0 : w;
}

}  // namespace wvc
