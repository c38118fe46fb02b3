#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wvc/agents.hpp"
#include "wvc/animal.hpp"
#include "wvc/geometry.hpp"
#include "wvc/vehicle.hpp"

namespace wvc {

struct CorridorConfig {
  double road_length = 1000.0;
  double time_step = 0.1;
  double radar_spacing = 15.0;
  double radar_range = 15.0;
  double magnetometer_spacing = 200.0;
  double awareness_range = 1500.0;
  double boost_factor = 1.8;
  double persistence_window = 30.0;
  double arrival_rate = 15.0;  // animals per hour
  double kappa = 3.0;          // per-second baseline detection rate
  double size_scale = 1.0;
  std::size_t vehicles_per_direction = 4;
  Mode mode = Mode::Aware;
  IdmParams idm;
  BehaviourParams behaviour;
  GeometryParams geometry;
};

enum class Side : std::uint8_t { Near, Far };

/// Radar position and side. The mutable boost clock lives in AwarenessState,
/// indexed by `id`.
struct RadarNode {
  std::size_t id = 0;
  double x = 0.0;
  Side side = Side::Near;
  double y = 0.0;
};

struct MagnetometerSite {
  double x = 0.0;
};

struct Diagnostic {
  std::string field;
  std::string message;
};

/// Empty when the config is usable.
std::vector<Diagnostic> validate_config(const CorridorConfig& config);

/// True iff r_det^2 >= spacing^2 + d_y^2, i.e. no point within d_y of the
/// radar line is further than r_det from its nearest radar.
bool coverage_ok(double spacing, double d_y, double r_det);

/// Alternating-side radar line from x = 0 in steps of `spacing` up to road_length.
std::vector<RadarNode> place_radars(const CorridorConfig& config);

std::vector<MagnetometerSite> place_magnetometers(const CorridorConfig& config);

/// Vehicles evenly spaced on each direction's ring, at cruise speed.
std::vector<VehicleState> place_vehicles(const CorridorConfig& config);

}  // namespace wvc
