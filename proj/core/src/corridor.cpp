#include "wvc/corridor.hpp"

#include <cmath>
#include <string>

namespace wvc {

namespace {

void require(std::vector<Diagnostic>& out, bool ok, const char* field, const char* message) {
  if (!ok) out.push_back(Diagnostic{field, message});
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }
bool probability(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

std::vector<Diagnostic> validate_config(const CorridorConfig& c) {
  std::vector<Diagnostic> d;
  require(d, positive(c.road_length), "road_length", "must be > 0");
  require(d, positive(c.time_step), "time_step", "must be > 0");
  require(d, positive(c.radar_spacing), "radar_spacing", "must be > 0");
  require(d, positive(c.radar_range), "radar_range", "must be > 0");
  require(d, positive(c.magnetometer_spacing), "magnetometer_spacing", "must be > 0");
  require(d, non_negative(c.awareness_range), "awareness_range", "must be >= 0");
  require(d, std::isfinite(c.boost_factor) && c.boost_factor >= 1.0, "boost_factor", "must be >= 1");
  require(d, non_negative(c.persistence_window), "persistence_window", "must be >= 0");
  require(d, non_negative(c.arrival_rate), "arrival_rate", "must be >= 0");
  require(d, non_negative(c.kappa), "kappa", "must be >= 0");
  require(d, positive(c.size_scale), "size_scale", "must be > 0");
  require(d, c.mode == Mode::Control || c.mode == Mode::Detection || c.mode == Mode::Aware, "mode",
          "must be control, detection or aware");

  const IdmParams& p = c.idm;
  require(d, positive(p.s0), "idm.s0", "must be > 0");
  require(d, positive(p.T), "idm.T", "must be > 0");
  require(d, positive(p.a_max), "idm.a_max", "must be > 0");
  require(d, positive(p.b_conf), "idm.b_conf", "must be > 0");
  require(d, positive(p.delta), "idm.delta", "must be > 0");
  require(d, positive(p.a_em) && p.a_em > p.b_conf, "idm.a_em", "must be > idm.b_conf");
  require(d, positive(p.v_cruise), "idm.v_cruise", "must be > 0");
  require(d, positive(p.v_caution) && p.v_caution < p.v_cruise, "idm.v_caution", "must be in (0, idm.v_cruise)");
  require(d, positive(p.t_react), "idm.t_react", "must be > 0");

  const BehaviourParams& b = c.behaviour;
  require(d, positive(b.forage_dwell_min) && b.forage_dwell_max >= b.forage_dwell_min, "behaviour.forage_dwell",
          "need 0 < min <= max");
  require(d, positive(b.hesitate_dwell_min) && b.hesitate_dwell_max >= b.hesitate_dwell_min,
          "behaviour.hesitate_dwell", "need 0 < min <= max");
  require(d, probability(b.p_cross_no_threat), "behaviour.p_cross_no_threat", "must be in [0, 1]");
  require(d, probability(b.p_frozen_threat), "behaviour.p_frozen_threat", "must be in [0, 1]");
  require(d, probability(b.p_flee_threat), "behaviour.p_flee_threat", "must be in [0, 1]");
  require(d, b.p_frozen_threat + b.p_flee_threat <= 1.0, "behaviour.p_flee_threat",
          "p_frozen_threat + p_flee_threat must be <= 1");
  require(d, probability(b.p_freeze_crossing), "behaviour.p_freeze_crossing", "must be in [0, 1]");
  require(d, positive(b.v_approach) && b.v_approach < b.v_cross && b.v_cross < b.v_flee, "behaviour.v_cross",
          "need 0 < v_approach < v_cross < v_flee");
  require(d, positive(b.t_threat), "behaviour.t_threat", "must be > 0");
  require(d, non_negative(b.v_threat), "behaviour.v_threat", "must be >= 0");
  require(d, positive(b.frozen_max_dwell), "behaviour.frozen_max_dwell", "must be > 0");
  require(d, non_negative(b.interaction_radius), "behaviour.interaction_radius", "must be >= 0");
  double weight_sum = 0.0;
  bool classes_ok = !b.size_mixture.empty();
  for (const SizeClass& sc : b.size_mixture) {
    weight_sum += sc.weight;
    classes_ok = classes_ok && probability(sc.weight) && positive(sc.lo) && sc.hi >= sc.lo;
  }
  require(d, classes_ok, "behaviour.size_mixture", "each class needs weight in [0,1] and 0 < lo <= hi");
  require(d, std::abs(weight_sum - 1.0) < 1e-9, "behaviour.size_mixture", "weights must sum to 1");

  const GeometryParams& g = c.geometry;
  require(d, positive(g.lane_width), "geometry.lane_width", "must be > 0");
  require(d, g.lanes == 2, "geometry.lanes", "must be 2 (one lane per direction)");
  require(d, positive(g.vehicle_length), "geometry.vehicle_length", "must be > 0");
  require(d, positive(g.vehicle_width) && g.vehicle_width < g.lane_width, "geometry.vehicle_width",
          "must be in (0, lane_width)");
  require(d, positive(g.animal_radius), "geometry.animal_radius", "must be > 0");
  require(d, std::isfinite(g.spawn_offset) && g.spawn_offset < 0.0, "geometry.spawn_offset", "must be < 0");
  require(d, positive(g.exit_offset), "geometry.exit_offset", "must be > 0");
  require(d, non_negative(g.radar_shoulder_offset), "geometry.radar_shoulder_offset", "must be >= 0");

  if (positive(c.road_length) && c.vehicles_per_direction > 0) {
    double headway = c.road_length / static_cast<double>(c.vehicles_per_direction);
    require(d, headway > g.vehicle_length + p.s0, "vehicles_per_direction", "ring too crowded for the jam distance");
  }
  return d;
}

bool coverage_ok(double spacing, double d_y, double r_det) {
  return r_det * r_det >= spacing * spacing + d_y * d_y;
}

std::vector<RadarNode> place_radars(const CorridorConfig& config) {
  std::vector<RadarNode> radars;
  if (config.mode == Mode::Control) return radars;
  const double far_y = config.geometry.road_width() + config.geometry.radar_shoulder_offset;
  const double near_y = -config.geometry.radar_shoulder_offset;
  // Index-based positions; accumulating the spacing would drift.
  const auto count = static_cast<std::size_t>(std::floor(config.road_length / config.radar_spacing + 1e-9)) + 1;
  radars.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Side side = (i % 2 == 0) ? Side::Near : Side::Far;
    radars.push_back(RadarNode{i, static_cast<double>(i) * config.radar_spacing, side,
                               side == Side::Near ? near_y : far_y});
  }
  return radars;
}

std::vector<MagnetometerSite> place_magnetometers(const CorridorConfig& config) {
  std::vector<MagnetometerSite> sites;
  const auto count = static_cast<std::size_t>(std::floor(config.road_length / config.magnetometer_spacing + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) sites.push_back({static_cast<double>(i) * config.magnetometer_spacing});
  return sites;
}

std::vector<VehicleState> place_vehicles(const CorridorConfig& config) {
  std::vector<VehicleState> vehicles;
  const std::size_t n = config.vehicles_per_direction;
  vehicles.reserve(2 * n);
  const double headway = config.road_length / static_cast<double>(n == 0 ? 1 : n);
  std::size_t id = 0;
  for (Direction dir : {Direction::Forward, Direction::Backward}) {
    for (std::size_t i = 0; i < n; ++i) {
      VehicleState v;
      v.id = id++;
      v.x = static_cast<double>(i) * headway;
      v.v = config.idm.v_cruise;
      v.direction = dir;
      v.lane = lane_for(dir);
      v.desired_speed = config.idm.v_cruise;
      vehicles.push_back(v);
    }
  }
  return vehicles;
}

}  // namespace wvc
