#include "wvc/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wvc {

namespace {
// Frame times are k * dt; compare elapsed times with a little slack.
constexpr double kTimeSlack = 1e-9;
}  // namespace

double desired_gap(double v, double dv, const IdmParams& p) {
  const double s = p.s0 + v * p.T + v * dv / (2.0 * std::sqrt(p.a_max * p.b_conf));
  return std::max(0.0, s);
}

double idm_acceleration(double v, double v0, double dv, double s, const IdmParams& p) {
  if (!(s > 0.0)) throw std::logic_error("idm_acceleration: non-positive gap, vehicles overlap");
  const double gap_term = desired_gap(v, dv, p) / s;
  const double a = p.a_max * (1.0 - std::pow(v / v0, p.delta) - gap_term * gap_term);
  return std::max(a, -p.a_em);
}

VehicleState step_vehicle(VehicleState state, double a, double dt, double road_length) {
  state.v = std::max(0.0, state.v + a * dt);
  state.x = wrap(state.x + sign(state.direction) * state.v * dt, road_length);
  return state;
}

VehicleState update_driver_alert(VehicleState state, bool dms_active, double now, const IdmParams& p) {
  if (!dms_active) {
    state.alerted = false;
    state.alert_onset.reset();
    state.desired_speed = p.v_cruise;
    return state;
  }
  if (!state.alert_onset) state.alert_onset = now;
  if (!state.alerted && now - *state.alert_onset >= p.t_react - kTimeSlack) state.alerted = true;
  state.desired_speed = state.alerted ? p.v_caution : p.v_cruise;
  return state;
}

double stopping_envelope(double v, const IdmParams& p) { return v * v / (2.0 * p.b_conf) + v * p.t_react; }

bool emergency_brake_needed(const VehicleState& vehicle, std::span<const AnimalState> animals,
                            const GeometryParams& geometry, const IdmParams& p, double road_length) {
  if (!vehicle.alerted) return false;
  const double lane_lo = geometry.lane_width * static_cast<double>(vehicle.lane) - geometry.animal_radius;
  const double lane_hi = lane_lo + geometry.lane_width + 2.0 * geometry.animal_radius;
  const double reach = geometry.vehicle_length / 2.0 + geometry.animal_radius;
  const double envelope = stopping_envelope(vehicle.v, p);
  for (const AnimalState& a : animals) {
    if (!a.active() || !geometry.on_road(a.y) || a.y < lane_lo || a.y > lane_hi) continue;
    double ahead = ring_distance_ahead(vehicle.x, a.x, vehicle.direction, road_length);
    // Animals level with the vehicle body count as zero clearance.
    if (ahead > road_length - reach) ahead -= road_length;
    const double clearance = ahead - reach;
    if (clearance <= envelope) return true;
  }
  return false;
}

}  // namespace wvc
