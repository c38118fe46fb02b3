#pragma once

#include <span>

#include "wvc/agents.hpp"
#include "wvc/geometry.hpp"

namespace wvc {

/// Intelligent Driver Model parameters plus the driver-alert response.
struct IdmParams {
  double s0 = 5.0;         // jam distance [m]
  double T = 1.5;          // time headway [s]
  double a_max = 2.5;      // [m/s^2]
  double b_conf = 4.0;     // comfortable deceleration [m/s^2]
  double delta = 4.0;
  double a_em = 9.0;       // emergency deceleration cap [m/s^2]
  double v_cruise = 27.78; // 100 km/h
  double v_caution = 8.33; // 30 km/h
  double t_react = 1.5;    // perception-reaction time [s]
};

/// Gap used when a vehicle has no leader on its ring.
inline constexpr double kNoLeaderGap = 1.0e6;

/// s* = s0 + vT + v*dv / (2 sqrt(a_max b_conf)), clamped at zero.
double desired_gap(double v, double dv, const IdmParams& p);

/// IDM acceleration toward desired speed `v0` with gap `s` to the leader and
/// closing speed `dv`. Clamped below at -a_em. Throws std::logic_error when s <= 0.
double idm_acceleration(double v, double v0, double dv, double s, const IdmParams& p);

/// Semi-implicit Euler: speed first (never negative), then position, wrapped
/// onto the ring of length `road_length`.
VehicleState step_vehicle(VehicleState state, double a, double dt, double road_length);

/// Applies the DMS state to the driver. The caution speed is adopted only after
/// the perception-reaction time has elapsed since the sign came on; switching
/// the sign off reverts to cruise immediately.
VehicleState update_driver_alert(VehicleState state, bool dms_active, double now, const IdmParams& p);

/// Kinematic stopping envelope v^2 / (2 b_conf) + v t_react.
double stopping_envelope(double v, const IdmParams& p);

/// True when an alerted driver has an on-road animal in its lane band ahead,
/// with the clearance from the front bumper to the animal inside the stopping
/// envelope. Always false for unalerted drivers.
bool emergency_brake_needed(const VehicleState& vehicle, std::span<const AnimalState> animals,
                            const GeometryParams& geometry, const IdmParams& p, double road_length);

}  // namespace wvc
