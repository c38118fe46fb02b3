#pragma once

#include <span>
#include <vector>

#include "wvc/agents.hpp"
#include "wvc/geometry.hpp"
#include "wvc/rng.hpp"

namespace wvc {

struct SizeClass {
  double weight;
  double lo;
  double hi;
};

/// Behavioural model parameters. Dwell ranges are uniform [lo, hi] seconds.
struct BehaviourParams {
  double forage_dwell_min = 2.0;
  double forage_dwell_max = 10.0;
  double hesitate_dwell_min = 0.5;
  double hesitate_dwell_max = 3.0;
  double p_cross_no_threat = 0.80;
  double p_frozen_threat = 0.10;
  double p_flee_threat = 0.20;
  double p_freeze_crossing = 0.15;
  double v_approach = 1.5;
  double v_cross = 4.0;
  double v_flee = 6.0;
  std::vector<SizeClass> size_mixture{{0.15, 0.25, 0.55}, {0.60, 0.7, 1.2}, {0.25, 1.4, 2.3}};
  double t_threat = 5.0;
  double v_threat = 10.0;
  double frozen_max_dwell = 8.0;
  double interaction_radius = 50.0;
  // Also roll the mid-crossing freeze for vehicles that pose a threat, not
  // only for emergency-braking ones.
  bool crossing_threat_freeze = true;
};

struct Arrival {
  double time = 0.0;
  double x = 0.0;
  double size = 1.0;
  friend bool operator==(const Arrival&, const Arrival&) = default;
};

/// Homogeneous Poisson arrivals over [0, duration_hours), x uniform on the
/// road, size drawn from the mixture and scaled by `size_scale`.
std::vector<Arrival> sample_arrivals(double rate_per_hour, double duration_hours, double road_length,
                                     double size_scale, const BehaviourParams& params, Rng& rng);

/// Index of the mixture component a draw of `u` in [0,1) selects.
std::size_t pick_size_class(const BehaviourParams& params, double u);

double sample_size(const BehaviourParams& params, double size_scale, Rng& rng);

/// A vehicle threatens an animal when it closes on the animal's x in its
/// travel direction faster than v_threat with time-to-arrival under t_threat.
bool threat_present(const AnimalState& animal, std::span<const VehicleState> vehicles,
                    const BehaviourParams& params, double road_length);

/// An animal whose mid-crossing freeze roll can be triggered by `vehicle`:
/// either a threatening vehicle or an emergency-braking one within the
/// interaction radius.
bool dangerous_interaction(const AnimalState& animal, const VehicleState& vehicle,
                           const BehaviourParams& params, double road_length);

AnimalState spawn_animal(std::size_t id, const Arrival& arrival, const GeometryParams& geometry,
                         const BehaviourParams& params, Rng& rng);

struct AnimalView {
  std::span<const VehicleState> vehicles;
  double now = 0.0;
  double dt = 0.1;
  double road_length = 1000.0;
};

/// Advances one animal by one frame of the six-state behaviour model.
/// Throws std::logic_error when called on a MovedAway animal.
AnimalState step_animal(AnimalState animal, const AnimalView& view, const GeometryParams& geometry,
                        const BehaviourParams& params, Rng& rng);

/// Transition whitelist of the behaviour model, plus collision removal from the on-road states.
bool is_allowed_transition(AnimalBehaviour from, AnimalBehaviour to);

}  // namespace wvc
