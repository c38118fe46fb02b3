#include "wvc/animal.hpp"

#include <stdexcept>

namespace wvc {

namespace {

constexpr double kTimeSlack = 1e-9;
// Hesitating animals stand just short of the near edge, off the road band.
constexpr double kEdgeStandoff = 1e-6;

double draw_dwell(double lo, double hi, Rng& rng) { return uniform(rng, lo, hi); }

bool vehicle_threatens(const AnimalState& animal, const VehicleState& v, const BehaviourParams& params,
                       double road_length) {
  if (!(v.v > params.v_threat)) return false;
  const double ahead = ring_distance_ahead(v.x, animal.x, v.direction, road_length);
  return ahead / v.v < params.t_threat;
}

}  // namespace

std::size_t pick_size_class(const BehaviourParams& params, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < params.size_mixture.size(); ++i) {
    cumulative += params.size_mixture[i].weight;
    if (u < cumulative) return i;
  }
  return params.size_mixture.size() - 1;
}

double sample_size(const BehaviourParams& params, double size_scale, Rng& rng) {
  const SizeClass& sc = params.size_mixture[pick_size_class(params, uniform01(rng))];
  return uniform(rng, sc.lo, sc.hi) * size_scale;
}

std::vector<Arrival> sample_arrivals(double rate_per_hour, double duration_hours, double road_length,
                                     double size_scale, const BehaviourParams& params, Rng& rng) {
  std::vector<Arrival> out;
  if (!(rate_per_hour > 0.0) || !(duration_hours > 0.0)) return out;
  const double rate_per_second = rate_per_hour / 3600.0;
  const double horizon = duration_hours * 3600.0;
  double t = 0.0;
  for (;;) {
    t += exponential(rng, rate_per_second);
    if (t >= horizon) break;
    Arrival a;
    a.time = t;
    a.x = uniform(rng, 0.0, road_length);
    a.size = sample_size(params, size_scale, rng);
    out.push_back(a);
  }
  return out;
}

bool threat_present(const AnimalState& animal, std::span<const VehicleState> vehicles,
                    const BehaviourParams& params, double road_length) {
  for (const VehicleState& v : vehicles) {
    if (vehicle_threatens(animal, v, params, road_length)) return true;
  }
  return false;
}

bool dangerous_interaction(const AnimalState& animal, const VehicleState& vehicle, const BehaviourParams& params,
                           double road_length) {
  if (vehicle.emergency_braking &&
      ring_separation(vehicle.x, animal.x, road_length) <= params.interaction_radius) {
    return true;
  }
  return params.crossing_threat_freeze && vehicle_threatens(animal, vehicle, params, road_length);
}

AnimalState spawn_animal(std::size_t id, const Arrival& arrival, const GeometryParams& geometry,
                         const BehaviourParams& params, Rng& rng) {
  AnimalState a;
  a.id = id;
  a.x = arrival.x;
  a.y = geometry.spawn_offset;
  a.size = arrival.size;
  a.state = AnimalBehaviour::Foraging;
  a.dwell_remaining = draw_dwell(params.forage_dwell_min, params.forage_dwell_max, rng);
  return a;
}

AnimalState step_animal(AnimalState animal, const AnimalView& view, const GeometryParams& geometry,
                        const BehaviourParams& params, Rng& rng) {
  const double dt = view.dt;
  switch (animal.state) {
    case AnimalBehaviour::Foraging:
      animal.dwell_remaining -= dt;
      if (animal.dwell_remaining <= kTimeSlack) animal.state = AnimalBehaviour::Approaching;
      break;

    case AnimalBehaviour::Approaching:
      animal.y += params.v_approach * dt;
      if (animal.y >= -kEdgeStandoff) {
        animal.y = -kEdgeStandoff;
        animal.state = AnimalBehaviour::Hesitating;
        animal.dwell_remaining = draw_dwell(params.hesitate_dwell_min, params.hesitate_dwell_max, rng);
      }
      break;

    case AnimalBehaviour::Hesitating: {
      animal.dwell_remaining -= dt;
      if (animal.dwell_remaining > kTimeSlack) break;
      const bool threat = threat_present(animal, view.vehicles, params, view.road_length);
      const double u = uniform01(rng);
      if (!threat && u < params.p_cross_no_threat) {
        animal.state = AnimalBehaviour::Crossing;
      } else if (threat && u < params.p_frozen_threat) {
        animal.state = AnimalBehaviour::Frozen;
        animal.dwell_remaining = params.frozen_max_dwell;
      } else if (threat && u < params.p_frozen_threat + params.p_flee_threat) {
        animal.state = AnimalBehaviour::Fleeing;
      } else {
        // Residual probability mass: stay at the edge and look again later.
        animal.dwell_remaining = draw_dwell(params.hesitate_dwell_min, params.hesitate_dwell_max, rng);
      }
      break;
    }

    case AnimalBehaviour::Crossing:
      animal.y += params.v_cross * dt;
      if (geometry.on_road(animal.y)) {
        for (const VehicleState& v : view.vehicles) {
          if (animal.has_interacted(v.id) || !dangerous_interaction(animal, v, params, view.road_length)) continue;
          animal.interacted_vehicles.push_back(v.id);
          if (bernoulli(rng, params.p_freeze_crossing)) {
            animal.state = AnimalBehaviour::Frozen;
            animal.dwell_remaining = params.frozen_max_dwell;
            break;
          }
        }
      } else if (animal.y >= geometry.road_width() + geometry.exit_offset) {
        animal.state = AnimalBehaviour::MovedAway;
      }
      break;

    case AnimalBehaviour::Frozen: {
      animal.dwell_remaining -= dt;
      const bool threat = threat_present(animal, view.vehicles, params, view.road_length);
      if (!threat || animal.dwell_remaining <= kTimeSlack) {
        if (animal.y < 0.0) {
          animal.state = AnimalBehaviour::Hesitating;
          animal.dwell_remaining = draw_dwell(params.hesitate_dwell_min, params.hesitate_dwell_max, rng);
        } else {
          animal.state = AnimalBehaviour::Crossing;
        }
      }
      break;
    }

    case AnimalBehaviour::Fleeing:
      animal.y -= params.v_flee * dt;
      if (animal.y <= geometry.spawn_offset) animal.state = AnimalBehaviour::MovedAway;
      break;

    case AnimalBehaviour::MovedAway:
      throw std::logic_error("step_animal: animal has already moved away");
  }
  return animal;
}

bool is_allowed_transition(AnimalBehaviour from, AnimalBehaviour to) {
  using B = AnimalBehaviour;
  switch (from) {
    case B::Foraging: return to == B::Approaching;
    case B::Approaching: return to == B::Hesitating;
    case B::Hesitating: return to == B::Crossing || to == B::Frozen || to == B::Fleeing;
    case B::Crossing: return to == B::Frozen || to == B::MovedAway;
    case B::Frozen: return to == B::Hesitating || to == B::Crossing || to == B::MovedAway;
    case B::Fleeing: return to == B::MovedAway;
    case B::MovedAway: return false;
  }
  return false;
}

}  // namespace wvc
