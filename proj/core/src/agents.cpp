#include "wvc/agents.hpp"

#include <algorithm>

namespace wvc {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Control: return "control";
    case Mode::Detection: return "detection";
    case Mode::Aware: return "aware";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : kAllModes) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view to_string(AnimalBehaviour state) {
  switch (state) {
    case AnimalBehaviour::Foraging: return "foraging";
    case AnimalBehaviour::Approaching: return "approaching";
    case AnimalBehaviour::Hesitating: return "hesitating";
    case AnimalBehaviour::Crossing: return "crossing";
    case AnimalBehaviour::Frozen: return "frozen";
    case AnimalBehaviour::Fleeing: return "fleeing";
    case AnimalBehaviour::MovedAway: return "moved_away";
  }
  return "unknown";
}

bool AnimalState::has_interacted(std::size_t vehicle_id) const {
  return std::find(interacted_vehicles.begin(), interacted_vehicles.end(), vehicle_id) != interacted_vehicles.end();
}

}  // namespace wvc
