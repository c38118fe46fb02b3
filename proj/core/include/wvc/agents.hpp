#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace wvc {

inline constexpr double kNever = -std::numeric_limits<double>::infinity();

enum class Mode : std::uint8_t { Control, Detection, Aware };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

inline constexpr std::array<Mode, 3> kAllModes{Mode::Control, Mode::Detection, Mode::Aware};

enum class Direction : std::int8_t { Forward = 1, Backward = -1 };

constexpr double sign(Direction d) { return d == Direction::Forward ? 1.0 : -1.0; }

struct VehicleState {
  std::size_t id = 0;
  double x = 0.0;  // ring coordinate in [0, road_length)
  double v = 0.0;
  Direction direction = Direction::Forward;
  std::size_t lane = 0;
  bool alerted = false;
  std::optional<double> alert_onset;
  double desired_speed = 0.0;
  // Set by the engine when the emergency override replaced IDM this step.
  bool emergency_braking = false;
};

enum class AnimalBehaviour : std::uint8_t {
  Foraging,
  Approaching,
  Hesitating,
  Crossing,
  Frozen,
  Fleeing,
  MovedAway,
};

inline constexpr std::size_t kBehaviourCount = 7;

std::string_view to_string(AnimalBehaviour state);

constexpr std::size_t index_of(AnimalBehaviour s) { return static_cast<std::size_t>(s); }

struct AnimalState {
  std::size_t id = 0;
  double x = 0.0;
  double y = 0.0;
  double size = 1.0;
  AnimalBehaviour state = AnimalBehaviour::Foraging;
  double dwell_remaining = 0.0;
  bool detected = false;
  std::optional<double> first_in_range_at;
  std::optional<double> detected_at;
  bool entered_road = false;
  bool crossed = false;
  bool collided = false;
  // Vehicles already rolled against for the mid-crossing freeze; small, so a flat vector.
  std::vector<std::size_t> interacted_vehicles;

  bool active() const { return state != AnimalBehaviour::MovedAway; }
  bool has_interacted(std::size_t vehicle_id) const;
};

}  // namespace wvc
