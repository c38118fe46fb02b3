#pragma once

#include <span>
#include <vector>

#include "wvc/agents.hpp"
#include "wvc/corridor.hpp"
#include "wvc/radar.hpp"

namespace wvc {

/// Network-wide alert clocks. All clocks are monotone non-decreasing and stay
/// at kNever in Control mode; boost clocks stay at kNever outside Aware mode.
struct AwarenessState {
  Mode mode = Mode::Aware;
  std::vector<double> boost_until;
  double dms_active_until = kNever;

  static AwarenessState make(Mode mode, std::size_t radar_count) {
    return AwarenessState{mode, std::vector<double>(radar_count, kNever), kNever};
  }
};

/// Broadcast a detection: boosts every radar within the awareness range (Aware
/// mode) and extends the DMS window (Detection and Aware).
void on_detection(const DetectionEvent& event, std::span<const RadarNode> radars, AwarenessState& awareness,
                  const CorridorConfig& config);

/// Sensitivity multiplier for a radar; step back to 1.0 once the window lapses.
double beta_for(const RadarNode& radar, const AwarenessState& awareness, double now, const CorridorConfig& config);

/// Animal states that hold the sign on after the persistence window expires.
constexpr bool is_dangerous(AnimalBehaviour s) {
  return s == AnimalBehaviour::Hesitating || s == AnimalBehaviour::Crossing || s == AnimalBehaviour::Frozen;
}

/// Sign is on inside the persistence window, or while any detected animal is
/// at the road edge or on the road. Never on in Control mode.
bool dms_active(const AwarenessState& awareness, std::span<const AnimalState> animals, double now);

}  // namespace wvc
