#include "wvc/awareness.hpp"

#include <algorithm>

namespace wvc {

void on_detection(const DetectionEvent& event, std::span<const RadarNode> radars, AwarenessState& awareness,
                  const CorridorConfig& config) {
  if (awareness.mode == Mode::Control) return;
  const double until = event.time + config.persistence_window;
  awareness.dms_active_until = std::max(awareness.dms_active_until, until);
  if (awareness.mode != Mode::Aware || event.radar_id >= radars.size()) return;
  const double origin = radars[event.radar_id].x;
  for (const RadarNode& r : radars) {
    if (ring_separation(origin, r.x, config.road_length) <= config.awareness_range) {
      double& clock = awareness.boost_until[r.id];
      clock = std::max(clock, until);
    }
  }
}

double beta_for(const RadarNode& radar, const AwarenessState& awareness, double now, const CorridorConfig& config) {
  if (awareness.mode != Mode::Aware || radar.id >= awareness.boost_until.size()) return 1.0;
  return awareness.boost_until[radar.id] > now ? config.boost_factor : 1.0;
}

bool dms_active(const AwarenessState& awareness, std::span<const AnimalState> animals, double now) {
  if (awareness.mode == Mode::Control) return false;
  if (now < awareness.dms_active_until) return true;
  return std::any_of(animals.begin(), animals.end(),
                     [](const AnimalState& a) { return a.detected && is_dangerous(a.state); });
}

}  // namespace wvc
