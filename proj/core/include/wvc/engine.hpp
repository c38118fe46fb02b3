#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wvc/agents.hpp"
#include "wvc/world.hpp"

namespace wvc {

struct TrialResult {
  std::uint64_t trial_id = 0;
  Mode mode = Mode::Control;
  std::uint64_t seed = 0;
  double sim_hours = 0.0;

  std::size_t arrivals = 0;
  std::size_t detectable = 0;  // animals that left Foraging
  std::size_t detected = 0;
  std::size_t road_entries = 0;
  std::size_t collisions = 0;
  std::size_t crossing_successes = 0;
  double frozen_on_road_time = 0.0;
  std::vector<double> latencies;  // one per detected animal, in detection order
  std::array<std::size_t, kBehaviourCount> state_visits{};

  // End-of-trial bookkeeping for the conservation check.
  std::size_t moved_away_clean = 0;
  std::size_t still_active = 0;

  std::optional<double> collision_rate_per_entry() const;
  std::optional<double> detection_rate() const;
  std::optional<double> mean_latency() const;
  std::optional<double> median_latency() const;
  std::optional<double> crossing_success_rate() const;
};

struct CollisionPair {
  std::size_t vehicle_id;
  std::size_t animal_id;
};

/// At most one pair per animal: the first vehicle (by id) whose footprint the
/// on-road animal overlaps.
std::vector<CollisionPair> detect_collisions(std::span<const VehicleState> vehicles,
                                             std::span<const AnimalState> animals, const GeometryParams& geometry,
                                             double road_length);

/// What happened during one frame, as seen by the metric accumulator.
struct StepEvents {
  std::size_t spawned = 0;
  std::size_t left_foraging = 0;
  std::size_t road_entries = 0;
  std::size_t crossing_successes = 0;
  std::size_t collisions = 0;
  std::size_t frozen_on_road = 0;  // animals Frozen inside the road band after the frame
  std::vector<double> detection_latencies;
  std::array<std::size_t, kBehaviourCount> state_entries{};
};

void accumulate_metrics(const StepEvents& events, double dt, TrialResult& result);

/// Number of frames for `duration_hours` at step `dt`.
std::size_t step_count(double duration_hours, double dt);

/// Optional per-frame hook for tests and audits; called after metrics.
struct TrialObserver {
  virtual ~TrialObserver() = default;
  virtual void on_transition(const AnimalState& /*animal*/, AnimalBehaviour /*from*/, AnimalBehaviour /*to*/) {}
  virtual void on_frame(const World& /*world*/, double /*now*/) {}
};

/// One fixed-horizon trial. Frame phases: spawn, detection, awareness/DMS,
/// vehicles, animals, collisions, metrics.
TrialResult run_trial(const CorridorConfig& config, double duration_hours, std::uint64_t trial_id,
                      std::uint64_t master_seed, TrialObserver* observer = nullptr);

/// Arrival schedule a trial would use; identical across modes.
std::vector<Arrival> trial_arrivals(const CorridorConfig& config, double duration_hours, std::uint64_t trial_id,
                                    std::uint64_t master_seed);

}  // namespace wvc
