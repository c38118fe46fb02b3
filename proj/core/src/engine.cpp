#include "wvc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wvc/awareness.hpp"
#include "wvc/radar.hpp"

namespace wvc {

std::optional<double> TrialResult::collision_rate_per_entry() const {
  if (road_entries == 0) return std::nullopt;
  return static_cast<double>(collisions) / static_cast<double>(road_entries);
}

std::optional<double> TrialResult::detection_rate() const {
  if (mode == Mode::Control || detectable == 0) return std::nullopt;
  return static_cast<double>(detected) / static_cast<double>(detectable);
}

std::optional<double> TrialResult::mean_latency() const {
  if (latencies.empty()) return std::nullopt;
  return std::accumulate(latencies.begin(), latencies.end(), 0.0) / static_cast<double>(latencies.size());
}

std::optional<double> TrialResult::median_latency() const {
  if (latencies.empty()) return std::nullopt;
  std::vector<double> sorted = latencies;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

std::optional<double> TrialResult::crossing_success_rate() const {
  if (arrivals == 0) return std::nullopt;
  return static_cast<double>(crossing_successes) / static_cast<double>(arrivals);
}

std::vector<CollisionPair> detect_collisions(std::span<const VehicleState> vehicles,
                                             std::span<const AnimalState> animals, const GeometryParams& geometry,
                                             double road_length) {
  std::vector<CollisionPair> hits;
  const double reach_x = geometry.vehicle_length / 2.0 + geometry.animal_radius;
  const double reach_y = geometry.vehicle_width / 2.0 + geometry.animal_radius;
  for (const AnimalState& a : animals) {
    if (!a.active() || !geometry.on_road(a.y)) continue;
    for (const VehicleState& v : vehicles) {
      if (std::abs(a.y - geometry.lane_centre(v.lane)) < reach_y &&
          ring_separation(v.x, a.x, road_length) < reach_x) {
        hits.push_back({v.id, a.id});
        break;
      }
    }
  }
  return hits;
}

void accumulate_metrics(const StepEvents& events, double dt, TrialResult& result) {
  result.arrivals += events.spawned;
  result.detectable += events.left_foraging;
  result.road_entries += events.road_entries;
  result.crossing_successes += events.crossing_successes;
  result.collisions += events.collisions;
  result.frozen_on_road_time += dt * static_cast<double>(events.frozen_on_road);
  result.detected += events.detection_latencies.size();
  result.latencies.insert(result.latencies.end(), events.detection_latencies.begin(),
                          events.detection_latencies.end());
  for (std::size_t i = 0; i < kBehaviourCount; ++i) result.state_visits[i] += events.state_entries[i];
}

std::size_t step_count(double duration_hours, double dt) {
  // Guard against 14400 / 0.1 landing a hair above an integer.
  return static_cast<std::size_t>(std::ceil(duration_hours * 3600.0 / dt - 1e-9));
}

std::vector<Arrival> trial_arrivals(const CorridorConfig& config, double duration_hours, std::uint64_t trial_id,
                                    std::uint64_t master_seed) {
  Rng rng{RngStreams::stream_seed(master_seed, trial_id, StreamTag::Arrivals, 0)};
  return sample_arrivals(config.arrival_rate, duration_hours, config.road_length, config.size_scale,
                         config.behaviour, rng);
}

namespace {

std::uint64_t mode_salt(Mode mode) { return static_cast<std::uint64_t>(mode) + 1; }

class TrialRunner {
 public:
  TrialRunner(const CorridorConfig& config, double hours, std::uint64_t trial_id, std::uint64_t master_seed,
              TrialObserver* observer)
      : world_(build_corridor(config)),
        streams_(RngStreams::make(master_seed, trial_id, mode_salt(config.mode))),
        observer_(observer),
        hours_(hours) {
    arrivals_ = sample_arrivals(config.arrival_rate, hours, config.road_length, config.size_scale,
                                config.behaviour, streams_.arrivals);
    detection_ = DetectionParams{config.kappa, config.radar_range, config.boost_factor};
    result_.trial_id = trial_id;
    result_.mode = config.mode;
    result_.seed = master_seed;
    result_.sim_hours = hours;
    accelerations_.resize(world_.vehicles.size());
  }

  TrialResult run() {
    const double dt = world_.config.time_step;
    const std::size_t steps = step_count(hours_, dt);
    for (std::size_t k = 0; k < steps; ++k) frame(static_cast<double>(k) * dt, dt);
    for (const AnimalState& a : world_.animals) {
      if (a.active()) ++result_.still_active;
    }
    if (result_.collisions > result_.road_entries || result_.crossing_successes > result_.road_entries ||
        result_.detected > result_.detectable || result_.detectable > result_.arrivals ||
        result_.arrivals != result_.moved_away_clean + result_.collisions + result_.still_active) {
      throw std::logic_error("run_trial: metric invariant violated in trial " + std::to_string(result_.trial_id));
    }
    return std::move(result_);
  }

 private:
  void frame(double now, double dt) {
    StepEvents ev;
    const CorridorConfig& cfg = world_.config;

    // 1. spawn
    while (next_arrival_ < arrivals_.size() && arrivals_[next_arrival_].time < now + dt) {
      world_.animals.push_back(
          spawn_animal(next_animal_id_++, arrivals_[next_arrival_++], cfg.geometry, cfg.behaviour, streams_.behaviour));
      ++ev.spawned;
      ++ev.state_entries[index_of(AnimalBehaviour::Foraging)];
    }

    // 2. detection against last frame's awareness, 3. awareness and DMS
    if (!world_.radars.empty()) {
      for (AnimalState& a : world_.animals) {
        if (auto event = try_detect(a, world_.radars, world_.awareness, now, dt, detection_, streams_.detection)) {
          ev.detection_latencies.push_back(event->latency);
          pending_.push_back(*event);
        }
      }
      for (const DetectionEvent& e : pending_) on_detection(e, world_.radars, world_.awareness, cfg);
      pending_.clear();
    }
    world_.dms_on = dms_active(world_.awareness, world_.animals, now);

    // 4. vehicles, synchronously from this frame's snapshot
    step_vehicles(now, dt);

    // 5. animals
    const AnimalView view{world_.vehicles, now, dt, cfg.road_length};
    for (AnimalState& a : world_.animals) {
      const AnimalBehaviour before = a.state;
      a = step_animal(std::move(a), view, cfg.geometry, cfg.behaviour, streams_.behaviour);
      if (a.state != before) {
        ++ev.state_entries[index_of(a.state)];
        if (before == AnimalBehaviour::Foraging) ++ev.left_foraging;
        if (observer_) observer_->on_transition(a, before, a.state);
      }
      if (!a.entered_road && a.y >= 0.0) {
        a.entered_road = true;
        ++ev.road_entries;
      }
    }

    // 6. collisions
    for (const CollisionPair& hit : detect_collisions(world_.vehicles, world_.animals, cfg.geometry, cfg.road_length)) {
      auto it = std::find_if(world_.animals.begin(), world_.animals.end(),
                             [&](const AnimalState& a) { return a.id == hit.animal_id; });
      const AnimalBehaviour before = it->state;
      it->state = AnimalBehaviour::MovedAway;
      it->collided = true;
      ++ev.collisions;
      ++ev.state_entries[index_of(AnimalBehaviour::MovedAway)];
      if (observer_) observer_->on_transition(*it, before, it->state);
    }

    // 7. metrics
    const double road_width = cfg.geometry.road_width();
    for (AnimalState& a : world_.animals) {
      if (a.collided) continue;
      if (!a.crossed && a.y >= road_width) {
        a.crossed = true;
        ++ev.crossing_successes;
      }
      if (a.state == AnimalBehaviour::Frozen && cfg.geometry.on_road(a.y)) ++ev.frozen_on_road;
    }
    accumulate_metrics(ev, dt, result_);
    if (observer_) observer_->on_frame(world_, now);

    std::erase_if(world_.animals, [&](const AnimalState& a) {
      if (a.active()) return false;
      if (!a.collided) ++result_.moved_away_clean;
      return true;
    });
  }

  void step_vehicles(double now, double dt) {
    const CorridorConfig& cfg = world_.config;
    std::vector<VehicleState>& vehicles = world_.vehicles;
    for (VehicleState& v : vehicles) v = update_driver_alert(v, world_.dms_on, now, cfg.idm);

    for (std::size_t i = 0; i < vehicles.size(); ++i) {
      const VehicleState& me = vehicles[i];
      double gap = kNoLeaderGap;
      double dv = 0.0;
      double nearest = cfg.road_length + 1.0;
      for (std::size_t j = 0; j < vehicles.size(); ++j) {
        if (j == i || vehicles[j].direction != me.direction) continue;
        const double ahead = ring_distance_ahead(me.x, vehicles[j].x, me.direction, cfg.road_length);
        if (ahead < nearest) {
          nearest = ahead;
          gap = ahead - cfg.geometry.vehicle_length;
          dv = me.v - vehicles[j].v;
        }
      }
      const bool emergency = emergency_brake_needed(me, world_.animals, cfg.geometry, cfg.idm, cfg.road_length);
      vehicles[i].emergency_braking = emergency;
      accelerations_[i] = emergency ? -cfg.idm.a_em : idm_acceleration(me.v, me.desired_speed, dv, gap, cfg.idm);
    }
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
      vehicles[i] = step_vehicle(vehicles[i], accelerations_[i], dt, cfg.road_length);
    }
  }

  World world_;
  RngStreams streams_;
  TrialObserver* observer_;
  double hours_;
  std::vector<Arrival> arrivals_;
  std::size_t next_arrival_ = 0;
  std::size_t next_animal_id_ = 0;
  DetectionParams detection_;
  std::vector<DetectionEvent> pending_;
  std::vector<double> accelerations_;
  TrialResult result_;
};

}  // namespace

TrialResult run_trial(const CorridorConfig& config, double duration_hours, std::uint64_t trial_id,
                      std::uint64_t master_seed, TrialObserver* observer) {
  if (!(duration_hours > 0.0)) throw std::invalid_argument("run_trial: duration must be positive");
  return TrialRunner(config, duration_hours, trial_id, master_seed, observer).run();
}

}  // namespace wvc
