#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "wvc/agents.hpp"
#include "wvc/corridor.hpp"
#include "wvc/rng.hpp"

namespace wvc {

struct AwarenessState;

struct DetectionParams {
  double kappa = 3.0;
  double r_det = 15.0;
  double boost_factor = 1.8;
};

struct DetectionEvent {
  std::size_t animal_id = 0;
  std::size_t radar_id = 0;
  double time = 0.0;
  double latency = 0.0;  // detected_at - first_in_range_at
};

/// Radar cross-section scaling: min(2, 0.4 + 0.6 sigma).
double f_size(double sigma);

/// Per-frame first-detection probability 1 - exp(-kappa f_size(sigma) beta dt).
double detection_probability(double kappa, double sigma, double beta, double dt);

/// Indices [first, last) of radars whose x lies within `reach` of `x`.
/// Requires radars sorted by x, which place_radars guarantees.
std::pair<std::size_t, std::size_t> radars_near(std::span<const RadarNode> radars, double x, double reach);

/// One frame of first-time detection for `animal`. Each in-range radar draws
/// independently; a detected animal never produces another event.
std::optional<DetectionEvent> try_detect(AnimalState& animal, std::span<const RadarNode> radars,
                                         const AwarenessState& awareness, double now, double dt,
                                         const DetectionParams& params, Rng& rng);

}  // namespace wvc
