#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wvc/awareness.hpp"
#include "wvc/radar.hpp"

namespace wvc {
namespace {

void expect_rel(double actual, double expected, double rel = 1e-12) {
  EXPECT_LE(std::abs(actual - expected), rel * std::abs(expected)) << actual << " vs " << expected;
}

std::vector<RadarNode> single_radar() { return {RadarNode{0, 100.0, Side::Near, -0.5}}; }

AnimalState animal_at(double x, double y, double size = 1.0) {
  AnimalState a;
  a.x = x;
  a.y = y;
  a.size = size;
  a.state = AnimalBehaviour::Approaching;
  return a;
}

TEST(FSize, Examples) {
  expect_rel(f_size(1.0), 1.0);
  expect_rel(f_size(3.0), 2.0);
  expect_rel(f_size(0.25), 0.55);
}

TEST(FSize, RangeOverPositiveSigma) {
  for (double s = 1e-6; s < 10.0; s += 0.01) {
    EXPECT_GT(f_size(s), 0.4);
    EXPECT_LE(f_size(s), 2.0);
  }
}

TEST(DetectionProbability, Examples) {
  expect_rel(detection_probability(3.0, 1.0, 1.0, 0.1), 1.0 - std::exp(-0.3));
  expect_rel(detection_probability(3.0, 1.0, 1.8, 0.1), 1.0 - std::exp(-0.54));
  EXPECT_NEAR(detection_probability(3.0, 1.0, 1.0, 0.1), 0.2592, 5e-5);
  EXPECT_NEAR(detection_probability(3.0, 1.0, 1.8, 0.1), 0.4173, 5e-5);
  EXPECT_EQ(detection_probability(3.0, 1.0, 1.0, 0.0), 0.0);
  EXPECT_EQ(detection_probability(17.0, 2.5, 1.8, 0.0), 0.0);
}

TEST(DetectionProbability, PaperSaturationArithmetic) {
  // kappa * t = 3 with f_size = beta = 1.
  const double cumulative = 1.0 - std::exp(-3.0);
  EXPECT_NEAR(cumulative, 0.950, 5e-4);
  // Ten 0.1 s frames at kappa = 3 compose to the same exposure.
  const double miss = std::pow(1.0 - detection_probability(3.0, 1.0, 1.0, 0.1), 10);
  expect_rel(1.0 - miss, cumulative, 1e-12);
}

TEST(DetectionProbability, MonotoneInEachArgument) {
  const std::vector<double> grid{0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 3.0, 5.0};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    EXPECT_LE(detection_probability(grid[i - 1], 1.0, 1.0, 0.1), detection_probability(grid[i], 1.0, 1.0, 0.1));
    EXPECT_LE(detection_probability(3.0, grid[i - 1], 1.0, 0.1), detection_probability(3.0, grid[i], 1.0, 0.1));
    EXPECT_LE(detection_probability(3.0, 1.0, 1.0 + grid[i - 1], 0.1),
              detection_probability(3.0, 1.0, 1.0 + grid[i], 0.1));
    EXPECT_LE(detection_probability(3.0, 1.0, 1.0, grid[i - 1]), detection_probability(3.0, 1.0, 1.0, grid[i]));
  }
  EXPECT_LE(detection_probability(1000.0, 3.0, 1.8, 1.0), 1.0);
}

TEST(RadarsNear, BinarySearchMatchesScan) {
  CorridorConfig c;
  const auto radars = place_radars(c);
  for (double x = -20; x < 1020; x += 3.7) {
    const auto [lo, hi] = radars_near(radars, x, 15.0);
    for (std::size_t i = 0; i < radars.size(); ++i) {
      const bool inside = std::abs(radars[i].x - x) <= 15.0;
      EXPECT_EQ(inside, i >= lo && i < hi) << "x=" << x << " i=" << i;
    }
  }
}

TEST(TryDetect, OutOfRangeDoesNothing) {
  Rng rng{1};
  const auto radars = single_radar();
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  AnimalState a = animal_at(100.0, -20.6);  // 20.1 m away
  for (int k = 0; k < 1000; ++k) EXPECT_FALSE(try_detect(a, radars, awareness, k * 0.1, 0.1, {}, rng));
  EXPECT_FALSE(a.first_in_range_at);
  EXPECT_FALSE(a.detected);
}

TEST(TryDetect, HardCutoffAtRange) {
  Rng rng{2};
  const auto radars = single_radar();
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  DetectionParams params;
  params.kappa = 1e6;  // certain detection when in range
  AnimalState edge = animal_at(100.0 + 15.0, -0.5);
  EXPECT_TRUE(try_detect(edge, radars, awareness, 0.0, 0.1, params, rng));
  AnimalState beyond = animal_at(100.0 + 15.0 + 1e-9, -0.5);
  EXPECT_FALSE(try_detect(beyond, radars, awareness, 0.0, 0.1, params, rng));
}

TEST(TryDetect, StickyDetection) {
  Rng rng{3};
  const auto radars = single_radar();
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  AnimalState a = animal_at(100.0, 0.0);
  int events = 0;
  for (int k = 0; k < 500; ++k) {
    const bool was = a.detected;
    events += try_detect(a, radars, awareness, k * 0.1, 0.1, {}, rng).has_value();
    if (was) EXPECT_TRUE(a.detected);
  }
  EXPECT_EQ(events, 1);
}

TEST(TryDetect, SameFrameDetectionHasZeroLatency) {
  Rng rng{4};
  const auto radars = single_radar();
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  DetectionParams params;
  params.kappa = 1e6;
  AnimalState a = animal_at(100.0, 0.0);
  auto e = try_detect(a, radars, awareness, 12.3, 0.1, params, rng);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->latency, 0.0);
  EXPECT_EQ(*a.first_in_range_at, 12.3);
  EXPECT_EQ(*a.detected_at, 12.3);
}

// Geometric waiting time in frames: the draw happens on the first in-range
// frame, so mean latency is dt (1 - p) / p.
TEST(TryDetect, SingleRadarLatencyMatchesGeometricOracle) {
  Rng rng{5};
  const auto radars = single_radar();
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  const double dt = 0.1;
  const double p = 1.0 - std::exp(-0.3);
  constexpr int n = 10000;
  std::vector<double> latencies;
  for (int i = 0; i < n; ++i) {
    AnimalState a = animal_at(100.0, 0.0);
    for (int k = 0; !a.detected; ++k) try_detect(a, radars, awareness, k * dt, dt, {}, rng);
    latencies.push_back(*a.detected_at - *a.first_in_range_at);
  }
  const double expected = dt * (1.0 - p) / p;
  const double se = dt * std::sqrt(1.0 - p) / p / std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(oracle::mean(latencies), expected, 3.0 * se);
  EXPECT_NEAR(expected, 0.2858, 5e-4);
}

TEST(TryDetect, SaturationLawUnderConstantCoverage) {
  Rng rng{6};
  const auto radars = single_radar();
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  constexpr std::size_t n = 10000;
  for (double exposure : {0.5, 1.0, 2.0}) {
    const int frames = static_cast<int>(std::lround(exposure / 0.1));
    std::size_t missed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      AnimalState a = animal_at(100.0, 0.0);
      for (int k = 0; k < frames; ++k) try_detect(a, radars, awareness, k * 0.1, 0.1, {}, rng);
      missed += !a.detected;
    }
    EXPECT_TRUE(oracle::within_3_sigma(missed, n, std::exp(-3.0 * exposure))) << exposure << ": " << missed;
  }
}

TEST(TryDetect, BoostRaisesRateOnlyInAwareMode) {
  const auto radars = single_radar();
  constexpr std::size_t n = 10000;
  for (Mode mode : {Mode::Detection, Mode::Aware}) {
    Rng rng{7};
    auto awareness = AwarenessState::make(mode, radars.size());
    awareness.boost_until[0] = 1e9;
    std::size_t first_frame = 0;
    for (std::size_t i = 0; i < n; ++i) {
      AnimalState a = animal_at(100.0, 0.0);
      first_frame += try_detect(a, radars, awareness, 0.0, 0.1, {}, rng).has_value();
    }
    const double p = detection_probability(3.0, 1.0, mode == Mode::Aware ? 1.8 : 1.0, 0.1);
    EXPECT_TRUE(oracle::within_3_sigma(first_frame, n, p)) << to_string(mode) << ": " << first_frame;
  }
}

TEST(TryDetect, OverlappingRadarsDrawIndependently) {
  const std::vector<RadarNode> radars{{0, 100.0, Side::Near, -0.5}, {1, 105.0, Side::Far, 7.9}};
  const auto awareness = AwarenessState::make(Mode::Detection, radars.size());
  Rng rng{8};
  constexpr std::size_t n = 10000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    AnimalState a = animal_at(102.0, 3.0);
    hits += try_detect(a, radars, awareness, 0.0, 0.1, {}, rng).has_value();
  }
  const double p = detection_probability(3.0, 1.0, 1.0, 0.1);
  EXPECT_TRUE(oracle::within_3_sigma(hits, n, 1.0 - (1.0 - p) * (1.0 - p))) << hits;
}

}  // namespace
}  // namespace wvc
