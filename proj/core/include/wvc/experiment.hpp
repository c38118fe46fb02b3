#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wvc/corridor.hpp"
#include "wvc/engine.hpp"
#include "wvc/stats.hpp"

namespace wvc {

enum class ExperimentKind : std::uint8_t { Headline, SpacingSweep, SizeSweep, KappaSweep };

std::string_view to_string(ExperimentKind kind);          // "headline", "sweep_spacing", ...
std::optional<ExperimentKind> parse_experiment(std::string_view text);
std::optional<ExperimentKind> parse_sweep_kind(std::string_view text);  // "spacing", "size", "kappa"
std::string_view sweep_parameter(ExperimentKind kind);    // config field swept; empty for Headline

struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::Headline;
  std::size_t trials_per_point = 20;
  double hours_per_trial = 4.0;
  std::vector<double> values;  // sweep grid; empty for Headline
  std::uint64_t master_seed = 42;
  CorridorConfig base;
  unsigned workers = 1;

  /// 20 x 4 h for Headline, 15 x 2 h with the published grid for sweeps.
  static ExperimentPlan defaults(ExperimentKind kind);
  std::size_t total_trials() const;
};

/// Applies a sweep value to the swept config field.
CorridorConfig apply_sweep_value(CorridorConfig config, ExperimentKind kind, double value);

/// One flat per-trial row: identity, the parameters in force, every metric.
/// Optional metrics are undefined for the trial (e.g. no road entries).
struct TrialRecord {
  ExperimentKind experiment = ExperimentKind::Headline;
  std::uint64_t trial_id = 0;
  Mode mode = Mode::Control;
  std::uint64_t seed = 0;
  double hours = 0.0;
  double radar_spacing = 0.0;
  double size_scale = 0.0;
  double kappa = 0.0;
  std::optional<double> sweep_value;

  std::size_t arrivals = 0;
  std::size_t detectable = 0;
  std::size_t detected = 0;
  std::size_t road_entries = 0;
  std::size_t collisions = 0;
  std::size_t crossing_successes = 0;
  double frozen_on_road_s = 0.0;
  std::optional<double> collision_rate_per_entry;
  std::optional<double> detection_rate;
  std::optional<double> mean_latency_s;
  std::optional<double> median_latency_s;
  std::optional<double> crossing_success_rate;
  std::array<std::size_t, kBehaviourCount> state_visits{};
  std::size_t moved_away_clean = 0;
  std::size_t still_active = 0;

  static TrialRecord from_result(const TrialResult& result, ExperimentKind kind, const CorridorConfig& config,
                                 std::optional<double> sweep_value);
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

enum class Metric : std::uint8_t {
  Collisions,
  CollisionRatePerEntry,
  DetectionRate,
  Latency,
  Arrivals,
  RoadEntries,
  CrossingSuccessRate,
  FrozenOnRoadTime,
};

inline constexpr std::array<Metric, 8> kAllMetrics{
    Metric::Collisions,         Metric::CollisionRatePerEntry, Metric::DetectionRate,
    Metric::Latency,            Metric::Arrivals,              Metric::RoadEntries,
    Metric::CrossingSuccessRate, Metric::FrozenOnRoadTime};

std::string_view metric_name(Metric m);   // snake_case key, with unit suffix
std::string_view metric_label(Metric m);  // human-readable

/// Metric value in reporting units (percent for rates, seconds for times).
std::optional<double> metric_value(const TrialRecord& record, Metric m);

struct CellSummary {
  std::optional<double> sweep_value;
  Mode mode = Mode::Control;
  Metric metric = Metric::Collisions;
  stats::SampleSummary summary;
  std::size_t missing = 0;  // trials where the metric is undefined
};

struct ComparisonStat {
  std::optional<double> sweep_value;
  Metric metric = Metric::Collisions;
  Mode a = Mode::Control;
  Mode b = Mode::Detection;
  stats::SampleSummary sa;
  stats::SampleSummary sb;
  stats::WelchResult welch;
  std::optional<double> relative_change_pct;  // (mean_b - mean_a) / mean_a * 100; undefined when mean_a == 0
};

struct ExperimentSummary {
  ExperimentKind kind = ExperimentKind::Headline;
  std::vector<std::optional<double>> points;  // one empty entry for Headline
  std::vector<CellSummary> cells;
  std::vector<ComparisonStat> comparisons;

  const CellSummary* cell(std::optional<double> value, Mode mode, Metric metric) const;
  const ComparisonStat* comparison(std::optional<double> value, Metric metric, Mode a, Mode b) const;
};

/// Aggregates records by (sweep value, mode). Comparisons need n >= 2 on both
/// sides; Headline compares every metric across all mode pairs, sweeps compare
/// Control against Detection and Aware.
ExperimentSummary summarise(ExperimentKind kind, const std::vector<TrialRecord>& records);

struct ExperimentRun {
  std::vector<TrialRecord> records;  // sorted by (sweep value, mode, trial id)
  ExperimentSummary summary;
};

/// Runs every (point, mode, trial) cell on `plan.workers` threads. Trial ids
/// are 0..n-1 at every point, so arrivals are shared across modes and points.
ExperimentRun run_experiment(const ExperimentPlan& plan);
ExperimentRun run_headline(const ExperimentPlan& plan);
ExperimentRun run_sweep(const ExperimentPlan& plan);

struct TrialJob {
  CorridorConfig config;
  double hours = 0.0;
  std::uint64_t trial_id = 0;
  std::uint64_t master_seed = 0;
};

/// Runs jobs on a thread pool; results come back in job order. The first
/// failure is rethrown as std::runtime_error naming the trial.
std::vector<TrialResult> run_trials(const std::vector<TrialJob>& jobs, unsigned workers);

}  // namespace wvc
