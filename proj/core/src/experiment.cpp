#include "wvc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace wvc {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Headline: return "headline";
    case ExperimentKind::SpacingSweep: return "sweep_spacing";
    case ExperimentKind::SizeSweep: return "sweep_size";
    case ExperimentKind::KappaSweep: return "sweep_kappa";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment(std::string_view text) {
  for (ExperimentKind k : {ExperimentKind::Headline, ExperimentKind::SpacingSweep, ExperimentKind::SizeSweep,
                           ExperimentKind::KappaSweep}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<ExperimentKind> parse_sweep_kind(std::string_view text) {
  if (text == "spacing") return ExperimentKind::SpacingSweep;
  if (text == "size") return ExperimentKind::SizeSweep;
  if (text == "kappa") return ExperimentKind::KappaSweep;
  return std::nullopt;
}

std::string_view sweep_parameter(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Headline: return "";
    case ExperimentKind::SpacingSweep: return "radar_spacing";
    case ExperimentKind::SizeSweep: return "size_scale";
    case ExperimentKind::KappaSweep: return "kappa";
  }
  return "";
}

ExperimentPlan ExperimentPlan::defaults(ExperimentKind kind) {
  ExperimentPlan plan;
  plan.kind = kind;
  if (kind == ExperimentKind::Headline) return plan;
  plan.trials_per_point = 15;
  plan.hours_per_trial = 2.0;
  switch (kind) {
    case ExperimentKind::SpacingSweep: plan.values = {5, 10, 15, 20, 25, 30, 40}; break;
    case ExperimentKind::SizeSweep: plan.values = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0}; break;
    case ExperimentKind::KappaSweep: plan.values = {0.3, 0.5, 1.0, 2.0, 3.0, 5.0}; break;
    case ExperimentKind::Headline: break;
  }
  return plan;
}

std::size_t ExperimentPlan::total_trials() const {
  const std::size_t points = kind == ExperimentKind::Headline ? 1 : values.size();
  return points * kAllModes.size() * trials_per_point;
}

CorridorConfig apply_sweep_value(CorridorConfig config, ExperimentKind kind, double value) {
  switch (kind) {
    case ExperimentKind::SpacingSweep: config.radar_spacing = value; break;
    case ExperimentKind::SizeSweep: config.size_scale = value; break;
    case ExperimentKind::KappaSweep: config.kappa = value; break;
    case ExperimentKind::Headline: break;
  }
  return config;
}

TrialRecord TrialRecord::from_result(const TrialResult& r, ExperimentKind kind, const CorridorConfig& config,
                                     std::optional<double> sweep_value) {
  TrialRecord rec;
  rec.experiment = kind;
  rec.trial_id = r.trial_id;
  rec.mode = r.mode;
  rec.seed = r.seed;
  rec.hours = r.sim_hours;
  rec.radar_spacing = config.radar_spacing;
  rec.size_scale = config.size_scale;
  rec.kappa = config.kappa;
  rec.sweep_value = sweep_value;
  rec.arrivals = r.arrivals;
  rec.detectable = r.detectable;
  rec.detected = r.detected;
  rec.road_entries = r.road_entries;
  rec.collisions = r.collisions;
  rec.crossing_successes = r.crossing_successes;
  rec.frozen_on_road_s = r.frozen_on_road_time;
  rec.collision_rate_per_entry = r.collision_rate_per_entry();
  rec.detection_rate = r.detection_rate();
  rec.mean_latency_s = r.mean_latency();
  rec.median_latency_s = r.median_latency();
  rec.crossing_success_rate = r.crossing_success_rate();
  rec.state_visits = r.state_visits;
  rec.moved_away_clean = r.moved_away_clean;
  rec.still_active = r.still_active;
  return rec;
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::Collisions: return "collisions";
    case Metric::CollisionRatePerEntry: return "collision_rate_per_entry_pct";
    case Metric::DetectionRate: return "detection_rate_pct";
    case Metric::Latency: return "in_range_latency_s";
    case Metric::Arrivals: return "arrivals";
    case Metric::RoadEntries: return "road_entries";
    case Metric::CrossingSuccessRate: return "crossing_success_rate_pct";
    case Metric::FrozenOnRoadTime: return "frozen_on_road_s";
  }
  return "unknown";
}

std::string_view metric_label(Metric m) {
  switch (m) {
    case Metric::Collisions: return "Collisions per trial";
    case Metric::CollisionRatePerEntry: return "Collision rate per road entry (%)";
    case Metric::DetectionRate: return "Detection rate (%)";
    case Metric::Latency: return "In-range detection latency (s)";
    case Metric::Arrivals: return "Animals arriving per trial";
    case Metric::RoadEntries: return "Road entries per trial";
    case Metric::CrossingSuccessRate: return "Crossing success rate (%)";
    case Metric::FrozenOnRoadTime: return "Cumulative frozen-on-road time (s)";
  }
  return "unknown";
}

std::optional<double> metric_value(const TrialRecord& r, Metric m) {
  auto pct = [](std::optional<double> v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return *v * 100.0;
  };
  switch (m) {
    case Metric::Collisions: return static_cast<double>(r.collisions);
    case Metric::CollisionRatePerEntry: return pct(r.collision_rate_per_entry);
    case Metric::DetectionRate: return pct(r.detection_rate);
    case Metric::Latency: return r.mean_latency_s;
    case Metric::Arrivals: return static_cast<double>(r.arrivals);
    case Metric::RoadEntries: return static_cast<double>(r.road_entries);
    case Metric::CrossingSuccessRate: return pct(r.crossing_success_rate);
    case Metric::FrozenOnRoadTime: return r.frozen_on_road_s;
  }
  return std::nullopt;
}

const CellSummary* ExperimentSummary::cell(std::optional<double> value, Mode mode, Metric metric) const {
  for (const CellSummary& c : cells) {
    if (c.sweep_value == value && c.mode == mode && c.metric == metric) return &c;
  }
  return nullptr;
}

const ComparisonStat* ExperimentSummary::comparison(std::optional<double> value, Metric metric, Mode a,
                                                    Mode b) const {
  for (const ComparisonStat& c : comparisons) {
    if (c.sweep_value == value && c.metric == metric && c.a == a && c.b == b) return &c;
  }
  return nullptr;
}

namespace {

bool record_order(const TrialRecord& x, const TrialRecord& y) {
  const double vx = x.sweep_value.value_or(0.0);
  const double vy = y.sweep_value.value_or(0.0);
  if (vx != vy) return vx < vy;
  if (x.mode != y.mode) return x.mode < y.mode;
  return x.trial_id < y.trial_id;
}

std::vector<double> collect(const std::vector<TrialRecord>& records, std::optional<double> value, Mode mode,
                            Metric metric, std::size_t* missing) {
  std::vector<double> xs;
  for (const TrialRecord& r : records) {
    if (r.sweep_value != value || r.mode != mode) continue;
    if (auto v = metric_value(r, metric)) {
      xs.push_back(*v);
    } else if (missing) {
      ++*missing;
    }
  }
  return xs;
}

}  // namespace

ExperimentSummary summarise(ExperimentKind kind, const std::vector<TrialRecord>& input) {
  std::vector<TrialRecord> records = input;
  std::stable_sort(records.begin(), records.end(), record_order);

  ExperimentSummary out;
  out.kind = kind;
  for (const TrialRecord& r : records) {
    if (std::find(out.points.begin(), out.points.end(), r.sweep_value) == out.points.end()) {
      out.points.push_back(r.sweep_value);
    }
  }

  for (const auto& point : out.points) {
    std::array<bool, 3> present{};
    for (const TrialRecord& r : records) {
      if (r.sweep_value == point) present[static_cast<std::size_t>(r.mode)] = true;
    }
    for (Mode mode : kAllModes) {
      if (!present[static_cast<std::size_t>(mode)]) continue;
      for (Metric metric : kAllMetrics) {
        CellSummary cell;
        cell.sweep_value = point;
        cell.mode = mode;
        cell.metric = metric;
        const std::vector<double> xs = collect(records, point, mode, metric, &cell.missing);
        cell.summary = stats::summarise(xs);
        out.cells.push_back(cell);
      }
    }

    std::vector<std::pair<Mode, Mode>> pairs{{Mode::Control, Mode::Detection}, {Mode::Control, Mode::Aware}};
    if (kind == ExperimentKind::Headline) pairs.emplace_back(Mode::Detection, Mode::Aware);
    for (Metric metric : kAllMetrics) {
      for (const auto& [a, b] : pairs) {
        const std::vector<double> xa = collect(records, point, a, metric, nullptr);
        const std::vector<double> xb = collect(records, point, b, metric, nullptr);
        if (xa.size() < 2 || xb.size() < 2) continue;
        ComparisonStat c;
        c.sweep_value = point;
        c.metric = metric;
        c.a = a;
        c.b = b;
        c.sa = stats::summarise(xa);
        c.sb = stats::summarise(xb);
        c.welch = stats::welch_t(xa, xb);
        if (c.sa.mean != 0.0) c.relative_change_pct = (c.sb.mean - c.sa.mean) / c.sa.mean * 100.0;
        out.comparisons.push_back(c);
      }
    }
  }
  return out;
}

std::vector<TrialResult> run_trials(const std::vector<TrialJob>& jobs, unsigned workers) {
  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t failed_job = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      const TrialJob& job = jobs[i];
      try {
        results[i] = run_trial(job.config, job.hours, job.trial_id, job.master_seed);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error || i < failed_job) {
          first_error = std::current_exception();
          failed_job = i;
        }
        failed.store(true);
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  if (first_error) {
    const TrialJob& job = jobs[failed_job];
    std::string what = "unknown error";
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw std::runtime_error("trial " + std::to_string(job.trial_id) + " (mode " +
                             std::string(to_string(job.config.mode)) + ") failed: " + what);
  }
  return results;
}

ExperimentRun run_experiment(const ExperimentPlan& plan) {
  if (plan.kind != ExperimentKind::Headline && plan.values.empty()) {
    throw std::invalid_argument("run_experiment: sweep needs at least one value");
  }
  if (plan.trials_per_point == 0) throw std::invalid_argument("run_experiment: trials_per_point must be >= 1");
  if (auto diagnostics = validate_config(plan.base); !diagnostics.empty()) throw ConfigError(std::move(diagnostics));

  std::vector<std::optional<double>> points;
  if (plan.kind == ExperimentKind::Headline) {
    points.emplace_back(std::nullopt);
  } else {
    std::vector<double> sorted = plan.values;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    points.assign(sorted.begin(), sorted.end());
  }

  std::vector<TrialJob> jobs;
  std::vector<std::optional<double>> job_points;
  jobs.reserve(plan.total_trials());
  for (const auto& point : points) {
    for (Mode mode : kAllModes) {
      CorridorConfig config = point ? apply_sweep_value(plan.base, plan.kind, *point) : plan.base;
      config.mode = mode;
      if (auto diagnostics = validate_config(config); !diagnostics.empty()) throw ConfigError(std::move(diagnostics));
      for (std::size_t t = 0; t < plan.trials_per_point; ++t) {
        jobs.push_back(TrialJob{config, plan.hours_per_trial, t, plan.master_seed});
        job_points.push_back(point);
      }
    }
  }

  const std::vector<TrialResult> results = run_trials(jobs, plan.workers);
  ExperimentRun run;
  run.records.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    run.records.push_back(TrialRecord::from_result(results[i], plan.kind, jobs[i].config, job_points[i]));
  }
  run.summary = summarise(plan.kind, run.records);
  return run;
}

ExperimentRun run_headline(const ExperimentPlan& plan) {
  if (plan.kind != ExperimentKind::Headline) throw std::invalid_argument("run_headline: plan is not a headline plan");
  return run_experiment(plan);
}

ExperimentRun run_sweep(const ExperimentPlan& plan) {
  if (plan.kind == ExperimentKind::Headline) throw std::invalid_argument("run_sweep: plan is not a sweep plan");
  return run_experiment(plan);
}

}  // namespace wvc
