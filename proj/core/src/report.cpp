#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"
#include "wvc/io.hpp"

namespace wvc::io {

namespace {

using nlohmann::ordered_json;

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string point_label(ExperimentKind kind, const std::optional<double>& value) {
  if (!value) return "defaults";
  return fmt::format("{} = {}", sweep_parameter(kind), format_double(*value));
}

std::string mean_sd(const stats::SampleSummary& s) {
  if (s.n == 0) return "-";
  if (s.n < 2) return fmt::format("{:.3f}", s.mean);
  return fmt::format("{:.3f} ± {:.3f}", s.mean, s.sd);
}

std::string change(const ComparisonStat* c) {
  if (!c) return "-";
  const std::string rel = c->relative_change_pct ? fmt::format("{:+.1f}%", *c->relative_change_pct) : "n/a";
  return fmt::format("{} {}", rel, stats::significance_stars(c->welch.p));
}

// Pads to `width` display columns; "±" is two bytes but one column.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (unsigned char c : s) cols += (c & 0xC0) != 0x80;
  return cols >= width ? s + " " : s + std::string(width - cols, ' ');
}

constexpr std::array<Metric, 4> kHeadlinePanels{Metric::Collisions, Metric::CollisionRatePerEntry,
                                                Metric::RoadEntries, Metric::FrozenOnRoadTime};
constexpr std::array<Metric, 4> kSweepPanels{Metric::CollisionRatePerEntry, Metric::DetectionRate, Metric::Latency,
                                             Metric::RoadEntries};

std::vector<std::pair<Mode, Mode>> comparison_pairs(ExperimentKind kind) {
  std::vector<std::pair<Mode, Mode>> pairs{{Mode::Control, Mode::Detection}, {Mode::Control, Mode::Aware}};
  if (kind == ExperimentKind::Headline) pairs.emplace_back(Mode::Detection, Mode::Aware);
  return pairs;
}

/// Every (point, mode) cell present with the same trial ids, each exactly once.
void require_complete(const std::vector<TrialRecord>& records, ExperimentKind kind) {
  std::map<std::pair<std::optional<double>, Mode>, std::set<std::uint64_t>> cells;
  std::set<std::optional<double>> points;
  std::set<std::uint64_t> trials;
  for (const TrialRecord& r : records) {
    if (kind != ExperimentKind::Headline && !r.sweep_value) {
      throw IncompleteRecords(fmt::format("trial {} ({}) has no sweep value", r.trial_id, to_string(r.mode)));
    }
    auto& ids = cells[{r.sweep_value, r.mode}];
    if (!ids.insert(r.trial_id).second) {
      throw IncompleteRecords(fmt::format("duplicate trial {} for mode {} at {}", r.trial_id, to_string(r.mode),
                                          point_label(kind, r.sweep_value)));
    }
    points.insert(r.sweep_value);
    trials.insert(r.trial_id);
  }
  for (const auto& point : points) {
    for (Mode mode : kAllModes) {
      auto it = cells.find({point, mode});
      if (it == cells.end()) {
        throw IncompleteRecords(fmt::format("no {} trials at {}", to_string(mode), point_label(kind, point)));
      }
      for (std::uint64_t id : trials) {
        if (!it->second.contains(id)) {
          throw IncompleteRecords(
              fmt::format("missing trial {} for mode {} at {}", id, to_string(mode), point_label(kind, point)));
        }
      }
    }
  }
}

ordered_json json_opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json summary_json(const stats::SampleSummary& s) {
  return {{"n", s.n}, {"mean", s.n ? ordered_json(s.mean) : ordered_json(nullptr)},
          {"sd", s.n >= 2 ? ordered_json(s.sd) : ordered_json(nullptr)}};
}

ordered_json panel_json(Metric metric, const std::vector<TrialRecord>& records, const ExperimentSummary& summary) {
  ordered_json series = ordered_json::array();
  for (Mode mode : kAllModes) {
    ordered_json points = ordered_json::array();
    for (const auto& value : summary.points) {
      ordered_json trials = ordered_json::array();
      for (const TrialRecord& r : records) {
        if (r.mode != mode || r.sweep_value != value) continue;
        trials.push_back({{"trial_id", r.trial_id}, {"value", json_opt(metric_value(r, metric))}});
      }
      ordered_json p;
      if (summary.kind != ExperimentKind::Headline) p["sweep_value"] = json_opt(value);
      const CellSummary* cell = summary.cell(value, mode, metric);
      p["summary"] = summary_json(cell ? cell->summary : stats::SampleSummary{});
      p["missing"] = cell ? cell->missing : 0;
      p["trials"] = std::move(trials);
      points.push_back(std::move(p));
    }
    series.push_back({{"mode", to_string(mode)}, {"points", std::move(points)}});
  }

  ordered_json annotations = ordered_json::array();
  for (const auto& value : summary.points) {
    for (const auto& [a, b] : comparison_pairs(summary.kind)) {
      const ComparisonStat* c = summary.comparison(value, metric, a, b);
      if (!c) continue;
      ordered_json note;
      if (summary.kind != ExperimentKind::Headline) note["sweep_value"] = json_opt(value);
      note["a"] = to_string(a);
      note["b"] = to_string(b);
      note["relative_change_pct"] = json_opt(c->relative_change_pct);
      note["t"] = std::isfinite(c->welch.t) ? ordered_json(c->welch.t) : ordered_json(nullptr);
      note["df"] = c->welch.df;
      note["p"] = c->welch.p;
      note["stars"] = stats::significance_stars(c->welch.p);
      note["degenerate_variance"] = c->welch.degenerate_variance;
      annotations.push_back(std::move(note));
    }
  }
  return {{"metric", metric_name(metric)},
          {"label", metric_label(metric)},
          {"series", std::move(series)},
          {"annotations", std::move(annotations)}};
}

}  // namespace

ExperimentKind experiment_of(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw IncompleteRecords("no trial records");
  const ExperimentKind kind = records.front().experiment;
  for (const TrialRecord& r : records) {
    if (r.experiment != kind) {
      throw IncompleteRecords(
          fmt::format("records mix experiments '{}' and '{}'", to_string(kind), to_string(r.experiment)));
    }
  }
  return kind;
}

void write_summary_csv(std::ostream& out, const ExperimentSummary& summary) {
  out << "schema_version,experiment,row,sweep_param,sweep_value,metric,mode_a,mode_b,n_a,mean_a,sd_a,missing_a,"
         "n_b,mean_b,sd_b,t,df,p,stars,relative_change_pct,degenerate_variance\n";
  const std::string prefix =
      fmt::format("{},{},", kSchemaVersion, to_string(summary.kind));
  const std::string param(sweep_parameter(summary.kind));
  for (const CellSummary& c : summary.cells) {
    const auto& s = c.summary;
    out << prefix << "cell," << param << ',' << opt(c.sweep_value) << ',' << metric_name(c.metric) << ','
        << to_string(c.mode) << ",," << s.n << ',' << (s.n ? format_double(s.mean) : "") << ','
        << (s.n >= 2 ? format_double(s.sd) : "") << ',' << c.missing << ",,,,,,,,,\n";
  }
  for (const ComparisonStat& c : summary.comparisons) {
    out << prefix << "comparison," << param << ',' << opt(c.sweep_value) << ',' << metric_name(c.metric) << ','
        << to_string(c.a) << ',' << to_string(c.b) << ',' << c.sa.n << ',' << format_double(c.sa.mean) << ','
        << format_double(c.sa.sd) << ",," << c.sb.n << ',' << format_double(c.sb.mean) << ','
        << format_double(c.sb.sd) << ',' << format_double(c.welch.t) << ',' << format_double(c.welch.df) << ','
        << format_double(c.welch.p) << ',' << stats::significance_stars(c.welch.p) << ','
        << opt(c.relative_change_pct) << ',' << (c.welch.degenerate_variance ? "true" : "false") << '\n';
  }
}

void print_summary(std::ostream& out, const ExperimentSummary& summary, std::size_t record_count) {
  fmt::print(out, "{}: {} trials, {} point(s)\n", to_string(summary.kind), record_count, summary.points.size());
  const auto pairs = comparison_pairs(summary.kind);

  for (const auto& value : summary.points) {
    fmt::print(out, "\n[{}]\n", point_label(summary.kind, value));
    std::string header = pad("metric", 38);
    for (Mode m : kAllModes) header += pad(std::string(to_string(m)), 22);
    for (const auto& [a, b] : pairs) header += pad(fmt::format("{}->{}", to_string(a)[0], to_string(b)[0]), 16);
    fmt::print(out, "{}\n", header);
    for (Metric metric : kAllMetrics) {
      std::string row = pad(std::string(metric_label(metric)), 38);
      for (Mode m : kAllModes) {
        const CellSummary* cell = summary.cell(value, m, metric);
        row += pad(cell ? mean_sd(cell->summary) : "-", 22);
      }
      for (const auto& [a, b] : pairs) row += pad(change(summary.comparison(value, metric, a, b)), 16);
      fmt::print(out, "{}\n", row);
    }
  }

  bool any = false;
  for (const ComparisonStat& c : summary.comparisons) {
    if (c.metric != Metric::CollisionRatePerEntry) continue;
    if (!any) fmt::print(out, "\nWelch tests, collision rate per road entry:\n");
    any = true;
    fmt::print(out, "  {:<24} {:>9} vs {:<9} t = {:7.3f}  df = {:6.2f}  p = {:.3g} {}\n",
               point_label(summary.kind, c.sweep_value), to_string(c.a), to_string(c.b), c.welch.t, c.welch.df,
               c.welch.p, stats::significance_stars(c.welch.p));
  }
  if (!any) fmt::print(out, "\nFewer than two trials per cell: significance tests suppressed.\n");
}

std::string plot_file_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Headline: return "figure2_headline.json";
    case ExperimentKind::SpacingSweep: return "figure3_sweep_spacing.json";
    case ExperimentKind::SizeSweep: return "figure4_sweep_size.json";
    case ExperimentKind::KappaSweep: return "figure5_sweep_kappa.json";
  }
  return "figure.json";
}

std::string plot_data_json(const std::vector<TrialRecord>& records) {
  const ExperimentKind kind = experiment_of(records);
  require_complete(records, kind);
  const ExperimentSummary summary = summarise(kind, records);

  ordered_json panels = ordered_json::array();
  if (kind == ExperimentKind::Headline) {
    for (Metric m : kHeadlinePanels) panels.push_back(panel_json(m, records, summary));
  } else {
    for (Metric m : kSweepPanels) panels.push_back(panel_json(m, records, summary));
  }
  ordered_json doc = {
      {"schema_version", kSchemaVersion},
      {"experiment", to_string(kind)},
      {"sweep_param", kind == ExperimentKind::Headline ? ordered_json(nullptr) : ordered_json(sweep_parameter(kind))},
      {"trials", records.size()},
      {"significance", {{"*", 0.05}, {"**", 0.01}, {"***", 0.001}}},
      {"panels", std::move(panels)},
  };
  return doc.dump(2) + "\n";
}

std::filesystem::path emit_plot_data(const std::vector<TrialRecord>& records, const std::filesystem::path& out_dir) {
  const std::string text = plot_data_json(records);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path = out_dir / plot_file_name(records.front().experiment);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  return path;
}

}  // namespace wvc::io
