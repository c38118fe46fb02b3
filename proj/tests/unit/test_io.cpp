#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "wvc/io.hpp"

namespace wvc {
namespace {

using nlohmann::json;

ExperimentRun small_run(ExperimentKind kind, std::size_t trials = 3) {
  auto plan = ExperimentPlan::defaults(kind);
  plan.trials_per_point = trials;
  plan.hours_per_trial = 0.5;
  if (kind != ExperimentKind::Headline) plan.values = {plan.values.front(), plan.values.back()};
  return run_experiment(plan);
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("wvc_io_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(ConfigJson, EmptyObjectGivesDefaults) {
  const CorridorConfig c = io::config_from_json("{}");
  EXPECT_EQ(c.radar_spacing, 15.0);
  EXPECT_EQ(c.mode, Mode::Aware);
  EXPECT_TRUE(validate_config(c).empty());
}

TEST(ConfigJson, OverridesNestedFields) {
  const CorridorConfig c = io::config_from_json(R"({
    "radar_spacing": 20, "mode": "control",
    "idm": {"t_react": 2.0},
    "behaviour": {"forage_dwell": [1, 4], "size_mixture": [{"weight": 1, "lo": 0.5, "hi": 0.6}]},
    "geometry": {"lane_width": 3.5}
  })");
  EXPECT_EQ(c.radar_spacing, 20.0);
  EXPECT_EQ(c.mode, Mode::Control);
  EXPECT_EQ(c.idm.t_react, 2.0);
  EXPECT_EQ(c.behaviour.forage_dwell_min, 1.0);
  EXPECT_EQ(c.behaviour.forage_dwell_max, 4.0);
  ASSERT_EQ(c.behaviour.size_mixture.size(), 1u);
  EXPECT_EQ(c.behaviour.size_mixture[0].hi, 0.6);
  EXPECT_EQ(c.geometry.lane_width, 3.5);
}

TEST(ConfigJson, UnknownKeysRejected) {
  EXPECT_THROW(io::config_from_json(R"({"radar_spacng": 10})"), io::FormatError);
  EXPECT_THROW(io::config_from_json(R"({"idm": {"tau": 1}})"), io::FormatError);
  try {
    io::config_from_json(R"({"behaviour": {"size_mixture": [{"weight": 1, "lo": 0, "hi": 1, "mean": 3}]}})");
    FAIL();
  } catch (const io::FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("behaviour.size_mixture[0].mean"), std::string::npos) << e.what();
  }
}

TEST(ConfigJson, TypeErrors) {
  EXPECT_THROW(io::config_from_json(R"({"kappa": "fast"})"), io::FormatError);
  EXPECT_THROW(io::config_from_json(R"({"mode": "stealth"})"), io::FormatError);
  EXPECT_THROW(io::config_from_json(R"({"vehicles_per_direction": -1})"), io::FormatError);
  EXPECT_THROW(io::config_from_json("[1, 2]"), io::FormatError);
  EXPECT_THROW(io::config_from_json("{not json"), io::FormatError);
}

TEST(ConfigJson, ParsesButDoesNotValidateRanges) {
  const CorridorConfig c = io::config_from_json(R"({"time_step": 0})");
  EXPECT_FALSE(validate_config(c).empty());
}

TEST(ConfigJson, RoundTrip) {
  CorridorConfig c;
  c.kappa = 0.3;
  c.mode = Mode::Detection;
  c.behaviour.crossing_threat_freeze = false;
  c.geometry.exit_offset = 12.5;
  const std::string text = io::config_to_json(c);
  EXPECT_EQ(json::parse(text)["schema_version"], io::kSchemaVersion);
  const CorridorConfig back = io::config_from_json(text);
  EXPECT_EQ(io::config_to_json(back), text);
}

TEST(Numbers, ShortestRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(io::parse_double(io::format_double(x)), x);
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(15.0), "15");
  EXPECT_THROW(io::parse_double("1,5"), io::FormatError);
  EXPECT_THROW(io::parse_double(""), io::FormatError);
}

TEST(Csv, QuotingRoundTrip) {
  const std::vector<std::string> fields{"plain", "has,comma", "has \"quote\"", "", "multi\nline"};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + io::csv_escape(fields[i]);
  EXPECT_EQ(io::csv_split(line), fields);
  EXPECT_EQ(io::csv_escape("plain"), "plain");
  EXPECT_EQ(io::csv_escape("a\"b"), "\"a\"\"b\"");
  EXPECT_THROW(io::csv_split("\"open"), io::FormatError);
}

TEST(TrialCsv, HeaderIsDocumentedShape) {
  const auto header = io::trial_csv_header();
  EXPECT_EQ(header.front(), "schema_version");
  EXPECT_EQ(header[2], "trial_id");
  EXPECT_EQ(header[3], "mode");
  EXPECT_EQ(header[4], "seed");
  EXPECT_NE(std::find(header.begin(), header.end(), "collision_rate_per_entry"), header.end());
  EXPECT_NE(std::find(header.begin(), header.end(), "visits_frozen"), header.end());
}

TEST(TrialCsv, RoundTripIsExact) {
  for (auto kind : {ExperimentKind::Headline, ExperimentKind::SpacingSweep}) {
    const auto run = small_run(kind);
    std::stringstream buffer;
    io::write_trials_csv(buffer, run.records);
    const auto back = io::read_trials_csv(buffer);
    EXPECT_EQ(back, run.records);
  }
}

TEST(TrialCsv, MissingMetricsAreEmptyFields) {
  TrialRecord r;
  r.mode = Mode::Control;
  std::stringstream buffer;
  io::write_trials_csv(buffer, {r});
  std::string header;
  std::string row;
  std::getline(buffer, header);
  std::getline(buffer, row);
  const auto names = io::csv_split(header);
  const auto fields = io::csv_split(row);
  const auto col = [&](const std::string& n) { return fields[std::find(names.begin(), names.end(), n) - names.begin()]; };
  EXPECT_EQ(col("collision_rate_per_entry"), "");
  EXPECT_EQ(col("detection_rate"), "");
  EXPECT_EQ(col("sweep_value"), "");
  EXPECT_EQ(col("mode"), "control");
}

TEST(TrialCsv, RejectsBadInput) {
  std::stringstream empty;
  EXPECT_THROW(io::read_trials_csv(empty), io::FormatError);
  std::stringstream wrong_header("a,b,c\n1,2,3\n");
  EXPECT_THROW(io::read_trials_csv(wrong_header), io::FormatError);

  std::stringstream good;
  io::write_trials_csv(good, small_run(ExperimentKind::Headline, 2).records);
  std::string text = good.str();
  text.insert(text.find("control"), "x");
  std::stringstream corrupted(text);
  EXPECT_THROW(io::read_trials_csv(corrupted), io::FormatError);
}

TEST(Analyze, StatisticsMatchInMemory) {
  const auto run = small_run(ExperimentKind::Headline, 4);
  std::stringstream buffer;
  io::write_trials_csv(buffer, run.records);
  const auto records = io::read_trials_csv(buffer);
  const auto again = summarise(io::experiment_of(records), records);
  ASSERT_EQ(again.comparisons.size(), run.summary.comparisons.size());
  for (std::size_t i = 0; i < again.comparisons.size(); ++i) {
    const auto& x = again.comparisons[i].welch;
    const auto& y = run.summary.comparisons[i].welch;
    if (std::isfinite(y.t)) EXPECT_NEAR(x.t, y.t, 1e-12 * std::max(1.0, std::abs(y.t)));
    EXPECT_NEAR(x.p, y.p, 1e-12 * std::max(1.0, y.p));
  }
  std::stringstream a;
  std::stringstream b;
  io::write_summary_csv(a, run.summary);
  io::write_summary_csv(b, again);
  EXPECT_EQ(a.str(), b.str());
  std::stringstream pa;
  std::stringstream pb;
  io::print_summary(pa, run.summary, run.records.size());
  io::print_summary(pb, again, records.size());
  EXPECT_EQ(pa.str(), pb.str());
}

TEST(ExperimentOf, RejectsEmptyAndMixed) {
  EXPECT_THROW(io::experiment_of({}), io::IncompleteRecords);
  TrialRecord a;
  TrialRecord b;
  b.experiment = ExperimentKind::SizeSweep;
  EXPECT_THROW(io::experiment_of({a, b}), io::IncompleteRecords);
}

TEST(PlotData, HeadlineHasFourPanels) {
  const auto run = small_run(ExperimentKind::Headline);
  const json doc = json::parse(io::plot_data_json(run.records));
  EXPECT_EQ(doc["schema_version"], io::kSchemaVersion);
  ASSERT_EQ(doc["panels"].size(), 4u);
  EXPECT_EQ(doc["panels"][0]["metric"], "collisions");
  EXPECT_EQ(doc["panels"][1]["metric"], "collision_rate_per_entry_pct");
  EXPECT_EQ(doc["panels"][2]["metric"], "road_entries");
  EXPECT_EQ(doc["panels"][3]["metric"], "frozen_on_road_s");
  for (const auto& panel : doc["panels"]) {
    ASSERT_EQ(panel["series"].size(), 3u);
    EXPECT_EQ(panel["series"][0]["points"][0]["trials"].size(), 3u);
    EXPECT_EQ(panel["annotations"].size(), 3u);
  }
}

TEST(PlotData, SweepSeriesPerMode) {
  const auto run = small_run(ExperimentKind::SpacingSweep);
  const json doc = json::parse(io::plot_data_json(run.records));
  EXPECT_EQ(doc["sweep_param"], "radar_spacing");
  for (const auto& panel : doc["panels"]) {
    for (const auto& series : panel["series"]) {
      ASSERT_EQ(series["points"].size(), 2u);
      EXPECT_EQ(series["points"][0]["sweep_value"], 5.0);
      EXPECT_EQ(series["points"][1]["sweep_value"], 40.0);
      EXPECT_TRUE(series["points"][0]["summary"].contains("sd"));
    }
  }
  const auto& notes = doc["panels"][0]["annotations"];
  for (const auto& n : notes) {
    EXPECT_EQ(n["a"], "control");
    const double p = n["p"];
    EXPECT_EQ(n["stars"], std::string(stats::significance_stars(p)));
  }
}

TEST(PlotData, EmptyInputWritesNothing) {
  const auto dir = fresh_dir("empty");
  EXPECT_THROW(io::emit_plot_data({}, dir), io::IncompleteRecords);
  EXPECT_FALSE(std::filesystem::exists(dir));
}

TEST(PlotData, NamesTheGap) {
  auto records = small_run(ExperimentKind::SpacingSweep).records;
  records.erase(std::remove_if(records.begin(), records.end(),
                               [](const TrialRecord& r) {
                                 return r.mode == Mode::Aware && r.sweep_value == 40.0 && r.trial_id == 1;
                               }),
                records.end());
  try {
    io::plot_data_json(records);
    FAIL();
  } catch (const io::IncompleteRecords& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("trial 1"), std::string::npos) << what;
    EXPECT_NE(what.find("aware"), std::string::npos) << what;
    EXPECT_NE(what.find("radar_spacing = 40"), std::string::npos) << what;
  }

  records.erase(std::remove_if(records.begin(), records.end(),
                               [](const TrialRecord& r) { return r.mode == Mode::Control && r.sweep_value == 5.0; }),
                records.end());
  EXPECT_THROW(io::plot_data_json(records), io::IncompleteRecords);
}

TEST(PlotData, EmitsDeterministicFile) {
  const auto run = small_run(ExperimentKind::Headline);
  const auto dir = fresh_dir("emit");
  const auto path = io::emit_plot_data(run.records, dir);
  EXPECT_EQ(path.filename(), "figure2_headline.json");
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), io::plot_data_json(run.records));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace wvc
