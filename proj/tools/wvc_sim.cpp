// wvc_sim: command-line front end for the corridor simulator.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "wvc/engine.hpp"
#include "wvc/experiment.hpp"
#include "wvc/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> hours;
  std::string out_dir = ".";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App& cmd, CommonOptions& o, bool experiment) {
  cmd.add_option("--config", o.config_path, "JSON config overriding the defaults")->check(CLI::ExistingFile);
  cmd.add_option("--seed", o.seed, "Master seed (default 42)");
  cmd.add_option("--hours", o.hours, "Simulated hours per trial")->check(CLI::PositiveNumber);
  if (!experiment) return;
  cmd.add_option("--trials", o.trials, "Trials per mode and sweep point")->check(CLI::PositiveNumber);
  cmd.add_option("--out", o.out_dir, "Output directory");
  cmd.add_option("--workers", o.workers, "Worker threads")->envname("WVC_SIM_WORKERS")->check(CLI::PositiveNumber);
}

wvc::CorridorConfig load_base(const CommonOptions& o) {
  return o.config_path.empty() ? wvc::CorridorConfig{} : wvc::io::load_config(o.config_path);
}

void write_file(const fs::path& path, const std::string& what, auto&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out);
  if (!out) throw std::runtime_error("error writing " + path.string());
  std::cerr << "wrote " << what << " to " << path.string() << '\n';
}

int run_single(const CommonOptions& o, const std::optional<std::string>& mode_name, std::uint64_t trial_id) {
  wvc::CorridorConfig config = load_base(o);
  if (mode_name) config.mode = *wvc::parse_mode(*mode_name);
  const wvc::TrialResult r = wvc::run_trial(config, o.hours.value_or(4.0), trial_id, o.seed.value_or(42));

  auto show = [](const std::optional<double>& v, double scale = 1.0) {
    return v ? wvc::io::format_double(*v * scale) : std::string("n/a");
  };
  std::cout << "mode: " << wvc::to_string(r.mode) << '\n'
            << "trial_id: " << r.trial_id << '\n'
            << "seed: " << r.seed << '\n'
            << "hours: " << r.sim_hours << '\n'
            << "cruise/caution speed: " << config.idm.v_cruise * 3.6 << " / " << config.idm.v_caution * 3.6
            << " km/h\n"
            << "arrivals: " << r.arrivals << '\n'
            << "detectable: " << r.detectable << '\n'
            << "detected: " << r.detected << '\n'
            << "road_entries: " << r.road_entries << '\n'
            << "collisions: " << r.collisions << '\n'
            << "crossing_successes: " << r.crossing_successes << '\n'
            << "frozen_on_road_s: " << wvc::io::format_double(r.frozen_on_road_time) << '\n'
            << "collision_rate_per_entry_pct: " << show(r.collision_rate_per_entry(), 100.0) << '\n'
            << "detection_rate_pct: " << show(r.detection_rate(), 100.0) << '\n'
            << "mean_latency_s: " << show(r.mean_latency()) << '\n'
            << "median_latency_s: " << show(r.median_latency()) << '\n'
            << "crossing_success_rate_pct: " << show(r.crossing_success_rate(), 100.0) << '\n';
  return 0;
}

int run_plan(const CommonOptions& o, wvc::ExperimentKind kind, const std::vector<double>& values) {
  wvc::ExperimentPlan plan = wvc::ExperimentPlan::defaults(kind);
  plan.base = load_base(o);
  if (o.seed) plan.master_seed = *o.seed;
  if (o.trials) plan.trials_per_point = *o.trials;
  if (o.hours) plan.hours_per_trial = *o.hours;
  if (!values.empty()) plan.values = values;
  plan.workers = o.workers;

  const wvc::ExperimentRun run = wvc::run_experiment(plan);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const std::string stem(wvc::to_string(kind));
  write_file(dir / (stem + "_trials.csv"), "per-trial records",
             [&](std::ostream& out) { wvc::io::write_trials_csv(out, run.records); });
  write_file(dir / (stem + "_summary.csv"), "summary",
             [&](std::ostream& out) { wvc::io::write_summary_csv(out, run.summary); });
  wvc::io::print_summary(std::cout, run.summary, run.records.size());
  return 0;
}

std::vector<wvc::TrialRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return wvc::io::read_trials_csv(in);
}

int analyze(const std::string& csv, const std::optional<std::string>& out_dir) {
  const auto records = read_records(csv);
  const wvc::ExperimentKind kind = wvc::io::experiment_of(records);
  const wvc::ExperimentSummary summary = wvc::summarise(kind, records);
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_file(fs::path(*out_dir) / (std::string(wvc::to_string(kind)) + "_summary.csv"), "summary",
               [&](std::ostream& out) { wvc::io::write_summary_csv(out, summary); });
  }
  wvc::io::print_summary(std::cout, summary, records.size());
  return 0;
}

int plots(const std::string& csv, const std::string& out_dir) {
  const auto records = read_records(csv);
  const fs::path path = wvc::io::emit_plot_data(records, out_dir);
  std::cerr << "wrote plot dataset to " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wildlife-vehicle collision corridor simulator", "wvc_sim"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::optional<std::string> mode;
  std::uint64_t trial_id = 0;
  auto* run = app.add_subcommand("run", "Run one trial and print its metrics");
  add_common(*run, opts, false);
  run->add_option("--mode", mode, "control, detection or aware (default: config mode)")
      ->check(CLI::IsMember({"control", "detection", "aware"}));
  run->add_option("--trial-id", trial_id, "Trial index within the seed");

  auto* headline = app.add_subcommand("headline", "Three-mode comparison at defaults");
  add_common(*headline, opts, true);

  std::string kind_name;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "One-dimensional sensitivity sweep");
  add_common(*sweep, opts, true);
  sweep->add_option("--kind", kind_name, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"spacing", "size", "kappa"}));
  sweep->add_option("--values", values, "Override the sweep grid");

  std::string csv_path;
  std::optional<std::string> analyze_out;
  auto* an = app.add_subcommand("analyze", "Recompute statistics from a per-trial CSV");
  an->add_option("csv", csv_path, "Per-trial CSV")->required()->check(CLI::ExistingFile);
  an->add_option("--out", analyze_out, "Also write <experiment>_summary.csv here");

  std::string plots_out = ".";
  auto* pl = app.add_subcommand("plots", "Emit the figure dataset for a per-trial CSV");
  pl->add_option("csv", csv_path, "Per-trial CSV")->required()->check(CLI::ExistingFile);
  pl->add_option("--out", plots_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run) return run_single(opts, mode, trial_id);
    if (*headline) return run_plan(opts, wvc::ExperimentKind::Headline, {});
    if (*sweep) return run_plan(opts, *wvc::parse_sweep_kind(kind_name), values);
    if (*an) return analyze(csv_path, analyze_out);
    if (*pl) return plots(csv_path, plots_out);
  } catch (const wvc::ConfigError& e) {
    std::cerr << "invalid config:\n";
    for (const wvc::Diagnostic& d : e.diagnostics()) std::cerr << "  " << d.field << ": " << d.message << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
