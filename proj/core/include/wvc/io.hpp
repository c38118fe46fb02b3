#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wvc/corridor.hpp"
#include "wvc/experiment.hpp"

namespace wvc::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed input files: bad JSON, unknown keys, unparsable CSV rows.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Records that cannot support the requested output (empty, gaps, mixed experiments).
class IncompleteRecords : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- config -------------------------------------------------------------

/// Parses a config document over the defaults. Keys mirror CorridorConfig
/// field names; nested objects for idm, behaviour and geometry. Unknown keys
/// are rejected so typos in sweep scripts fail loudly. Does not validate ranges.
CorridorConfig config_from_json(std::string_view text);
CorridorConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const CorridorConfig& config);

// ---- numbers ------------------------------------------------------------

/// Shortest representation that parses back to the same double; locale-free.
std::string format_double(double value);
double parse_double(std::string_view text);

// ---- per-trial CSV ------------------------------------------------------

std::vector<std::string> trial_csv_header();
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_trials_csv(std::istream& in);

/// RFC 4180 field quoting, applied only when the field needs it.
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_split(std::string_view line);

// ---- summaries ----------------------------------------------------------

void write_summary_csv(std::ostream& out, const ExperimentSummary& summary);
void print_summary(std::ostream& out, const ExperimentSummary& summary, std::size_t record_count);

/// All records must come from one experiment kind.
ExperimentKind experiment_of(const std::vector<TrialRecord>& records);

// ---- plot datasets ------------------------------------------------------

/// File name of the dataset for an experiment kind, e.g. "figure2_headline.json".
std::string plot_file_name(ExperimentKind kind);

/// JSON dataset for one figure. Throws IncompleteRecords naming the first gap.
std::string plot_data_json(const std::vector<TrialRecord>& records);

/// Writes the dataset into `out_dir` and returns the path. Nothing is written on error.
std::filesystem::path emit_plot_data(const std::vector<TrialRecord>& records, const std::filesystem::path& out_dir);

}  // namespace wvc::io
