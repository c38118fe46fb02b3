#include <charconv>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "wvc/io.hpp"

namespace wvc::io {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw FormatError("cannot format number");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw FormatError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw FormatError("unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw FormatError("not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_opt(std::string_view text) {
  if (text.empty()) return std::nullopt;
  return parse_double(text);
}

struct Column {
  std::string name;
  std::function<std::string(const TrialRecord&)> write;
  std::function<void(TrialRecord&, std::string_view)> read;
};

template <class T>
Column count_column(std::string name, T TrialRecord::*field) {
  return {std::move(name), [field](const TrialRecord& r) { return std::to_string(r.*field); },
          [field](TrialRecord& r, std::string_view s) { r.*field = static_cast<T>(parse_u64(s)); }};
}

Column double_column(std::string name, double TrialRecord::*field) {
  return {std::move(name), [field](const TrialRecord& r) { return format_double(r.*field); },
          [field](TrialRecord& r, std::string_view s) { r.*field = parse_double(s); }};
}

Column optional_column(std::string name, std::optional<double> TrialRecord::*field) {
  return {std::move(name), [field](const TrialRecord& r) { return opt(r.*field); },
          [field](TrialRecord& r, std::string_view s) { r.*field = parse_opt(s); }};
}

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = [] {
    std::vector<Column> c;
    c.push_back({"schema_version", [](const TrialRecord&) { return std::to_string(kSchemaVersion); },
                 [](TrialRecord&, std::string_view s) {
                   if (parse_u64(s) != static_cast<std::uint64_t>(kSchemaVersion)) {
                     throw FormatError("unsupported schema_version " + std::string(s));
                   }
                 }});
    c.push_back({"experiment", [](const TrialRecord& r) { return std::string(to_string(r.experiment)); },
                 [](TrialRecord& r, std::string_view s) {
                   auto k = parse_experiment(s);
                   if (!k) throw FormatError("unknown experiment '" + std::string(s) + "'");
                   r.experiment = *k;
                 }});
    c.push_back(count_column("trial_id", &TrialRecord::trial_id));
    c.push_back({"mode", [](const TrialRecord& r) { return std::string(to_string(r.mode)); },
                 [](TrialRecord& r, std::string_view s) {
                   auto m = parse_mode(s);
                   if (!m) throw FormatError("unknown mode '" + std::string(s) + "'");
                   r.mode = *m;
                 }});
    c.push_back(count_column("seed", &TrialRecord::seed));
    c.push_back(double_column("hours", &TrialRecord::hours));
    c.push_back(double_column("radar_spacing_m", &TrialRecord::radar_spacing));
    c.push_back(double_column("size_scale", &TrialRecord::size_scale));
    c.push_back(double_column("kappa_per_s", &TrialRecord::kappa));
    c.push_back({"sweep_param", [](const TrialRecord& r) { return std::string(sweep_parameter(r.experiment)); },
                 [](TrialRecord&, std::string_view) {}});
    c.push_back(optional_column("sweep_value", &TrialRecord::sweep_value));
    c.push_back(count_column("arrivals", &TrialRecord::arrivals));
    c.push_back(count_column("detectable", &TrialRecord::detectable));
    c.push_back(count_column("detected", &TrialRecord::detected));
    c.push_back(count_column("road_entries", &TrialRecord::road_entries));
    c.push_back(count_column("collisions", &TrialRecord::collisions));
    c.push_back(count_column("crossing_successes", &TrialRecord::crossing_successes));
    c.push_back(double_column("frozen_on_road_s", &TrialRecord::frozen_on_road_s));
    c.push_back(optional_column("collision_rate_per_entry", &TrialRecord::collision_rate_per_entry));
    c.push_back(optional_column("detection_rate", &TrialRecord::detection_rate));
    c.push_back(optional_column("mean_latency_s", &TrialRecord::mean_latency_s));
    c.push_back(optional_column("median_latency_s", &TrialRecord::median_latency_s));
    c.push_back(optional_column("crossing_success_rate", &TrialRecord::crossing_success_rate));
    for (std::size_t i = 0; i < kBehaviourCount; ++i) {
      c.push_back({"visits_" + std::string(to_string(static_cast<AnimalBehaviour>(i))),
                   [i](const TrialRecord& r) { return std::to_string(r.state_visits[i]); },
                   [i](TrialRecord& r, std::string_view s) { r.state_visits[i] = parse_u64(s); }});
    }
    c.push_back(count_column("moved_away_clean", &TrialRecord::moved_away_clean));
    c.push_back(count_column("still_active", &TrialRecord::still_active));
    return c;
  }();
  return cols;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

// A logical CSV record may span physical lines inside quotes.
bool read_record(std::istream& in, std::string& record) {
  record.clear();
  std::string line;
  bool open = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!record.empty() || open) record += '\n';
    record += line;
    for (char c : line) {
      if (c == '"') open = !open;
    }
    if (!open) return true;
  }
  if (open) throw FormatError("unterminated quoted field at end of file");
  return !record.empty();
}

}  // namespace

std::vector<std::string> trial_csv_header() {
  std::vector<std::string> names;
  for (const Column& c : columns()) names.push_back(c.name);
  return names;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  write_row(out, trial_csv_header());
  std::vector<std::string> fields;
  for (const TrialRecord& r : records) {
    fields.clear();
    for (const Column& c : columns()) fields.push_back(c.write(r));
    write_row(out, fields);
  }
}

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
  std::string record;
  if (!read_record(in, record)) throw FormatError("trial CSV is empty");
  if (csv_split(record) != trial_csv_header()) throw FormatError("trial CSV header does not match this version");

  std::vector<TrialRecord> records;
  std::size_t line = 1;
  while (read_record(in, record)) {
    ++line;
    if (record.empty()) continue;
    const std::vector<std::string> fields = csv_split(record);
    if (fields.size() != columns().size()) {
      throw FormatError("row " + std::to_string(line) + ": expected " + std::to_string(columns().size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    TrialRecord r;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      try {
        columns()[i].read(r, fields[i]);
      } catch (const FormatError& e) {
        throw FormatError("row " + std::to_string(line) + ", column " + columns()[i].name + ": " + e.what());
      }
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace wvc::io
