#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "wvc/io.hpp"

namespace wvc::io {

namespace {

using nlohmann::json;

class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw FormatError(where() + "expected a JSON object");
  }

  void number(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw FormatError(where(key) + "expected a number");
      out = v->get<double>();
    }
  }

  void count(const char* key, std::size_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) throw FormatError(where(key) + "expected a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void flag(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) throw FormatError(where(key) + "expected true or false");
      out = v->get<bool>();
    }
  }

  void range(const char* key, double& lo, double& hi) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
        throw FormatError(where(key) + "expected [min, max]");
      }
      lo = (*v)[0].get<double>();
      hi = (*v)[1].get<double>();
    }
  }

  void mode(const char* key, Mode& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) throw FormatError(where(key) + "expected a string");
      auto parsed = parse_mode(v->get<std::string>());
      if (!parsed) throw FormatError(where(key) + "unknown mode '" + v->get<std::string>() + "'");
      out = *parsed;
    }
  }

  void mixture(const char* key, std::vector<SizeClass>& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array() || v->empty()) throw FormatError(where(key) + "expected a non-empty array");
    std::vector<SizeClass> classes;
    for (std::size_t i = 0; i < v->size(); ++i) {
      ObjectReader item((*v)[i], path_ + key + "[" + std::to_string(i) + "].");
      SizeClass sc{0.0, 0.0, 0.0};
      item.number("weight", sc.weight);
      item.number("lo", sc.lo);
      item.number("hi", sc.hi);
      item.finish();
      classes.push_back(sc);
    }
    out = std::move(classes);
  }

  template <class Fn>
  void object(const char* key, Fn&& fn) {
    if (const json* v = take(key)) {
      ObjectReader nested(*v, path_ + key + ".");
      fn(nested);
      nested.finish();
    }
  }

  void ignore(const char* key) { take(key); }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.contains(item.key())) throw FormatError("unknown config key '" + path_ + item.key() + "'");
    }
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  std::string where(const char* key = "") const { return "config key '" + path_ + key + "': "; }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

CorridorConfig config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what());
  }
  CorridorConfig c;
  ObjectReader r(doc, "");
  r.ignore("schema_version");
  r.number("road_length", c.road_length);
  r.number("time_step", c.time_step);
  r.number("radar_spacing", c.radar_spacing);
  r.number("radar_range", c.radar_range);
  r.number("magnetometer_spacing", c.magnetometer_spacing);
  r.number("awareness_range", c.awareness_range);
  r.number("boost_factor", c.boost_factor);
  r.number("persistence_window", c.persistence_window);
  r.number("arrival_rate", c.arrival_rate);
  r.number("kappa", c.kappa);
  r.number("size_scale", c.size_scale);
  r.count("vehicles_per_direction", c.vehicles_per_direction);
  r.mode("mode", c.mode);
  r.object("idm", [&](ObjectReader& o) {
    o.number("s0", c.idm.s0);
    o.number("T", c.idm.T);
    o.number("a_max", c.idm.a_max);
    o.number("b_conf", c.idm.b_conf);
    o.number("delta", c.idm.delta);
    o.number("a_em", c.idm.a_em);
    o.number("v_cruise", c.idm.v_cruise);
    o.number("v_caution", c.idm.v_caution);
    o.number("t_react", c.idm.t_react);
  });
  r.object("behaviour", [&](ObjectReader& o) {
    BehaviourParams& b = c.behaviour;
    o.range("forage_dwell", b.forage_dwell_min, b.forage_dwell_max);
    o.range("hesitate_dwell", b.hesitate_dwell_min, b.hesitate_dwell_max);
    o.number("p_cross_no_threat", b.p_cross_no_threat);
    o.number("p_frozen_threat", b.p_frozen_threat);
    o.number("p_flee_threat", b.p_flee_threat);
    o.number("p_freeze_crossing", b.p_freeze_crossing);
    o.number("v_approach", b.v_approach);
    o.number("v_cross", b.v_cross);
    o.number("v_flee", b.v_flee);
    o.mixture("size_mixture", b.size_mixture);
    o.number("t_threat", b.t_threat);
    o.number("v_threat", b.v_threat);
    o.number("frozen_max_dwell", b.frozen_max_dwell);
    o.number("interaction_radius", b.interaction_radius);
    o.flag("crossing_threat_freeze", b.crossing_threat_freeze);
  });
  r.object("geometry", [&](ObjectReader& o) {
    GeometryParams& g = c.geometry;
    o.number("lane_width", g.lane_width);
    o.count("lanes", g.lanes);
    o.number("vehicle_length", g.vehicle_length);
    o.number("vehicle_width", g.vehicle_width);
    o.number("animal_radius", g.animal_radius);
    o.number("spawn_offset", g.spawn_offset);
    o.number("exit_offset", g.exit_offset);
    o.number("radar_shoulder_offset", g.radar_shoulder_offset);
  });
  r.finish();
  return c;
}

CorridorConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string config_to_json(const CorridorConfig& c) {
  json mixture = json::array();
  for (const SizeClass& sc : c.behaviour.size_mixture) mixture.push_back({{"weight", sc.weight}, {"lo", sc.lo}, {"hi", sc.hi}});
  const BehaviourParams& b = c.behaviour;
  const GeometryParams& g = c.geometry;
  json doc = {
      {"schema_version", kSchemaVersion},
      {"road_length", c.road_length},
      {"time_step", c.time_step},
      {"radar_spacing", c.radar_spacing},
      {"radar_range", c.radar_range},
      {"magnetometer_spacing", c.magnetometer_spacing},
      {"awareness_range", c.awareness_range},
      {"boost_factor", c.boost_factor},
      {"persistence_window", c.persistence_window},
      {"arrival_rate", c.arrival_rate},
      {"kappa", c.kappa},
      {"size_scale", c.size_scale},
      {"vehicles_per_direction", c.vehicles_per_direction},
      {"mode", std::string(to_string(c.mode))},
      {"idm",
       {{"s0", c.idm.s0},
        {"T", c.idm.T},
        {"a_max", c.idm.a_max},
        {"b_conf", c.idm.b_conf},
        {"delta", c.idm.delta},
        {"a_em", c.idm.a_em},
        {"v_cruise", c.idm.v_cruise},
        {"v_caution", c.idm.v_caution},
        {"t_react", c.idm.t_react}}},
      {"behaviour",
       {{"forage_dwell", {b.forage_dwell_min, b.forage_dwell_max}},
        {"hesitate_dwell", {b.hesitate_dwell_min, b.hesitate_dwell_max}},
        {"p_cross_no_threat", b.p_cross_no_threat},
        {"p_frozen_threat", b.p_frozen_threat},
        {"p_flee_threat", b.p_flee_threat},
        {"p_freeze_crossing", b.p_freeze_crossing},
        {"v_approach", b.v_approach},
        {"v_cross", b.v_cross},
        {"v_flee", b.v_flee},
        {"size_mixture", mixture},
        {"t_threat", b.t_threat},
        {"v_threat", b.v_threat},
        {"frozen_max_dwell", b.frozen_max_dwell},
        {"interaction_radius", b.interaction_radius},
        {"crossing_threat_freeze", b.crossing_threat_freeze}}},
      {"geometry",
       {{"lane_width", g.lane_width},
        {"lanes", g.lanes},
        {"vehicle_length", g.vehicle_length},
        {"vehicle_width", g.vehicle_width},
        {"animal_radius", g.animal_radius},
        {"spawn_offset", g.spawn_offset},
        {"exit_offset", g.exit_offset},
        {"radar_shoulder_offset", g.radar_shoulder_offset}}},
  };
  return doc.dump(2);
}

}  // namespace wvc::io
