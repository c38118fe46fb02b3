#include "wvc/world.hpp"

namespace wvc {

namespace {

std::string summarise(const std::vector<Diagnostic>& diagnostics) {
  std::string text = "invalid corridor config:";
  for (const Diagnostic& d : diagnostics) text += " " + d.field + " (" + d.message + ");";
  return text;
}

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::invalid_argument(summarise(diagnostics)), diagnostics_(std::move(diagnostics)) {}

World build_corridor(const CorridorConfig& config) {
  if (auto diagnostics = validate_config(config); !diagnostics.empty()) throw ConfigError(std::move(diagnostics));
  World world;
  world.config = config;
  world.radars = place_radars(config);
  world.magnetometers = place_magnetometers(config);
  world.awareness = AwarenessState::make(config.mode, world.radars.size());
  world.vehicles = place_vehicles(config);
  return world;
}

}  // namespace wvc
