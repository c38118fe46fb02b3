#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wvc/awareness.hpp"
#include "wvc/corridor.hpp"

namespace wvc {

/// Raised when a configuration fails validation; carries every diagnostic.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Mutable state of one trial. Topology is fixed at construction.
struct World {
  CorridorConfig config;
  std::vector<RadarNode> radars;
  std::vector<MagnetometerSite> magnetometers;
  AwarenessState awareness;
  std::vector<VehicleState> vehicles;
  std::vector<AnimalState> animals;
  bool dms_on = false;
};

/// Throws ConfigError when validate_config reports anything.
World build_corridor(const CorridorConfig& config);

}  // namespace wvc
