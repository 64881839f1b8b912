#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scanplan/geometry.hpp"
#include "scanplan/montecarlo.hpp"
#include "scanplan/sonar.hpp"

namespace scanplan {

// Flat `key = value` configuration.
//
//   # comment                       (also allowed after a value)
//   region.delta = 40
//   path.type = lemniscate          # or: waypoints
//   path.amplitude = 20             # lemniscate only
//   path.waypoints = -20, 0, 20, 0  # waypoints only: x1, y1, x2, y2, ...
//   mc.trials = 100000
//   mc.seed = 1
//   mc.threads = 0                  # optional, 0 = all cores
//   sweep.epsilon_min / sweep.epsilon_max / sweep.epsilon_steps / sweep.scans
//   rule_of_thumb.ratio_squared / rule_of_thumb.target / rule_of_thumb.n_max (optional)
//   sonar.source_level_db / frequency / detection_index / pulse_duration_s /
//     cylinder_length / cylinder_radius / aspect_angle_rad / sound_speed_mph /
//     rl_factor, plus optional sonar.absorption_db_per_nmi and sonar.wavelength_ft
//   mission.range_min / mission.range_max / mission.range_steps / mission.scans
//
// Each section is all-or-nothing: once any key of a section appears, all of
// its required keys must be present. Unknown and duplicate keys are errors.

struct SweepSettings {
  LinearGrid epsilon;
  std::vector<int> scans;
};

struct RuleOfThumbSettings {
  double ratio_squared = 0.0;
  double target = 0.0;
  std::optional<int> n_max;
};

struct MissionSettings {
  LinearGrid range;
  std::vector<int> scans;
};

struct MissionConfig {
  std::optional<SurveillanceRegion> region;
  std::optional<SurveillancePath> path;
  std::optional<MonteCarloConfig> mc;
  std::optional<SweepSettings> sweep;
  std::optional<RuleOfThumbSettings> rule_of_thumb;
  std::optional<SonarParameters> sonar;
  std::optional<MissionSettings> mission;
};

/// Throws ParseError (with a 1-based line, or 0 for end of input).
MissionConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const MissionConfig& config);

}  // namespace scanplan
