#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "scanplan/geometry.hpp"
#include "scanplan/rng.hpp"

namespace scanplan {

struct UniformInRegion {};

/// Test-only prior: the threat always sits at `point`.
struct FixedPoint {
  Point2D point;
};

using ThreatPrior = std::variant<UniformInRegion, FixedPoint>;

struct MonteCarloConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  /// Worker threads; 0 = hardware concurrency. Never affects results.
  unsigned threads = 0;
};

struct DetectionEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t detected = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  std::size_t n_scans = 0;
};

/// Trials are processed in fixed blocks; block b draws from
/// Engine(mix_seed(seed, b)).
inline constexpr std::uint64_t kTrialBlockSize = 4096;

/// Uniform grid {min, max, steps}; steps == 1 yields just `min`.
struct LinearGrid {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

struct SweepGrid {
  std::vector<double> epsilon_values;
  std::vector<int> n_values;
  /// estimates[e][n] for epsilon_values[e], n_values[n].
  std::vector<std::vector<DetectionEstimate>> estimates;
};

bool is_detected(const ScanSchedule& schedule, double epsilon, Point2D threat);

Point2D sample_threat(const ThreatPrior& prior, const SurveillanceRegion& region, Engine& engine);

/// Monte Carlo estimate of P(threat inside at least one scan disc).
/// epsilon == 0 returns exactly 0 without sampling.
DetectionEstimate estimate_detection_probability(const ScanSchedule& schedule, double epsilon,
                                                 const SurveillanceRegion& region,
                                                 const ThreatPrior& prior,
                                                 const MonteCarloConfig& config);

/// Seed used for every estimate in column `n_index` of a sweep or mission
/// report. All epsilon values in a column share threat samples, so each
/// column is exactly monotone in epsilon.
constexpr std::uint64_t column_seed(std::uint64_t seed, std::size_t n_index) noexcept {
  return mix_seed(seed, 0x5eedc01u + n_index);
}

SweepGrid sweep_detection(const SurveillancePath& path, const std::vector<int>& n_values,
                          const LinearGrid& epsilon_grid, const SurveillanceRegion& region,
                          const ThreatPrior& prior, const MonteCarloConfig& config);

}  // namespace scanplan
