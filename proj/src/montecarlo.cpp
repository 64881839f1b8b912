#include "scanplan/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "scanplan/errors.hpp"
#include "scanplan/parallel.hpp"

namespace scanplan {

std::vector<double> LinearGrid::values() const {
  if (steps < 1) throw InvalidArgument("grid needs at least one step");
  if (!std::isfinite(min) || !std::isfinite(max) || max < min) {
    throw InvalidArgument("grid bounds must be finite with min <= max");
  }
  if (steps == 1) return {min};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  }
  return out;
}

bool is_detected(const ScanSchedule& schedule, double epsilon, Point2D threat) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  return std::any_of(schedule.points.begin(), schedule.points.end(),
                     [&](Point2D p) { return euclidean_distance(p, threat) < epsilon; });
}

Point2D sample_threat(const ThreatPrior& prior, const SurveillanceRegion& region, Engine& engine) {
  if (const auto* fixed = std::get_if<FixedPoint>(&prior)) return fixed->point;
  const double d = region.delta();
  const double x = -d + 2.0 * d * uniform01(engine);
  const double y = -d + 2.0 * d * uniform01(engine);
  return {x, y};
}

DetectionEstimate estimate_detection_probability(const ScanSchedule& schedule, double epsilon,
                                                 const SurveillanceRegion& region,
                                                 const ThreatPrior& prior,
                                                 const MonteCarloConfig& config) {
  if (config.trials < 1) throw InvalidArgument("trial count must be at least 1");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be non-negative and finite");
  }
  if (schedule.points.empty()) throw InvalidArgument("schedule has no scan points");
  if (const auto* fixed = std::get_if<FixedPoint>(&prior); fixed && !region.contains(fixed->point)) {
    throw InvalidArgument("fixed threat point lies outside the region");
  }

  DetectionEstimate est;
  est.trials = config.trials;
  est.seed = config.seed;
  est.epsilon = epsilon;
  est.n_scans = schedule.n_scans();
  if (epsilon == 0.0) return est;

  // Squared-distance form of the strict test d < epsilon.
  const double eps2 = epsilon * epsilon;
  const auto& pts = schedule.points;
  const std::uint64_t blocks = (config.trials + kTrialBlockSize - 1) / kTrialBlockSize;

  est.detected = parallel_count(blocks, config.threads, [&](std::size_t b) {
    Engine engine(mix_seed(config.seed, b));
    const std::uint64_t begin = b * kTrialBlockSize;
    const std::uint64_t end = std::min(config.trials, begin + kTrialBlockSize);
    std::uint64_t hits = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const Point2D threat = sample_threat(prior, region, engine);
      for (const auto& p : pts) {
        const double dx = p.x - threat.x;
        const double dy = p.y - threat.y;
        if (dx * dx + dy * dy < eps2) {
          ++hits;
          break;
        }
      }
    }
    return hits;
  });

  const double m = static_cast<double>(config.trials);
  est.p_hat = static_cast<double>(est.detected) / m;
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / m);
  return est;
}

SweepGrid sweep_detection(const SurveillancePath& path, const std::vector<int>& n_values,
                          const LinearGrid& epsilon_grid, const SurveillanceRegion& region,
                          const ThreatPrior& prior, const MonteCarloConfig& config) {
  if (n_values.empty()) throw InvalidArgument("sweep needs at least one scan count");
  SweepGrid grid;
  grid.epsilon_values = epsilon_grid.values();
  if (grid.epsilon_values.front() < 0.0) throw InvalidArgument("epsilon values must be >= 0");

  grid.n_values = n_values;
  std::sort(grid.n_values.begin(), grid.n_values.end());
  grid.n_values.erase(std::unique(grid.n_values.begin(), grid.n_values.end()), grid.n_values.end());

  std::vector<ScanSchedule> schedules;
  schedules.reserve(grid.n_values.size());
  for (int n : grid.n_values) schedules.push_back(build_schedule(path, n));

  grid.estimates.resize(grid.epsilon_values.size());
  for (std::size_t e = 0; e < grid.epsilon_values.size(); ++e) {
    grid.estimates[e].reserve(schedules.size());
    for (std::size_t n = 0; n < schedules.size(); ++n) {
      MonteCarloConfig cell = config;
      cell.seed = column_seed(config.seed, n);
      grid.estimates[e].push_back(
          estimate_detection_probability(schedules[n], grid.epsilon_values[e], region, prior, cell));
    }
  }
  return grid;
}

}  // namespace scanplan
