#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scanplan/geometry.hpp"
#include "scanplan/montecarlo.hpp"

namespace scanplan {

// Active sonar chain. Conventions:
//   - ranges in nautical miles; alpha is dB per nmi,
//   - frequency enters the absorption formula exactly as configured,
//   - cylinder dimensions and wavelength in feet; sound speed in mph,
//   - every term of the signal-excess sum is in dB (TS = 10 log10 of the
//     cylinder scattering expression),
//   - reverberation loss RL = rl_factor * SL, in dB.
// Negative infinity is a valid TS/SE value (broadside null) and compares
// below every detection threshold.

struct SonarParameters {
  double source_level_db = 250.0;
  double frequency = 10.0;
  double detection_index = 25.0;
  double pulse_duration_s = 100.0;
  double cylinder_length = 300.0;  // ft
  double cylinder_radius = 15.0;   // ft
  double aspect_angle_rad = 0.7853981633974483;
  double sound_speed_mph = 3355.0;
  double rl_factor = 0.1;

  /// Replace the frequency-derived absorption (dB/nmi) or wavelength (ft).
  /// With a wavelength override the frequency may be zero.
  std::optional<double> absorption_override;
  std::optional<double> wavelength_override_ft;

  double alpha() const;
  double lambda_ft() const;

  /// Throws InvalidArgument on any violated field invariant.
  void validate() const;
};

double absorption_coefficient(double frequency);

/// TL = 66 + 10 log10(R) + 2 alpha R. Throws DomainError for R <= 0.
double transmission_loss(double range_nmi, double alpha);

/// c / f with c converted from mph to ft/s; result in feet.
double wavelength(double sound_speed_mph, double frequency);

/// Finite-cylinder target strength in dB; -inf at exact broadside.
double target_strength(double length_ft, double radius_ft, double wavelength_ft, double aspect_rad);

double detection_threshold(double detection_index, double pulse_duration_s);

double signal_excess(const SonarParameters& params, double range_nmi);

struct SECurve {
  std::vector<double> ranges;
  std::vector<double> se_db;
};

SECurve se_curve(const SonarParameters& params, const LinearGrid& range_grid);

struct EffectiveRange {
  double range_nmi = 0.0;
  /// SE is still non-negative at the top of the bracket.
  bool range_limited = false;
};

/// Range where SE(R) falls to `target_db`, by bisection inside [r_lo, r_hi].
/// Returns nullopt when SE(r_lo) <= target_db; flags range_limited when
/// SE(r_hi) >= target_db.
std::optional<EffectiveRange> range_at_signal_excess(const SonarParameters& params,
                                                     double target_db, double r_lo, double r_hi,
                                                     double tol_db);

/// Zero crossing of SE(R) inside [r_lo, r_hi] by bisection.
/// Returns nullopt when SE(r_lo) <= 0 (no detection anywhere in the bracket).
std::optional<EffectiveRange> effective_range(const SonarParameters& params, double r_lo,
                                              double r_hi, double tol_db);

struct MissionRow {
  double range_nmi = 0.0;
  double se_db = 0.0;
  /// One estimate per entry of MissionReport::n_values, computed with eps = R.
  std::vector<DetectionEstimate> estimates;
};

struct MissionReport {
  SonarParameters params;
  SurveillanceRegion region{1.0};
  SurveillancePath path;
  std::vector<int> n_values;
  std::vector<MissionRow> rows;
};

/// For every grid range R: SE(R) and, per scan count, the uniform-prior
/// detection estimate with eps = R. Column n uses column_seed(config.seed, n)
/// exactly as sweep_detection does.
MissionReport mission_report(const SonarParameters& params, const SurveillancePath& path,
                             const SurveillanceRegion& region, const std::vector<int>& n_values,
                             const LinearGrid& range_grid, const MonteCarloConfig& config);

}  // namespace scanplan
