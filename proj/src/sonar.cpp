#include "scanplan/sonar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scanplan/errors.hpp"

namespace scanplan {

namespace {

constexpr double kMphToFtPerSec = 5280.0 / 3600.0;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Aspect angles this close to broadside are treated as exact broadside, where
// cos(pi/2) in floating point would otherwise leave a ~1e-33 residue.
constexpr double kBroadsideCosine = 1e-12;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

}  // namespace

void SonarParameters::validate() const {
  if (!std::isfinite(source_level_db)) throw InvalidArgument("source level must be finite");
  if (!(frequency >= 0.0) || !std::isfinite(frequency)) {
    throw InvalidArgument("frequency must be non-negative");
  }
  if (wavelength_override_ft) {
    require_positive(*wavelength_override_ft, "wavelength");
  } else if (frequency == 0.0) {
    throw InvalidArgument("zero frequency needs an explicit wavelength");
  }
  if (absorption_override && !std::isfinite(*absorption_override)) {
    throw InvalidArgument("absorption must be finite");
  }
  require_positive(detection_index, "detection index");
  require_positive(pulse_duration_s, "pulse duration");
  require_positive(cylinder_length, "cylinder length");
  require_positive(cylinder_radius, "cylinder radius");
  require_positive(sound_speed_mph, "sound speed");
  if (!std::isfinite(aspect_angle_rad)) throw InvalidArgument("aspect angle must be finite");
  if (!(rl_factor >= 0.0) || !std::isfinite(rl_factor)) {
    throw InvalidArgument("reverberation factor must be non-negative");
  }
}

double SonarParameters::alpha() const {
  return absorption_override ? *absorption_override : absorption_coefficient(frequency);
}

double SonarParameters::lambda_ft() const {
  return wavelength_override_ft ? *wavelength_override_ft : wavelength(sound_speed_mph, frequency);
}

double absorption_coefficient(double frequency) {
  if (!std::isfinite(frequency)) throw InvalidArgument("frequency must be finite");
  const double f2 = frequency * frequency;
  return 0.1 * f2 / (1.0 + f2) + 40.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double transmission_loss(double range_nmi, double alpha) {
  if (!(range_nmi > 0.0)) throw DomainError("transmission loss needs a positive range");
  return 66.0 + 10.0 * std::log10(range_nmi) + 2.0 * alpha * range_nmi;
}

double wavelength(double sound_speed_mph, double frequency) {
  require_positive(frequency, "frequency");
  require_positive(sound_speed_mph, "sound speed");
  return sound_speed_mph * kMphToFtPerSec / frequency;
}

double target_strength(double length_ft, double radius_ft, double wavelength_ft, double aspect_rad) {
  require_positive(length_ft, "cylinder length");
  require_positive(radius_ft, "cylinder radius");
  require_positive(wavelength_ft, "wavelength");

  double cos_psi = std::cos(aspect_rad);
  if (std::abs(cos_psi) < kBroadsideCosine) cos_psi = 0.0;
  const double beta = 2.0 * std::numbers::pi * length_ft / wavelength_ft * std::sin(aspect_rad);
  const double s = sinc(beta);
  const double linear =
      radius_ft * length_ft * length_ft / (2.0 * wavelength_ft) * s * s * cos_psi * cos_psi;
  if (linear == 0.0) return kNegInf;
  return 10.0 * std::log10(linear);
}

double detection_threshold(double detection_index, double pulse_duration_s) {
  require_positive(detection_index, "detection index");
  require_positive(pulse_duration_s, "pulse duration");
  return 10.0 * std::log10(detection_index / (2.0 * pulse_duration_s));
}

double signal_excess(const SonarParameters& params, double range_nmi) {
  params.validate();
  const double tl = transmission_loss(range_nmi, params.alpha());
  const double ts = target_strength(params.cylinder_length, params.cylinder_radius, params.lambda_ft(),
                                    params.aspect_angle_rad);
  if (std::isinf(ts)) return kNegInf;
  const double rl = params.rl_factor * params.source_level_db;
  const double dt = detection_threshold(params.detection_index, params.pulse_duration_s);
  return params.source_level_db - 2.0 * tl + ts - rl - dt;
}

SECurve se_curve(const SonarParameters& params, const LinearGrid& range_grid) {
  if (!(range_grid.min > 0.0) || !(range_grid.max > range_grid.min) || range_grid.steps < 2) {
    throw InvalidArgument("range grid needs 0 < min < max and at least 2 steps");
  }
  SECurve curve;
  curve.ranges = range_grid.values();
  curve.se_db.reserve(curve.ranges.size());
  for (double r : curve.ranges) curve.se_db.push_back(signal_excess(params, r));
  return curve;
}

std::optional<EffectiveRange> range_at_signal_excess(const SonarParameters& params,
                                                     double target_db, double r_lo, double r_hi,
                                                     double tol_db) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi)) {
    throw InvalidArgument("bracket needs 0 < r_lo < r_hi");
  }
  if (!(tol_db > 0.0)) throw InvalidArgument("tolerance must be positive");

  if (!std::isfinite(target_db)) throw InvalidArgument("target signal excess must be finite");
  const auto excess = [&](double r) { return signal_excess(params, r) - target_db; };

  if (!(excess(r_lo) > 0.0)) return std::nullopt;
  if (excess(r_hi) >= 0.0) return EffectiveRange{r_hi, true};

  double lo = r_lo;
  double hi = r_hi;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;  // bracket exhausted at double precision
    const double se = excess(mid);
    if (std::abs(se) < tol_db) break;
    if (se > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return EffectiveRange{mid, false};
}

std::optional<EffectiveRange> effective_range(const SonarParameters& params, double r_lo,
                                              double r_hi, double tol_db) {
  return range_at_signal_excess(params, 0.0, r_lo, r_hi, tol_db);
}

MissionReport mission_report(const SonarParameters& params, const SurveillancePath& path,
                             const SurveillanceRegion& region, const std::vector<int>& n_values,
                             const LinearGrid& range_grid, const MonteCarloConfig& config) {
  params.validate();
  validate_path(path);
  if (n_values.empty()) throw InvalidArgument("mission needs at least one scan count");
  if (!(range_grid.min > 0.0)) throw InvalidArgument("mission ranges must be positive");

  MissionReport report;
  report.params = params;
  report.region = region;
  report.path = path;
  report.n_values = n_values;
  std::sort(report.n_values.begin(), report.n_values.end());
  report.n_values.erase(std::unique(report.n_values.begin(), report.n_values.end()),
                        report.n_values.end());

  std::vector<ScanSchedule> schedules;
  for (int n : report.n_values) schedules.push_back(build_schedule(path, n));

  for (double r : range_grid.values()) {
    MissionRow row;
    row.range_nmi = r;
    row.se_db = signal_excess(params, r);
    for (std::size_t n = 0; n < schedules.size(); ++n) {
      MonteCarloConfig cell = config;
      cell.seed = column_seed(config.seed, n);
      row.estimates.push_back(
          estimate_detection_probability(schedules[n], r, region, UniformInRegion{}, cell));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace scanplan
