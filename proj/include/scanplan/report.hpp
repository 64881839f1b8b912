#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scanplan/analytic.hpp"
#include "scanplan/montecarlo.hpp"
#include "scanplan/sonar.hpp"

namespace scanplan {

/// Fixed 6-decimal rendering; infinities print as "inf" / "-inf".
std::string format_fixed(double value);

/// `epsilon,pd_N<k>,se_N<k>,...` with N ascending, one row per epsilon.
std::string emit_sweep_csv(const SweepGrid& grid);

/// `range,se_db,pd_N<k>,...` with N ascending, one row per range.
std::string emit_mission_csv(const MissionReport& report);

std::string emit_se_curve_csv(const SECurve& curve);

std::string emit_rule_of_thumb_csv(const RuleOfThumbCurve& curve);

// Reference experiments
// ---------------------
// The two published setups: a sweep over the two-lobe path a = 20 inside
// [-40, 40]^2, and the dipping-sonar mission with a = 16 inside [-200, 200]^2.

inline const std::vector<int> kReferenceScanCounts{5, 10, 15, 20, 25};

struct ReferenceSweep {
  SurveillancePath path = TwoLobeLemniscate{20.0};
  SurveillanceRegion region{40.0};
  LinearGrid epsilon{0.0, 30.0, 31};
  std::vector<int> scans = kReferenceScanCounts;
};

struct ReferenceMission {
  SurveillancePath path = TwoLobeLemniscate{16.0};
  SurveillanceRegion region{200.0};
  SonarParameters sonar{};
  std::vector<int> scans = kReferenceScanCounts;
  double bracket_lo = 1.0;
  double bracket_hi = 400.0;
};

/// Results from the mission setup that the anchor registry compares against.
struct SonarAnchors {
  SonarParameters params;
  double se_at_140 = 0.0;
  double se_at_50 = 0.0;
  double range_se0 = 0.0;   // SE(R) = 0
  double range_se60 = 0.0;  // SE(R) = 60 dB
  DetectionEstimate pd_n20_at_se0;
  DetectionEstimate pd_n5_at_se60;
  DetectionEstimate pd_n20_at_140;
  DetectionEstimate pd_n5_at_50;
};

struct ConcordanceBundle {
  std::optional<SweepGrid> sweep;
  std::optional<double> rule_hit_probability;
  std::optional<SonarAnchors> sonar;
  std::optional<double> path_amplitude;
  std::optional<double> path_arc_length;
};

/// Runs both reference setups with `config` trials/seed.
ConcordanceBundle reference_bundle(const MonteCarloConfig& config);

struct ConcordanceRow {
  std::string id;
  std::string source;
  std::string published;
  double published_value = 0.0;
  double computed = 0.0;
  std::optional<double> difference;  // nullopt = not comparable
  std::string notes;
};

struct ConcordanceReport {
  std::vector<ConcordanceRow> rows;
};

/// Fills the fixed ten-anchor registry (A1..A10). Throws InvalidArgument when
/// the bundle lacks a piece an anchor needs.
ConcordanceReport concordance(const ConcordanceBundle& bundle);

std::string emit_concordance_text(const ConcordanceReport& report);
std::string emit_concordance_json(const ConcordanceReport& report);

}  // namespace scanplan
