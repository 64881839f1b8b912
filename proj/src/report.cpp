#include "scanplan/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "scanplan/errors.hpp"

namespace scanplan {

std::string format_fixed(double value) {
  if (std::isinf(value)) return value < 0.0 ? "-inf" : "inf";
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.6f}", value);
}

std::string emit_sweep_csv(const SweepGrid& grid) {
  std::vector<std::size_t> order(grid.n_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid.n_values[a] < grid.n_values[b]; });

  std::string out = "epsilon";
  for (auto n : order) out += fmt::format(",pd_N{0},se_N{0}", grid.n_values[n]);
  out += '\n';
  for (std::size_t e = 0; e < grid.epsilon_values.size(); ++e) {
    out += format_fixed(grid.epsilon_values[e]);
    for (auto n : order) {
      const auto& est = grid.estimates[e][n];
      out += ',' + format_fixed(est.p_hat) + ',' + format_fixed(est.std_err);
    }
    out += '\n';
  }
  return out;
}

std::string emit_mission_csv(const MissionReport& report) {
  std::vector<std::size_t> order(report.n_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.n_values[a] < report.n_values[b];
  });

  std::string out = "range,se_db";
  for (auto n : order) out += fmt::format(",pd_N{}", report.n_values[n]);
  out += '\n';
  for (const auto& row : report.rows) {
    out += format_fixed(row.range_nmi) + ',' + format_fixed(row.se_db);
    for (auto n : order) out += ',' + format_fixed(row.estimates[n].p_hat);
    out += '\n';
  }
  return out;
}

std::string emit_se_curve_csv(const SECurve& curve) {
  std::string out = "range,se_db\n";
  for (std::size_t i = 0; i < curve.ranges.size(); ++i) {
    out += format_fixed(curve.ranges[i]) + ',' + format_fixed(curve.se_db[i]) + '\n';
  }
  return out;
}

std::string emit_rule_of_thumb_csv(const RuleOfThumbCurve& curve) {
  std::string out = "n,pd\n";
  for (std::size_t i = 0; i < curve.n_values.size(); ++i) {
    out += fmt::format("{},{}\n", curve.n_values[i], format_fixed(curve.probabilities[i]));
  }
  return out;
}

namespace {

constexpr double kRangeTolDb = 1e-9;

std::size_t column_of(const std::vector<int>& n_values, int n) {
  const auto it = std::find(n_values.begin(), n_values.end(), n);
  if (it == n_values.end()) {
    throw InvalidArgument(fmt::format("concordance bundle lacks scan count N={}", n));
  }
  return static_cast<std::size_t>(it - n_values.begin());
}

DetectionEstimate mission_estimate(const ReferenceMission& setup, int n, double epsilon,
                                   const MonteCarloConfig& config) {
  MonteCarloConfig cell = config;
  cell.seed = column_seed(config.seed, column_of(setup.scans, n));
  return estimate_detection_probability(build_schedule(setup.path, n), epsilon, setup.region,
                                        UniformInRegion{}, cell);
}

const DetectionEstimate& sweep_cell(const SweepGrid& grid, double epsilon, int n) {
  const auto col = column_of(grid.n_values, n);
  for (std::size_t e = 0; e < grid.epsilon_values.size(); ++e) {
    if (std::abs(grid.epsilon_values[e] - epsilon) < 1e-9) return grid.estimates[e][col];
  }
  throw InvalidArgument(fmt::format("concordance bundle lacks epsilon={}", epsilon));
}

template <typename T>
const T& need(const std::optional<T>& piece, const char* what) {
  if (!piece) throw InvalidArgument(fmt::format("concordance bundle is missing {}", what));
  return *piece;
}

ConcordanceRow probability_row(std::string id, std::string source, std::string published,
                               double published_value, bool claim_holds,
                               const DetectionEstimate& est, std::string setting) {
  ConcordanceRow row;
  row.id = std::move(id);
  row.source = std::move(source);
  row.published = std::move(published);
  row.published_value = published_value;
  row.computed = est.p_hat;
  row.difference = std::abs(est.p_hat - published_value);
  row.notes = fmt::format("Monte Carlo union-event estimate, {}, M={}, std err {:.6f}; {}",
                          setting, est.trials, est.std_err,
                          claim_holds ? "published claim holds"
                                      : "published claim not reproduced under the two-lobe path reading");
  return row;
}

}  // namespace

ConcordanceBundle reference_bundle(const MonteCarloConfig& config) {
  ConcordanceBundle bundle;

  const ReferenceSweep sweep;
  bundle.sweep = sweep_detection(sweep.path, sweep.scans, sweep.epsilon, sweep.region,
                                 UniformInRegion{}, config);

  bundle.rule_hit_probability = RuleOfThumbInput::from_ratio_squared(0.05).hit_probability();

  const ReferenceMission mission;
  SonarAnchors s;
  s.params = mission.sonar;
  s.se_at_140 = signal_excess(mission.sonar, 140.0);
  s.se_at_50 = signal_excess(mission.sonar, 50.0);
  const auto r0 = effective_range(mission.sonar, mission.bracket_lo, mission.bracket_hi, kRangeTolDb);
  const auto r60 = range_at_signal_excess(mission.sonar, 60.0, mission.bracket_lo,
                                          mission.bracket_hi, kRangeTolDb);
  if (!r0 || !r60) throw DomainError("reference sonar setup has no SE crossing in its bracket");
  s.range_se0 = r0->range_nmi;
  s.range_se60 = r60->range_nmi;
  s.pd_n20_at_se0 = mission_estimate(mission, 20, s.range_se0, config);
  s.pd_n5_at_se60 = mission_estimate(mission, 5, s.range_se60, config);
  s.pd_n20_at_140 = mission_estimate(mission, 20, 140.0, config);
  s.pd_n5_at_50 = mission_estimate(mission, 5, 50.0, config);
  bundle.sonar = s;

  const double amplitude = std::get<TwoLobeLemniscate>(mission.path).amplitude;
  bundle.path_amplitude = amplitude;
  bundle.path_arc_length = path_arc_length(mission.path, 1'000'000);
  return bundle;
}

ConcordanceReport concordance(const ConcordanceBundle& bundle) {
  const auto& grid = need(bundle.sweep, "the reference sweep");
  const double q = need(bundle.rule_hit_probability, "the rule-of-thumb hit probability");
  const auto& sonar = need(bundle.sonar, "the sonar anchors");
  const double amplitude = need(bundle.path_amplitude, "the mission path amplitude");
  const double arc = need(bundle.path_arc_length, "the mission path arc length");

  ConcordanceReport report;
  auto& rows = report.rows;
  const std::string sweep_setting = "two-lobe path a=20, delta=40";

  const auto& a1 = sweep_cell(grid, 10.0, 15);
  rows.push_back(probability_row("A1", "detection-vs-range sweep, eps=10, N=15", "at least 0.50",
                                 0.5, a1.p_hat >= 0.5, a1, sweep_setting));
  const auto& a2 = sweep_cell(grid, 10.0, 25);
  rows.push_back(probability_row("A2", "detection-vs-range sweep, eps=10, N=25", "below 0.70", 0.7,
                                 a2.p_hat < 0.7, a2, sweep_setting));
  const auto& a3 = sweep_cell(grid, 20.0, 5);
  rows.push_back(probability_row("A3", "detection-vs-range sweep, eps=20, N=5", "about 0.60", 0.6,
                                 std::abs(a3.p_hat - 0.6) <= 0.05, a3, sweep_setting));
  const auto& a4 = sweep_cell(grid, 20.0, 15);
  rows.push_back(probability_row("A4", "detection-vs-range sweep, eps=20, N=15", "at least 0.90",
                                 0.9, a4.p_hat >= 0.9, a4, sweep_setting));

  {
    const int n_min = min_scans(0.7, q);
    ConcordanceRow row{"A5", "rule-of-thumb curve, (eps/delta)^2=0.05, target 0.7",
                       "at least 30 scans", 30.0, static_cast<double>(n_min),
                       std::abs(n_min - 30.0), ""};
    row.notes = fmt::format(
        "exact inversion of 1-(1-q)^N with q={:.7f}: P(30)={:.5f} < 0.7 <= P(31)={:.5f}; "
        "published value read from the curve",
        q, analytic_detection_probability(q, 30), analytic_detection_probability(q, 31));
    rows.push_back(std::move(row));
  }

  {
    ConcordanceRow row{"A6", "signal-excess curve, R=140 nmi", "SE about 0 dB", 0.0,
                       sonar.se_at_140, std::abs(sonar.se_at_140), ""};
    row.notes = fmt::format(
        "nmi ranges, alpha in dB/nmi with f=10 as configured; under these conventions SE falls to "
        "0 dB at R={:.2f} nmi",
        sonar.range_se0);
    rows.push_back(std::move(row));
  }
  {
    ConcordanceRow row{"A7", "signal-excess curve, R=50 nmi", "SE about 60 dB", 60.0,
                       sonar.se_at_50, std::abs(sonar.se_at_50 - 60.0), ""};
    row.notes = fmt::format("under the same conventions SE equals 60 dB at R={:.2f} nmi",
                            sonar.range_se60);
    rows.push_back(std::move(row));
  }
  {
    const auto& est = sonar.pd_n20_at_se0;
    ConcordanceRow row{"A8", "P_d vs SE, N=20 at SE about 0 dB", "at least 0.70", 0.7, est.p_hat,
                       std::abs(est.p_hat - 0.7), ""};
    row.notes = fmt::format(
        "eps = R = {:.2f} nmi where SE = 0 (a=16, delta=200), std err {:.6f}; at the published "
        "range eps = 140 nmi P_d = {:.6f}",
        sonar.range_se0, est.std_err, sonar.pd_n20_at_140.p_hat);
    rows.push_back(std::move(row));
  }
  {
    const auto& est = sonar.pd_n5_at_se60;
    ConcordanceRow row{"A9", "P_d vs SE, N=5 at SE about 60 dB", "about 0.90", 0.9, est.p_hat,
                       std::abs(est.p_hat - 0.9), ""};
    row.notes = fmt::format(
        "eps = R = {:.2f} nmi where SE = 60 dB (a=16, delta=200), std err {:.6f}; at the "
        "published range eps = 50 nmi P_d = {:.6f}",
        sonar.range_se60, est.std_err, sonar.pd_n5_at_50.p_hat);
    rows.push_back(std::move(row));
  }
  {
    const double area = std::numbers::pi * amplitude * amplitude / 2.0;
    ConcordanceRow row{"A10", fmt::format("mission path length, a={}", amplitude), "about 402 nmi",
                       402.0, arc, std::abs(arc - 402.0), ""};
    row.notes = fmt::format(
        "true arc length of the two-lobe curve is 2*pi*a = {:.2f}; published value matches the "
        "enclosed area pi*a^2/2 = {:.2f}",
        2.0 * std::numbers::pi * amplitude, area);
    rows.push_back(std::move(row));
  }
  return report;
}

std::string emit_concordance_text(const ConcordanceReport& report) {
  std::string out;
  for (const auto& row : report.rows) {
    out += fmt::format("{:<4} {}\n", row.id, row.source);
    out += fmt::format("     published: {}\n", row.published);
    out += fmt::format("     computed:  {}   |diff|: {}\n", format_fixed(row.computed),
                       row.difference ? format_fixed(*row.difference) : "not comparable");
    out += fmt::format("     note: {}\n", row.notes);
  }
  return out;
}

std::string emit_concordance_json(const ConcordanceReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j;
    j["id"] = row.id;
    j["source"] = row.source;
    j["published"] = row.published;
    j["published_value"] = row.published_value;
    j["computed"] = row.computed;
    j["difference"] = row.difference ? nlohmann::ordered_json(*row.difference) : nlohmann::ordered_json("not comparable");
    j["notes"] = row.notes;
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + '\n';
}

}  // namespace scanplan
