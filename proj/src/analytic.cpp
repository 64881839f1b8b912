#include "scanplan/analytic.hpp"

#include <cmath>
#include <numbers>

#include "scanplan/errors.hpp"

namespace scanplan {

namespace {

void check_probability(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("hit probability must lie in [0, 1]");
}

double hit_probability_from_ratio(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("(eps/delta)^2 must be positive");
  const double q = std::numbers::pi * rho / 4.0;
  if (q > 1.0) {
    throw DomainError("detection disc larger than region (q > 1); use the Monte Carlo estimate");
  }
  return q;
}

}  // namespace

double single_scan_hit_probability(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  const double ratio = epsilon / delta;
  return hit_probability_from_ratio(ratio * ratio);
}

double analytic_detection_probability(double q, int n) {
  check_probability(q);
  if (n < 1) throw InvalidArgument("scan count must be at least 1");
  if (q == 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - q, n);
}

int min_scans(double p_target, double q) {
  if (!(p_target > 0.0 && p_target < 1.0)) throw InvalidArgument("target must lie in (0, 1)");
  check_probability(q);
  if (q == 0.0) throw UnreachableTarget("zero hit probability never reaches the target");
  if (q == 1.0) return 1;

  const double estimate = std::ceil(std::log1p(-p_target) / std::log1p(-q));
  if (!(estimate < 2.0e9)) throw UnreachableTarget("required scan count overflows");
  int n = std::max(1, static_cast<int>(estimate));
  // Guard the closed form against logarithm rounding.
  while (n > 1 && analytic_detection_probability(q, n - 1) >= p_target) --n;
  while (analytic_detection_probability(q, n) < p_target) ++n;
  return n;
}

RuleOfThumbInput RuleOfThumbInput::from_ratio_squared(double rho) {
  return RuleOfThumbInput(hit_probability_from_ratio(rho));
}

RuleOfThumbInput RuleOfThumbInput::from_range(double epsilon, double delta) {
  return RuleOfThumbInput(single_scan_hit_probability(epsilon, delta));
}

RuleOfThumbInput RuleOfThumbInput::from_hit_probability(double q) {
  check_probability(q);
  if (q == 0.0) throw InvalidArgument("hit probability must be positive");
  return RuleOfThumbInput(q);
}

RuleOfThumbCurve rule_of_thumb_curve(const RuleOfThumbInput& input, int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  RuleOfThumbCurve curve;
  curve.q = input.hit_probability();
  for (int n = 1; n <= n_max; ++n) {
    curve.n_values.push_back(n);
    curve.probabilities.push_back(analytic_detection_probability(curve.q, n));
  }
  return curve;
}

}  // namespace scanplan
