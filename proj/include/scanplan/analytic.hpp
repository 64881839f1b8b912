#pragma once

#include <vector>

namespace scanplan {

/// Single-scan hit probability q for a contained, non-overlapping disc:
/// q = pi * eps^2 / (4 * delta^2). Throws DomainError when q > 1.
double single_scan_hit_probability(double epsilon, double delta);

/// 1 - (1 - q)^n.
double analytic_detection_probability(double q, int n);

/// Smallest n >= 1 with analytic_detection_probability(q, n) >= p_target.
/// Throws UnreachableTarget for q == 0.
int min_scans(double p_target, double q);

/// Rule-of-thumb input. Every constructor funnels through the single-scan
/// hit probability q = pi * rho / 4 with rho = (eps / delta)^2.
class RuleOfThumbInput {
 public:
  static RuleOfThumbInput from_ratio_squared(double rho);
  static RuleOfThumbInput from_range(double epsilon, double delta);
  static RuleOfThumbInput from_hit_probability(double q);

  double hit_probability() const noexcept { return q_; }

 private:
  explicit RuleOfThumbInput(double q) : q_(q) {}
  double q_;
};

struct RuleOfThumbCurve {
  double q = 0.0;
  std::vector<int> n_values;
  std::vector<double> probabilities;
};

RuleOfThumbCurve rule_of_thumb_curve(const RuleOfThumbInput& input, int n_max);

}  // namespace scanplan
