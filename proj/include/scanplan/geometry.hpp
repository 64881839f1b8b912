#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace scanplan {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// Closed square [-delta, delta] x [-delta, delta] holding the threat prior.
class SurveillanceRegion {
 public:
  explicit SurveillanceRegion(double delta);

  double delta() const noexcept { return delta_; }
  double area() const noexcept { return 4.0 * delta_ * delta_; }
  bool contains(Point2D p) const noexcept;

 private:
  double delta_;
};

/// Polar curve r = a cos(theta) drawn with |r|, giving two circular lobes of
/// diameter a tangent at the origin.
struct TwoLobeLemniscate {
  double amplitude = 0.0;
};

struct ExplicitWaypoints {
  std::vector<Point2D> points;
};

using SurveillancePath = std::variant<TwoLobeLemniscate, ExplicitWaypoints>;

/// Throws InvalidArgument if the path violates its variant invariants.
void validate_path(const SurveillancePath& path);

/// Ordered scan positions. Scan times are represented only by index order.
struct ScanSchedule {
  std::vector<Point2D> points;
  std::optional<SurveillancePath> source_path;

  std::size_t n_scans() const noexcept { return points.size(); }
};

/// Angles 2*pi*j/n for j = 1..n.
std::vector<double> scan_angles(int n);

Point2D path_point(const SurveillancePath& path, double theta);

ScanSchedule build_schedule(const SurveillancePath& path, int n);

/// Schedule from raw points (no source path); used by tests and fixed layouts.
ScanSchedule make_schedule(std::vector<Point2D> points);

double euclidean_distance(Point2D p, Point2D q) noexcept;

/// Arc length. Lemniscate: polyline through `steps` uniform samples of
/// theta in [0, 2*pi]. Waypoints: sum of segment lengths.
double path_arc_length(const SurveillancePath& path, int steps);

/// Center of grid cell (i, j) of a k x k midpoint grid over the region.
Point2D grid_cell_center(const SurveillanceRegion& region, int k, int i, int j) noexcept;

/// Fraction of k x k midpoint cells whose center lies strictly within epsilon
/// of some scan point. Rows are split over `threads` workers (0 = hardware
/// concurrency); the result does not depend on the thread count.
double coverage_fraction_grid(const ScanSchedule& schedule, double epsilon,
                              const SurveillanceRegion& region, int k, unsigned threads = 0);

/// Every scan disc lies inside the region: |x| + eps <= delta and |y| + eps <= delta.
bool containment_check(const ScanSchedule& schedule, double epsilon,
                       const SurveillanceRegion& region);

/// No two discs share interior points; tangency is allowed.
bool overlap_check(const ScanSchedule& schedule, double epsilon);

}  // namespace scanplan
