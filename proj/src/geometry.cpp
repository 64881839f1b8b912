#include "scanplan/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scanplan/errors.hpp"
#include "scanplan/parallel.hpp"

namespace scanplan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

SurveillanceRegion::SurveillanceRegion(double delta) : delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("region half-width must be positive and finite");
  }
}

bool SurveillanceRegion::contains(Point2D p) const noexcept {
  return std::abs(p.x) <= delta_ && std::abs(p.y) <= delta_;
}

void validate_path(const SurveillancePath& path) {
  if (const auto* lem = std::get_if<TwoLobeLemniscate>(&path)) {
    if (!(lem->amplitude > 0.0) || !std::isfinite(lem->amplitude)) {
      throw InvalidArgument("lemniscate amplitude must be positive");
    }
    return;
  }
  const auto& wp = std::get<ExplicitWaypoints>(path);
  if (wp.points.empty()) throw InvalidArgument("waypoint path needs at least one point");
  for (const auto& p : wp.points) {
    if (!finite(p)) throw InvalidArgument("waypoint coordinates must be finite");
  }
}

std::vector<double> scan_angles(int n) {
  if (n < 1) throw InvalidArgument("scan count must be at least 1");
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) angles.push_back(kTwoPi * j / n);
  return angles;
}

Point2D path_point(const SurveillancePath& path, double theta) {
  const auto* lem = std::get_if<TwoLobeLemniscate>(&path);
  if (lem == nullptr) {
    throw UnsupportedOperation("path_point is defined only for the lemniscate path");
  }
  validate_path(path);
  const double r = std::abs(lem->amplitude * std::cos(theta));
  return {r * std::cos(theta), r * std::sin(theta)};
}

ScanSchedule build_schedule(const SurveillancePath& path, int n) {
  if (n < 1) throw InvalidArgument("scan count must be at least 1");
  validate_path(path);
  ScanSchedule schedule;
  schedule.source_path = path;
  if (const auto* wp = std::get_if<ExplicitWaypoints>(&path)) {
    if (wp->points.size() != static_cast<std::size_t>(n)) {
      throw InvalidArgument("scan count " + std::to_string(n) + " does not match " +
                            std::to_string(wp->points.size()) + " waypoints");
    }
    schedule.points = wp->points;
    return schedule;
  }
  schedule.points.reserve(static_cast<std::size_t>(n));
  for (double theta : scan_angles(n)) schedule.points.push_back(path_point(path, theta));
  return schedule;
}

ScanSchedule make_schedule(std::vector<Point2D> points) {
  if (points.empty()) throw InvalidArgument("schedule needs at least one point");
  for (const auto& p : points) {
    if (!finite(p)) throw InvalidArgument("scan coordinates must be finite");
  }
  return ScanSchedule{std::move(points), std::nullopt};
}

double euclidean_distance(Point2D p, Point2D q) noexcept { return std::hypot(p.x - q.x, p.y - q.y); }

double path_arc_length(const SurveillancePath& path, int steps) {
  if (steps < 2) throw InvalidArgument("arc length needs at least 2 steps");
  validate_path(path);
  double length = 0.0;
  if (const auto* wp = std::get_if<ExplicitWaypoints>(&path)) {
    for (std::size_t i = 1; i < wp->points.size(); ++i) {
      length += euclidean_distance(wp->points[i - 1], wp->points[i]);
    }
    return length;
  }
  Point2D prev = path_point(path, 0.0);
  for (int i = 1; i < steps; ++i) {
    const Point2D cur = path_point(path, kTwoPi * i / (steps - 1));
    length += euclidean_distance(prev, cur);
    prev = cur;
  }
  return length;
}

Point2D grid_cell_center(const SurveillanceRegion& region, int k, int i, int j) noexcept {
  const double delta = region.delta();
  const double cell = 2.0 * delta / k;
  return {-delta + (i + 0.5) * cell, -delta + (j + 0.5) * cell};
}

double coverage_fraction_grid(const ScanSchedule& schedule, double epsilon,
                              const SurveillanceRegion& region, int k, unsigned threads) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (k < 1) throw InvalidArgument("grid resolution must be at least 1");
  const double eps2 = epsilon * epsilon;
  const auto& pts = schedule.points;

  const std::uint64_t covered =
      parallel_count(static_cast<std::size_t>(k), threads, [&](std::size_t row) {
        std::uint64_t count = 0;
        for (int col = 0; col < k; ++col) {
          const Point2D c = grid_cell_center(region, k, col, static_cast<int>(row));
          for (const auto& p : pts) {
            const double dx = p.x - c.x;
            const double dy = p.y - c.y;
            if (dx * dx + dy * dy < eps2) {
              ++count;
              break;
            }
          }
        }
        return count;
      });
  return static_cast<double>(covered) / (static_cast<double>(k) * static_cast<double>(k));
}

bool containment_check(const ScanSchedule& schedule, double epsilon,
                       const SurveillanceRegion& region) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double delta = region.delta();
  for (const auto& p : schedule.points) {
    if (std::abs(p.x) + epsilon > delta || std::abs(p.y) + epsilon > delta) return false;
  }
  return true;
}

bool overlap_check(const ScanSchedule& schedule, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const auto& pts = schedule.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (euclidean_distance(pts[i], pts[j]) < 2.0 * epsilon) return false;
    }
  }
  return true;
}

}  // namespace scanplan
