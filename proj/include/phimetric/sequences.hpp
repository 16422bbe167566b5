#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "phimetric/kernels.hpp"
#include "phimetric/point.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

/// A recorded sequence x_origin, x_origin+1, ... with cached step distances
/// d(x_n, x_n+1). Results are always about the recorded horizon: a passing
/// check means "consistent with convergence", not "converges".
class Trace {
 public:
  explicit Trace(PhiMetricSpace space, std::size_t origin = 0);
  Trace(PhiMetricSpace space, std::vector<Point> points, std::size_t origin = 0);

  void append(Point p);

  const PhiMetricSpace& space() const noexcept { return space_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<double>& step_distances() const noexcept { return steps_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  /// Label of points()[0].
  std::size_t origin() const noexcept { return origin_; }
  const Point& back() const { return points_.back(); }

 private:
  PhiMetricSpace space_;
  std::vector<Point> points_;
  std::vector<double> steps_;
  std::size_t origin_;
};

/// `holds` plus the smallest label N at which the tail condition starts.
struct TailResult {
  bool holds = false;
  std::optional<std::size_t> first_index;
  explicit operator bool() const noexcept { return holds; }
};

/// d(x_n, limit) < tol for every recorded n >= N. Throws InputError for
/// traces shorter than two points or tol <= 0.
TailResult converges_to(const Trace& trace, const Point& limit, double tol);

/// d(x_n, x_m) < tol for all recorded m, n >= N, scanning every pair. The tail
/// must hold at least half the trace (and two points), since a lone final
/// point is trivially Cauchy.
TailResult is_cauchy(const Trace& trace, double tol,
                     kernels::Backend backend = kernels::default_backend());

struct BoundResult {
  bool bounded = true;  // always true for finite traces
  double bound = 0.0;   // max pairwise distance
};

/// Throws InputError on an empty trace.
BoundResult is_bounded(const Trace& trace, kernels::Backend backend = kernels::default_backend());

/// |d(x_n, y_n) - d(x, y)| < tol along a tail. Throws InputError for traces
/// of different lengths and PreconditionError unless both traces converge to
/// their limits at tol.
TailResult distance_limit_check(const Trace& xs, const Trace& ys, const Point& x, const Point& y,
                                double tol);

/// F_1 containing F_2 containing ... of boxes, each with its diameter under the space.
class NestedFamily {
 public:
  /// Throws FamilyInvalidError when the boxes are not nested.
  NestedFamily(PhiMetricSpace space, std::vector<Box> sets);

  const std::vector<Box>& sets() const noexcept { return sets_; }
  const std::vector<double>& diameters() const noexcept { return diameters_; }
  const PhiMetricSpace& space() const noexcept { return space_; }

 private:
  PhiMetricSpace space_;
  std::vector<Box> sets_;
  std::vector<double> diameters_;
};

/// Diameter of a box under the space, taken over its corners (exact for
/// distances that grow with every coordinate gap).
double box_diameter(const PhiMetricSpace& space, const Box& box);

/// Center of the last set, checked to lie in every recorded set. Throws
/// InconclusiveError when the last diameter is not below tol and
/// FamilyInvalidError when the point escapes some set.
Point cantor_intersection(const NestedFamily& family, double tol);

}  // namespace phimetric
