#include "phimetric/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "phimetric/errors.hpp"

namespace phimetric {

namespace {

void require_positive_tol(double tol, const char* what) {
  if (!(tol > 0.0)) throw InputError(std::string(what) + ": tol must be positive");
}

void require_length(const Trace& trace, const char* what) {
  if (trace.size() < 2) throw InputError(std::string(what) + ": trace needs at least two points");
}

/// Smallest index whose whole suffix satisfies ok(n), or nullopt when the last
/// point already fails.
template <typename Pred>
std::optional<std::size_t> first_tail_index(std::size_t size, Pred ok) {
  std::optional<std::size_t> first;
  for (std::size_t n = size; n-- > 0;) {
    if (!ok(n)) break;
    first = n;
  }
  return first;
}

}  // namespace

Trace::Trace(PhiMetricSpace space, std::size_t origin) : space_(std::move(space)), origin_(origin) {}

Trace::Trace(PhiMetricSpace space, std::vector<Point> points, std::size_t origin)
    : space_(std::move(space)), origin_(origin) {
  points_.reserve(points.size());
  for (Point& p : points) append(std::move(p));
}

void Trace::append(Point p) {
  space_.require_dimension(p);
  if (!points_.empty()) steps_.push_back(space_.distance(points_.back(), p));
  points_.push_back(std::move(p));
}

TailResult converges_to(const Trace& trace, const Point& limit, double tol) {
  require_positive_tol(tol, "converges_to");
  require_length(trace, "converges_to");
  const auto& pts = trace.points();
  const auto first = first_tail_index(
      pts.size(), [&](std::size_t n) { return trace.space().distance(pts[n], limit) < tol; });
  if (!first) return {};
  return TailResult{true, trace.origin() + *first};
}

TailResult is_cauchy(const Trace& trace, double tol, kernels::Backend backend) {
  require_positive_tol(tol, "is_cauchy");
  require_length(trace, "is_cauchy");
  const std::size_t size = trace.size();
  const auto row_max = kernels::forward_row_max(trace.space(), trace.points(), backend);
  const auto first =
      first_tail_index(size, [&](std::size_t n) { return row_max[n] < tol; });
  if (!first) return {};
  const std::size_t needed = std::max<std::size_t>(2, (size + 1) / 2);
  if (size - *first < needed) return {};
  return TailResult{true, trace.origin() + *first};
}

BoundResult is_bounded(const Trace& trace, kernels::Backend backend) {
  if (trace.empty()) throw InputError("is_bounded: empty trace");
  return BoundResult{true, kernels::max_pairwise_distance(trace.space(), trace.points(), backend)};
}

TailResult distance_limit_check(const Trace& xs, const Trace& ys, const Point& x, const Point& y,
                                double tol) {
  require_positive_tol(tol, "distance_limit_check");
  if (xs.size() != ys.size()) {
    throw InputError("distance_limit_check: traces differ in length (" +
                     std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + ")");
  }
  if (!converges_to(xs, x, tol) || !converges_to(ys, y, tol)) {
    throw PreconditionError(
        "distance_limit_check: both traces must be consistent with convergence to their limits");
  }
  const PhiMetricSpace& space = xs.space();
  const double target = space.distance(x, y);
  const auto first = first_tail_index(xs.size(), [&](std::size_t n) {
    return std::abs(space.distance(xs.points()[n], ys.points()[n]) - target) < tol;
  });
  if (!first) return {};
  return TailResult{true, xs.origin() + *first};
}

double box_diameter(const PhiMetricSpace& space, const Box& box) {
  const auto corners = box.corners();
  double best = 0.0;
  for (std::size_t a = 0; a < corners.size(); ++a) {
    for (std::size_t b = a + 1; b < corners.size(); ++b) {
      best = std::max(best, space.distance(corners[a], corners[b]));
    }
  }
  return best;
}

NestedFamily::NestedFamily(PhiMetricSpace space, std::vector<Box> sets)
    : space_(std::move(space)), sets_(std::move(sets)) {
  if (sets_.empty()) throw FamilyInvalidError("nested family: no sets");
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    if (sets_[k].dimension() != space_.dimension()) {
      throw FamilyInvalidError("nested family: set " + std::to_string(k) +
                               " has the wrong dimension");
    }
    if (k > 0 && !sets_[k - 1].contains(sets_[k])) {
      throw FamilyInvalidError("nested family: set " + std::to_string(k) +
                               " is not contained in set " + std::to_string(k - 1));
    }
    diameters_.push_back(box_diameter(space_, sets_[k]));
  }
}

Point cantor_intersection(const NestedFamily& family, double tol) {
  require_positive_tol(tol, "cantor_intersection");
  const double last = family.diameters().back();
  if (!(last < tol)) {
    throw InconclusiveError("cantor_intersection: last recorded diameter " + std::to_string(last) +
                            " is not below tol");
  }
  Point p = family.sets().back().center();
  for (std::size_t k = 0; k < family.sets().size(); ++k) {
    if (!family.sets()[k].contains(p)) {
      throw FamilyInvalidError("cantor_intersection: candidate point leaves set " +
                               std::to_string(k));
    }
  }
  return p;
}

}  // namespace phimetric
