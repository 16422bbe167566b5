#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phimetric/kernels.hpp"
#include "phimetric/point.hpp"
#include "phimetric/sampler.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

using IndexSet = std::vector<std::size_t>;  // sorted, unique

/// A finite ordered point set in a phi-metric space, with its distance matrix.
class PointCloud {
 public:
  /// Throws InputError when two distinct indices are at distance 0.
  PointCloud(PhiMetricSpace space, std::vector<Point> points,
             kernels::Backend backend = kernels::default_backend());

  const PhiMetricSpace& space() const noexcept { return space_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  double distance(std::size_t i, std::size_t j) const { return distances_(i, j); }
  const kernels::DistanceMatrix& distances() const noexcept { return distances_; }
  IndexSet all_indices() const;
  /// Smallest positive pairwise distance; nullopt for fewer than two points.
  std::optional<double> min_positive_distance() const;

 private:
  PhiMetricSpace space_;
  std::vector<Point> points_;
  kernels::DistanceMatrix distances_;
};

enum class BallKind { kOpen, kClosed };

struct Ball {
  Point center;
  double radius;
  BallKind kind = BallKind::kOpen;
};

/// Indices y with d(center, y) < r (open) or <= r (closed).
IndexSet ball_members(const PointCloud& cloud, const Ball& ball);

/// Whether the open ball B(a, r) is contained in B(a, s) as index sets.
bool ball_nesting_check(const PointCloud& cloud, const Point& a, double r, double s);

/// Largest pairwise distance in the subset; 0 for a singleton. Empty throws InputError.
double diameter(const PointCloud& cloud, std::span<const std::size_t> subset);

/// Greedy farthest-point selection of centers whose open eps-balls cover the
/// cloud. Starts from index 0; ties go to the lowest index.
IndexSet epsilon_net(const PointCloud& cloud, double eps);

/// An open cover of the cloud as index sets; list order is the well-ordering.
struct CoverSet {
  std::string id;
  IndexSet indices;
};

struct Cover {
  std::vector<CoverSet> sets;
};

/// Cover whose sets are cloud-restricted open balls, ids "U0", "U1", ...
Cover cover_from_balls(const PointCloud& cloud, std::span<const Ball> balls);

/// Scales every radius by `growth` (> 1) until the balls cover the cloud.
/// Throws InputError for an empty ball list.
std::vector<Ball> grow_until_cover(const PointCloud& cloud, std::vector<Ball> balls,
                                   double growth = 1.25);

/// `count` open balls centered at draws from `stream`, radii a uniform 5-35%
/// of the cloud diameter, then grown until they cover the cloud.
std::vector<Ball> random_ball_cover(const PointCloud& cloud, std::size_t count,
                                    PointStream& stream);

/// Throws InputError unless every cloud index lies in some set.
void require_cover(const PointCloud& cloud, const Cover& cover);

struct RefinementMember {
  std::size_t s;      // position of the refined set in the cover
  std::size_t level;  // i >= 1
  IndexSet indices;
  std::vector<std::size_t> centers;  // cloud indices of the candidates
};

struct RefinementFamily {
  std::vector<RefinementMember> members;  // ordered by (level, s)
  std::size_t i_max = 0;
  std::size_t levels_used = 0;
};

/// Which points condition (ii) excludes from the candidate set of V_{s,i}.
enum class ExclusionRule {
  kEarlierLevels,               // in some V_{t,j} with j < i
  kEarlierLevelsAndEarlierSets  // additionally in V_{t,i} with t before s
};

inline constexpr double kStoneContainmentFactor = 5.0;

struct RefinementOptions {
  /// Default: ceil(log2(factor / d_min)) + 2, d_min the smallest positive distance.
  std::optional<std::size_t> i_max;
  ExclusionRule exclusion = ExclusionRule::kEarlierLevels;
  /// Radius multiplier in condition (iii): B(c, factor * 2^-i) inside U_s.
  double containment_factor = kStoneContainmentFactor;
  kernels::Backend backend = kernels::default_backend();
};

std::size_t default_i_max(const PointCloud& cloud,
                          double containment_factor = kStoneContainmentFactor);

/// Level-by-level construction of V_{s,i} = union of B(c, 2^-i) over
/// candidates c with (i) s the first cover set containing c, (ii) c not yet
/// excluded, (iii) B(c, 5 * 2^-i) contained in U_s (on the cloud). Stops once
/// every point is covered. Throws InputError for a non-cover and
/// RefinementError (with the uncovered indices) when i_max runs out.
RefinementFamily stone_refinement(const PointCloud& cloud, const Cover& cover,
                                  const RefinementOptions& options = {});

enum class RefinementCheck { kRefinement, kCovering, kDiscreteness, kSeparation };

std::string to_string(RefinementCheck check);

struct RefinementViolation {
  RefinementCheck check;
  std::size_t level = 0;
  std::vector<std::size_t> members;  // positions in fam.members
  std::vector<std::size_t> points;   // witnessing cloud indices
  double value = 0.0;
  double bound = 0.0;
};

struct RefinementReport {
  std::map<RefinementCheck, bool> passed;
  std::vector<RefinementViolation> violations;
  bool all_pass() const;
  std::size_t count(RefinementCheck check) const;
};

/// (a) member inside its U_s; (b) union is the cloud; (c) every B(x, 2^-(i+1))
/// meets at most one level-i member; (d) distinct-s level-i members are at
/// least 2^-(i-1) apart.
RefinementReport verify_refinement(const PointCloud& cloud, const Cover& cover,
                                   const RefinementFamily& family);

/// B1(x, r) intersect B2(x, r) is inside B_prod(x, r^2) for every cloud point,
/// where the product distance is d1 * d2.
bool product_ball_inclusion_check(const PhiMetricSpace& first, const PhiMetricSpace& second,
                                  const Point& x, double r, std::span<const Point> cloud);

}  // namespace phimetric
