#include "phimetric/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "phimetric/errors.hpp"

namespace phimetric {

namespace {

void require_positive_radius(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InputError(std::string(what) + ": radius must be positive and finite");
  }
}

std::vector<unsigned char> membership(std::size_t n, const IndexSet& indices) {
  std::vector<unsigned char> out(n, 0);
  for (std::size_t i : indices) out[i] = 1;
  return out;
}

double level_radius(std::size_t level) { return std::ldexp(1.0, -static_cast<int>(level)); }

}  // namespace

PointCloud::PointCloud(PhiMetricSpace space, std::vector<Point> points, kernels::Backend backend)
    : space_(std::move(space)), points_(std::move(points)) {
  for (const Point& p : points_) space_.require_dimension(p);
  distances_ = kernels::distance_matrix(space_, points_, backend);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (distances_(i, j) == 0.0) {
        throw InputError("point cloud: points " + std::to_string(i) + " and " +
                         std::to_string(j) + " are at distance 0");
      }
    }
  }
}

IndexSet PointCloud::all_indices() const {
  IndexSet out(points_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::optional<double> PointCloud::min_positive_distance() const {
  if (points_.size() < 2) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) best = std::min(best, distances_(i, j));
  }
  return best;
}

IndexSet ball_members(const PointCloud& cloud, const Ball& ball) {
  require_positive_radius(ball.radius, "ball_members");
  IndexSet out;
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    const double d = cloud.space().distance(ball.center, cloud[j]);
    const bool inside = ball.kind == BallKind::kOpen ? d < ball.radius : d <= ball.radius;
    if (inside) out.push_back(j);
  }
  return out;
}

bool ball_nesting_check(const PointCloud& cloud, const Point& a, double r, double s) {
  require_positive_radius(r, "ball_nesting_check");
  require_positive_radius(s, "ball_nesting_check");
  const IndexSet inner = ball_members(cloud, Ball{a, r});
  const IndexSet outer = ball_members(cloud, Ball{a, s});
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

double diameter(const PointCloud& cloud, std::span<const std::size_t> subset) {
  if (subset.empty()) throw InputError("diameter: empty subset");
  double best = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      best = std::max(best, cloud.distance(subset[a], subset[b]));
    }
  }
  return best;
}

IndexSet epsilon_net(const PointCloud& cloud, double eps) {
  if (!(eps > 0.0)) throw InputError("epsilon_net: eps must be positive");
  IndexSet centers;
  if (cloud.size() == 0) return centers;
  std::vector<double> gap(cloud.size(), std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (true) {
    centers.push_back(next);
    for (std::size_t j = 0; j < cloud.size(); ++j) gap[j] = std::min(gap[j], cloud.distance(next, j));
    std::size_t far = 0;
    for (std::size_t j = 1; j < cloud.size(); ++j) {
      if (gap[j] > gap[far]) far = j;
    }
    if (gap[far] < eps) break;
    next = far;
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

Cover cover_from_balls(const PointCloud& cloud, std::span<const Ball> balls) {
  Cover cover;
  for (std::size_t k = 0; k < balls.size(); ++k) {
    cover.sets.push_back(CoverSet{"U" + std::to_string(k), ball_members(cloud, balls[k])});
  }
  return cover;
}

std::vector<Ball> grow_until_cover(const PointCloud& cloud, std::vector<Ball> balls,
                                   double growth) {
  if (balls.empty()) throw InputError("grow_until_cover: no balls");
  if (!(growth > 1.0)) throw InputError("grow_until_cover: growth must exceed 1");
  std::vector<unsigned char> covered(cloud.size(), 0);
  std::size_t missing = cloud.size();
  while (true) {
    for (const Ball& b : balls) {
      for (std::size_t j : ball_members(cloud, b)) {
        if (!covered[j]) {
          covered[j] = 1;
          --missing;
        }
      }
    }
    if (missing == 0) return balls;
    for (Ball& b : balls) b.radius *= growth;
  }
}

std::vector<Ball> random_ball_cover(const PointCloud& cloud, std::size_t count,
                                    PointStream& stream) {
  if (count == 0) throw InputError("random_ball_cover: count must be positive");
  double scale = cloud.size() > 1 ? diameter(cloud, cloud.all_indices()) : 1.0;
  if (!(scale > 0.0)) scale = 1.0;
  std::vector<Ball> balls;
  for (std::size_t k = 0; k < count; ++k) {
    Point c = stream.next();
    balls.push_back(Ball{std::move(c), scale * (0.05 + 0.3 * stream.uniform())});
  }
  return grow_until_cover(cloud, std::move(balls));
}

void require_cover(const PointCloud& cloud, const Cover& cover) {
  std::vector<unsigned char> seen(cloud.size(), 0);
  for (const CoverSet& set : cover.sets) {
    for (std::size_t i : set.indices) {
      if (i >= cloud.size()) {
        throw InputError("cover set '" + set.id + "' holds index " + std::to_string(i) +
                         " outside the cloud");
      }
      seen[i] = 1;
    }
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!seen[i]) throw InputError("cover misses cloud index " + std::to_string(i));
  }
}

std::size_t default_i_max(const PointCloud& cloud, double containment_factor) {
  const auto d_min = cloud.min_positive_distance();
  if (!d_min) return 3;
  const double levels = std::ceil(std::log2(containment_factor / *d_min));
  return static_cast<std::size_t>(std::max(levels, 1.0)) + 2;
}

RefinementFamily stone_refinement(const PointCloud& cloud, const Cover& cover,
                                  const RefinementOptions& options) {
  require_cover(cloud, cover);
  const std::size_t n = cloud.size();
  RefinementFamily family;
  if (!(options.containment_factor >= 1.0)) {
    throw InputError("stone_refinement: containment factor must be at least 1");
  }
  family.i_max = options.i_max ? *options.i_max : default_i_max(cloud, options.containment_factor);
  if (n == 0) return family;

  std::vector<std::size_t> first_set(n, cover.sets.size());
  for (std::size_t s = cover.sets.size(); s-- > 0;) {
    for (std::size_t i : cover.sets[s].indices) first_set[i] = s;
  }
  std::vector<std::vector<unsigned char>> in_set;
  in_set.reserve(cover.sets.size());
  for (const CoverSet& set : cover.sets) in_set.push_back(membership(n, set.indices));

  std::vector<unsigned char> covered(n, 0);
  std::size_t covered_count = 0;
  for (std::size_t level = 1; level <= family.i_max && covered_count < n; ++level) {
    const double r = level_radius(level);
    std::vector<unsigned char> excluded = covered;
    std::vector<std::size_t> level_members;
    for (std::size_t s = 0; s < cover.sets.size(); ++s) {
      std::vector<std::size_t> pool;
      for (std::size_t c = 0; c < n; ++c) {
        if (first_set[c] == s && !excluded[c]) pool.push_back(c);
      }
      if (pool.empty()) continue;
      const auto contained =
          kernels::balls_contained(cloud.distances(), pool,
                                   options.containment_factor * r, in_set[s], options.backend);
      RefinementMember member{s, level, {}, {}};
      for (std::size_t k = 0; k < pool.size(); ++k) {
        if (contained[k]) member.centers.push_back(pool[k]);
      }
      if (member.centers.empty()) continue;
      std::vector<unsigned char> in_member(n, 0);
      for (std::size_t c : member.centers) {
        const auto row = cloud.distances().row(c);
        for (std::size_t j = 0; j < n; ++j) {
          if (row[j] < r) in_member[j] = 1;
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (in_member[j]) member.indices.push_back(j);
      }
      if (options.exclusion == ExclusionRule::kEarlierLevelsAndEarlierSets) {
        for (std::size_t j : member.indices) excluded[j] = 1;
      }
      level_members.push_back(family.members.size());
      family.members.push_back(std::move(member));
    }
    for (std::size_t m : level_members) {
      for (std::size_t j : family.members[m].indices) {
        if (!covered[j]) {
          covered[j] = 1;
          ++covered_count;
        }
      }
    }
    if (!level_members.empty()) family.levels_used = level;
  }

  if (covered_count < n) {
    std::vector<std::size_t> uncovered;
    for (std::size_t j = 0; j < n; ++j) {
      if (!covered[j]) uncovered.push_back(j);
    }
    const auto d_min = cloud.min_positive_distance();
    throw RefinementError("stone_refinement: " + std::to_string(uncovered.size()) +
                              " points uncovered after i_max = " + std::to_string(family.i_max) +
                              " levels (smallest positive distance " +
                              std::to_string(d_min.value_or(0.0)) + ")",
                          std::move(uncovered));
  }
  return family;
}

std::string to_string(RefinementCheck check) {
  switch (check) {
    case RefinementCheck::kRefinement: return "refinement";
    case RefinementCheck::kCovering: return "covering";
    case RefinementCheck::kDiscreteness: return "discreteness";
    case RefinementCheck::kSeparation: return "separation";
  }
  return "unknown";
}

bool RefinementReport::all_pass() const {
  return std::all_of(passed.begin(), passed.end(), [](const auto& kv) { return kv.second; });
}

std::size_t RefinementReport::count(RefinementCheck check) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(),
      [check](const RefinementViolation& v) { return v.check == check; }));
}

RefinementReport verify_refinement(const PointCloud& cloud, const Cover& cover,
                                   const RefinementFamily& family) {
  const std::size_t n = cloud.size();
  RefinementReport report;
  auto add = [&report](RefinementViolation v) { report.violations.push_back(std::move(v)); };

  // (a) every member lies inside the cover set it refines
  for (std::size_t m = 0; m < family.members.size(); ++m) {
    const RefinementMember& member = family.members[m];
    if (member.s >= cover.sets.size()) {
      add({RefinementCheck::kRefinement, member.level, {m}, {}, 0.0, 0.0});
      continue;
    }
    const auto in_set = membership(n, cover.sets[member.s].indices);
    for (std::size_t j : member.indices) {
      if (j >= n || !in_set[j]) {
        add({RefinementCheck::kRefinement, member.level, {m}, {j}, 0.0, 0.0});
        break;
      }
    }
  }

  // (b) the members cover the cloud
  std::vector<unsigned char> covered(n, 0);
  for (const RefinementMember& member : family.members) {
    for (std::size_t j : member.indices) {
      if (j < n) covered[j] = 1;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!covered[j]) add({RefinementCheck::kCovering, 0, {}, {j}, 0.0, 0.0});
  }

  std::map<std::size_t, std::vector<std::size_t>> by_level;
  for (std::size_t m = 0; m < family.members.size(); ++m) {
    by_level[family.members[m].level].push_back(m);
  }

  for (const auto& [level, members] : by_level) {
    // (c) each B(x, 2^-(i+1)) meets at most one level-i member
    const double small = level_radius(level + 1);
    std::vector<std::vector<unsigned char>> in_member;
    for (std::size_t m : members) in_member.push_back(membership(n, family.members[m].indices));
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> met;
      std::vector<std::size_t> via;
      for (std::size_t k = 0; k < members.size(); ++k) {
        for (std::size_t y = 0; y < n; ++y) {
          if (in_member[k][y] && cloud.distance(x, y) < small) {
            met.push_back(members[k]);
            via.push_back(y);
            break;
          }
        }
      }
      if (met.size() > 1) {
        std::vector<std::size_t> pts{x};
        pts.insert(pts.end(), via.begin(), via.end());
        add({RefinementCheck::kDiscreteness, level, met, std::move(pts),
             static_cast<double>(met.size()), 1.0});
      }
    }

    // (d) members for distinct s at this level are at least 2^-(i-1) apart
    const double bound = level_radius(level - 1);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const RefinementMember& ma = family.members[members[a]];
        const RefinementMember& mb = family.members[members[b]];
        if (ma.s == mb.s) continue;
        double gap = std::numeric_limits<double>::infinity();
        std::size_t wa = 0;
        std::size_t wb = 0;
        for (std::size_t p : ma.indices) {
          for (std::size_t q : mb.indices) {
            if (p == q) {
              if (gap > 0.0) {
                gap = 0.0;
                wa = p;
                wb = q;
              }
              continue;
            }
            const double d = cloud.distance(p, q);
            if (d < gap) {
              gap = d;
              wa = p;
              wb = q;
            }
          }
        }
        if (gap < bound) {
          add({RefinementCheck::kSeparation, level, {members[a], members[b]}, {wa, wb}, gap,
               bound});
        }
      }
    }
  }

  for (RefinementCheck c : {RefinementCheck::kRefinement, RefinementCheck::kCovering,
                            RefinementCheck::kDiscreteness, RefinementCheck::kSeparation}) {
    report.passed[c] = report.count(c) == 0;
  }
  return report;
}

bool product_ball_inclusion_check(const PhiMetricSpace& first, const PhiMetricSpace& second,
                                  const Point& x, double r, std::span<const Point> cloud) {
  require_positive_radius(r, "product_ball_inclusion_check");
  for (const Point& y : cloud) {
    const double d1 = first.distance(x, y);
    const double d2 = second.distance(x, y);
    if (d1 < r && d2 < r && !(d1 * d2 < r * r)) return false;
  }
  return true;
}

}  // namespace phimetric
