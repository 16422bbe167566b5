#include <cstring>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "phimetric/constructions.hpp"
#include "phimetric/kernels.hpp"

namespace phimetric {
namespace {

using kernels::Backend;

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<kernels::Triple> triples(const Box& box, std::size_t n, std::uint64_t seed) {
  const auto pts = testing::draw_points(seed, box, 3 * n);
  std::vector<kernels::Triple> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]});
  return out;
}

class KernelBackends : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelBackends, TriplesAndPhiAreBitwiseEqual) {
  const auto shipped = testing::shipped_spaces()[GetParam()];
  const Box box = *shipped.space.domain();
  const auto ts = triples(box, 2000, 40 + GetParam());
  const auto a = kernels::evaluate_triples(shipped.space, ts, Backend::kSerial);
  const auto b = kernels::evaluate_triples(shipped.space, ts, Backend::kOpenMP);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_TRUE(same_bits(a[i].d_xy, b[i].d_xy) && same_bits(a[i].d_xz, b[i].d_xz) &&
                same_bits(a[i].d_zy, b[i].d_zy) && same_bits(a[i].phi_xyz, b[i].phi_xyz) &&
                same_bits(a[i].phi_yxz, b[i].phi_yxz))
        << shipped.name << " triple " << i;
  }
  const auto pa = kernels::evaluate_phi(shipped.space, ts, Backend::kSerial);
  const auto pb = kernels::evaluate_phi(shipped.space, ts, Backend::kOpenMP);
  for (std::size_t i = 0; i < pa.size(); ++i) ASSERT_TRUE(same_bits(pa[i], pb[i]));
}

TEST_P(KernelBackends, DistanceKernelsAreBitwiseEqual) {
  const auto shipped = testing::shipped_spaces()[GetParam()];
  const auto pts = testing::draw_points(60 + GetParam(), *shipped.space.domain(), 150);
  EXPECT_EQ(kernels::distance_matrix(shipped.space, pts, Backend::kSerial),
            kernels::distance_matrix(shipped.space, pts, Backend::kOpenMP));
  EXPECT_TRUE(same_bits(kernels::max_pairwise_distance(shipped.space, pts, Backend::kSerial),
                        kernels::max_pairwise_distance(shipped.space, pts, Backend::kOpenMP)));
  const auto ra = kernels::forward_row_max(shipped.space, pts, Backend::kSerial);
  const auto rb = kernels::forward_row_max(shipped.space, pts, Backend::kOpenMP);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) ASSERT_TRUE(same_bits(ra[i], rb[i]));
  EXPECT_EQ(ra.back(), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Shipped, KernelBackends,
                         ::testing::Range<std::size_t>(0, testing::shipped_spaces().size()));

TEST(Kernels, MapPairsAgree) {
  const Box box = Box::cube(1, -10.0, 10.0);
  const PhiMetricSpace space = squared_euclidean(box);
  const kernels::MapFn half = [](const Point& p) { return Point{0.5 * std::sin(p[0])}; };
  const auto pts = testing::draw_points(7, Box::cube(1, -12.0, 12.0), 2000);
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) pairs.emplace_back(pts[i], pts[i + 1]);
  const auto a = kernels::evaluate_map_pairs(space, half, box, pairs, Backend::kSerial);
  const auto b = kernels::evaluate_map_pairs(space, half, box, pairs, Backend::kOpenMP);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_TRUE(same_bits(a[i].d_txty, b[i].d_txty) && same_bits(a[i].d_xy, b[i].d_xy));
    ASSERT_EQ(a[i].tx_in_domain, b[i].tx_in_domain);
  }
}

TEST(Kernels, PairBoundsAgree) {
  const PhiMetricSpace space = squared_euclidean(Box::cube(1, -1.0, 1.0));
  std::vector<Point> trace;
  for (int n = 0; n < 60; ++n) trace.push_back(Point{std::ldexp(1.0, -n)});
  const auto a = kernels::cauchy_pair_bounds(space, trace, 0.2, 1e-12, Backend::kSerial);
  const auto b = kernels::cauchy_pair_bounds(space, trace, 0.2, 1e-12, Backend::kOpenMP);
  EXPECT_EQ(a.pairs_checked, 60u * 59u / 2u);
  EXPECT_EQ(a.pairs_checked, b.pairs_checked);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].m, b.violations[i].m);
    EXPECT_EQ(a.violations[i].n, b.violations[i].n);
    EXPECT_TRUE(same_bits(a.violations[i].rhs, b.violations[i].rhs));
  }
}

TEST(Kernels, BallsContainedAgree) {
  const PhiMetricSpace space = squared_euclidean(Box::cube(2, 0.0, 1.0));
  const auto pts = testing::draw_points(9, Box::cube(2, 0.0, 1.0), 120);
  const auto dm = kernels::distance_matrix(space, pts, Backend::kSerial);
  std::vector<unsigned char> member(pts.size());
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    member[i] = pts[i][0] < 0.6 ? 1 : 0;
    centers.push_back(i);
  }
  const auto a = kernels::balls_contained(dm, centers, 0.01, member, Backend::kSerial);
  const auto b = kernels::balls_contained(dm, centers, 0.01, member, Backend::kOpenMP);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!member[i]) {
      EXPECT_EQ(a[i], 0);
    }
  }
}

TEST(Kernels, ForEachIndexRethrowsLowestIndex) {
  for (const Backend backend : {Backend::kSerial, Backend::kOpenMP}) {
    std::vector<int> hit(1000, 0);
    try {
      kernels::for_each_index(
          1000,
          [&](std::size_t i) {
            hit[i] = 1;
            if (i % 97 == 13) throw std::runtime_error(std::to_string(i));
          },
          backend);
      FAIL() << "no exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "13") << kernels::to_string(backend);
    }
    EXPECT_EQ(hit[13], 1);
  }
}

TEST(Kernels, EmptyInputs) {
  const PhiMetricSpace space = squared_euclidean(Box::cube(1, 0.0, 1.0));
  const std::vector<Point> none;
  EXPECT_EQ(kernels::max_pairwise_distance(space, none, Backend::kOpenMP), 0.0);
  EXPECT_TRUE(kernels::forward_row_max(space, none, Backend::kOpenMP).empty());
  EXPECT_EQ(kernels::distance_matrix(space, none, Backend::kOpenMP).size(), 0u);
}

}  // namespace
}  // namespace phimetric
