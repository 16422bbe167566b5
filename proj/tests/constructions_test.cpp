#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "phimetric/axioms.hpp"
#include "phimetric/constructions.hpp"
#include "phimetric/errors.hpp"

namespace phimetric {
namespace {

using testing::seeded;

const Box kLine = Box::cube(1, -10.0, 10.0);
const Box kPlane = Box::cube(2, -1.0, 1.0);

TEST(FromMetricSquared, Examples) {
  const auto s = squared_euclidean(kLine);
  EXPECT_EQ(s.distance(Point{0.0}, Point{3.0}), 9.0);
  EXPECT_EQ(s.phi(Point{0.0}, Point{3.0}, Point{0.0}), 0.0);
  const Point x{0.0}, y{2.0}, z{1.0};
  EXPECT_EQ(s.distance(x, y), 4.0);
  EXPECT_EQ(s.distance(x, z) + s.distance(z, y) + s.phi(x, y, z), 4.0);
}

TEST(FromMetricSquared, NeedsDiameter) {
  EXPECT_THROW(from_metric_squared(euclidean_metric(), 1, std::nullopt), ConfigurationError);
  const auto hinted = from_metric_squared(euclidean_metric(), 1, std::nullopt, 20.0);
  EXPECT_DOUBLE_EQ(hinted.modulus(0.01), 1e-4 / 1600.0);
  EXPECT_EQ(hinted.modulus(1e6), 1.0);
}

TEST(Square, Examples) {
  const auto sq = square(squared_euclidean(kLine));
  EXPECT_EQ(sq.distance(Point{0.0}, Point{2.0}), 16.0);
  EXPECT_EQ(sq.phi(Point{1.0}, Point{-3.0}, Point{1.0}), 0.0);
  EXPECT_FALSE(sq.has_analytic_modulus());
}

TEST(Square, TriangleHoldsOnRandomTriples) {
  const Box box = Box::cube(1, -5.0, 5.0);
  const auto sq = square(squared_euclidean(box));
  PointStream stream(seeded(31), box);
  for (int i = 0; i < 10000; ++i) {
    const Point x = stream.next(), y = stream.next(), z = stream.next();
    const double rhs = sq.distance(x, z) + sq.distance(z, y) + sq.phi(x, y, z);
    ASSERT_LE(sq.distance(x, y), rhs + 1e-9 * std::max(1.0, rhs));
  }
}

TEST(Product, Examples) {
  const auto d = squared_euclidean(kLine);
  const std::vector<PhiMetricSpace> three{d, d, d};
  EXPECT_EQ(product(three).distance(Point{0.0}, Point{2.0}), 64.0);
  EXPECT_THROW(product(std::span<const PhiMetricSpace>{}), InputError);
  const std::vector<PhiMetricSpace> mismatched{d, squared_euclidean(Box::cube(1, 0.0, 1.0))};
  EXPECT_THROW(product(mismatched), DomainError);
}

TEST(Product, TwoCopiesMatchSquare) {
  const auto d = squared_euclidean(kLine);
  const std::vector<PhiMetricSpace> two{d, d};
  const auto p = product(two);
  const auto q = square(d);
  PointStream stream(seeded(5), kLine);
  for (int i = 0; i < 1000; ++i) {
    const Point x = stream.next(), y = stream.next();
    ASSERT_EQ(p.distance(x, y), q.distance(x, y));
  }
}

TEST(Product, DiscreteIsIdentityForEveryShippedSpace) {
  for (const auto& [name, d] : testing::shipped_spaces()) {
    const std::vector<PhiMetricSpace> pair{d, discrete_space(d.dimension(), d.domain())};
    const auto p = product(pair);
    PointStream stream(seeded(41), *d.domain());
    for (int i = 0; i < 2000; ++i) {
      const Point x = stream.next(), y = stream.next();
      ASSERT_EQ(p.distance(x, y), d.distance(x, y)) << name;
    }
  }
}

TEST(Product, DiscreteIsIdempotent) {
  const auto disc = discrete_space(2, kPlane);
  const std::vector<PhiMetricSpace> pair{disc, disc};
  const auto p = product(pair);
  PointStream stream(seeded(2), kPlane);
  for (int i = 0; i < 200; ++i) {
    const Point x = stream.next(), y = stream.next();
    ASSERT_EQ(p.distance(x, y), disc.distance(x, y));
    ASSERT_EQ(p.distance(x, x), 0.0);
  }
}

TEST(Product, CommutativeAndAssociativeOnDistances) {
  const auto a = squared_euclidean(kPlane);
  const auto b = from_b_metric(power_b_metric(1.5), 2, kPlane);
  const auto c = from_s_metric(standard_s_metric(), 2, kPlane);
  const std::vector<PhiMetricSpace> ab{a, b}, ba{b, a};
  const auto p_ab = product(ab);
  const auto p_ba = product(ba);
  const std::vector<PhiMetricSpace> ab_c{p_ab, c}, a_bc{a, product(std::vector<PhiMetricSpace>{b, c})};
  const std::vector<PhiMetricSpace> flat{a, b, c};
  PointStream stream(seeded(77), kPlane);
  for (int i = 0; i < 2000; ++i) {
    const Point x = stream.next(), y = stream.next();
    ASSERT_EQ(p_ab.distance(x, y), p_ba.distance(x, y));
    ASSERT_EQ(product(ab_c).distance(x, y), product(flat).distance(x, y));
    // (ab)c and a(bc) differ only in multiplication order
    ASSERT_NEAR(product(ab_c).distance(x, y), product(a_bc).distance(x, y),
                1e-15 * std::max(1.0, product(flat).distance(x, y)));
  }
}

TEST(FromSMetric, Examples) {
  const auto s = from_s_metric(standard_s_metric(), 1, kLine);
  EXPECT_EQ(s.distance(Point{0.0}, Point{1.0}), 2.0);
  EXPECT_EQ(s.modulus(1.0), 0.5);
  EXPECT_EQ(s.phi(Point{0.0}, Point{1.0}, Point{0.0}), 0.0);
  EXPECT_EQ(s.modulus_scope(), ModulusScope::kBothEndpoints);
}

TEST(FromSMetric, AsymmetricSpecIsRejected) {
  const SMetricSpec lopsided{"lopsided", [](const Point& x, const Point& y, const Point& z) {
                               return std::abs(x[0] - z[0]) + 2.0 * std::abs(y[0] - z[0]) +
                                      (x[0] < z[0] ? 1.0 : 0.0) * std::abs(x[0] - z[0]);
                             }};
  EXPECT_THROW(from_s_metric(lopsided, 1, kLine), ConfigurationError);
}

TEST(FromBMetric, Examples) {
  const auto b2 = from_b_metric(power_b_metric(2.0), 1, kLine);
  EXPECT_EQ(b2.modulus(1.0), 0.25);
  const auto sq = squared_euclidean(kLine);
  PointStream stream(seeded(9), kLine);
  for (int i = 0; i < 1000; ++i) {
    const Point x = stream.next(), y = stream.next(), z = stream.next();
    ASSERT_EQ(b2.distance(x, y), sq.distance(x, y));
    ASSERT_EQ(b2.phi(x, y, z), sq.distance(x, z) + sq.distance(y, z));
  }
  const auto metric = from_b_metric(power_b_metric(1.0), 1, kLine);
  for (int i = 0; i < 100; ++i) {
    const Point x = stream.next(), y = stream.next(), z = stream.next();
    ASSERT_EQ(metric.phi(x, y, z), 0.0);
  }
  EXPECT_THROW(from_b_metric(BMetricSpec{"k<1", sq.distance_fn(), 0.5}, 1, kLine), InputError);
}

TEST(FromBMetric, RouteComparisonWithSquaredMetric) {
  const auto via_b = from_b_metric(power_b_metric(2.0), 2, kPlane);
  const auto via_sq = squared_euclidean(kPlane);
  PointStream stream(seeded(10), kPlane);
  bool phi_differs = false;
  for (int i = 0; i < 2000; ++i) {
    const Point x = stream.next(), y = stream.next(), z = stream.next();
    ASSERT_EQ(via_b.distance(x, y), via_sq.distance(x, y));
    phi_differs = phi_differs || via_b.phi(x, y, z) != via_sq.phi(x, y, z);
  }
  EXPECT_TRUE(phi_differs);
  EXPECT_TRUE(check_axioms(via_b, seeded(3, 5000)).all_pass());
  EXPECT_TRUE(check_axioms(via_sq, seeded(3, 5000)).all_pass());
}

TEST(FromStrongBMetric, Examples) {
  const auto k3 = from_strong_b_metric(hinged_strong_b_metric(3.0), 1, kLine);
  EXPECT_DOUBLE_EQ(k3.modulus(1.0), 1.0 / 6.0);
  const auto k1 = from_strong_b_metric(hinged_strong_b_metric(1.0), 1, kLine);
  EXPECT_EQ(k1.phi(Point{0.0}, Point{5.0}, Point{2.0}), 0.0);
}

TEST(HingedMetric, IsStrongBButNotAMetric) {
  const auto spec = hinged_strong_b_metric(2.0);
  const Box box = Box::cube(1, -2.0, 2.0);
  EXPECT_TRUE(check_strong_b_metric(spec, seeded(12, 20000), box).ok());
  EXPECT_TRUE(check_b_metric(spec, seeded(12, 20000), box).ok());
  // 0 -> 1 -> 2: d(0,2) = 3 > d(0,1) + d(1,2) = 2
  EXPECT_GT(spec.distance(Point{0.0}, Point{2.0}),
            spec.distance(Point{0.0}, Point{1.0}) + spec.distance(Point{1.0}, Point{2.0}));
}

TEST(SpecChecks, ValidSpecsPassAndBrokenOnesFail) {
  EXPECT_TRUE(check_s_metric(standard_s_metric(), seeded(4, 20000), kPlane).ok());
  for (double K : {1.5, 2.0, 4.0}) {
    EXPECT_TRUE(check_b_metric(power_b_metric(K), seeded(4, 20000), kPlane).ok()) << K;
  }
  BMetricSpec too_tight = power_b_metric(2.0);
  too_tight.K = 1.0;
  const auto r = check_b_metric(too_tight, seeded(4, 20000), kPlane);
  EXPECT_FALSE(r.ok());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->size(), 3u);
}

TEST(LpQuasiNorm, ExamplesAndErrors) {
  const auto one = lp_quasinorm_space(0.5, 1, Box::cube(1, -1.0, 1.0));
  EXPECT_EQ(one.distance(Point{0.0}, Point{1.0}), 1.0);
  EXPECT_EQ(lp_quasinorm_space(0.5, 2, kPlane).distance(Point{0.0, 0.0}, Point{1.0, 1.0}), 4.0);
  EXPECT_THROW(lp_quasinorm_space(1.0, 2, kPlane), InputError);
  EXPECT_THROW(lp_quasinorm_space(0.0, 2, kPlane), InputError);
}

TEST(LpQuasiNorm, DerivedCoefficientHoldsAndIsNeeded) {
  const double p = 0.5;
  const auto space = lp_quasinorm_space(p, 2, kPlane);
  const BMetricSpec spec{"lp", space.distance_fn(), std::exp2(1.0 / p - 1.0)};
  EXPECT_TRUE(check_b_metric(spec, seeded(8, 20000), kPlane).ok());
  // The quasi-norm is not a metric: (1,0) -> (0,0) -> (0,1) gives 4 > 1 + 1.
  EXPECT_EQ(space.distance(Point{1.0, 0.0}, Point{0.0, 1.0}), 4.0);
}

TEST(Discrete, Examples) {
  const auto d = discrete_space(2, kPlane);
  EXPECT_EQ(d.distance(Point{0.3, 0.1}, Point{0.3, 0.1}), 0.0);
  EXPECT_EQ(d.distance(Point{0.3, 0.1}, Point{0.3, 0.2}), 1.0);
  EXPECT_EQ(d.modulus(0.001), 1.0);
}

class ShippedSpaceTest : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ShippedSpaceTest, PassesAxiomsAndContinuity) {
  const auto spaces = testing::shipped_spaces();
  const auto& [name, space] = spaces[GetParam()];
  const Sampler sampler = seeded(1000 + GetParam(), 10000);
  const std::vector<double> grid{1.0, 0.1, 0.01};
  const auto report =
      merge_reports(check_axioms(space, sampler), check_phi_continuity(space, sampler, grid));
  EXPECT_TRUE(report.all_pass()) << name;
}

INSTANTIATE_TEST_SUITE_P(All, ShippedSpaceTest,
                         ::testing::Range<std::size_t>(0, testing::shipped_spaces().size()),
                         [](const auto& info) {
                           return std::string(testing::shipped_spaces()[info.param].name);
                         });

}  // namespace
}  // namespace phimetric
