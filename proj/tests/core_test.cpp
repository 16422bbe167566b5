#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "phimetric/axioms.hpp"
#include "phimetric/constructions.hpp"
#include "phimetric/errors.hpp"
#include "phimetric/io.hpp"

namespace phimetric {
namespace {

using testing::seeded;

const Box kWide = Box::cube(1, -10.0, 10.0);

TEST(Point, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Point(std::vector<double>{}), InputError);
  EXPECT_THROW((Point{0.0, std::numeric_limits<double>::quiet_NaN()}), InputError);
  EXPECT_THROW(Point{std::numeric_limits<double>::infinity()}, InputError);
}

TEST(Box, ValidatesAndEnumeratesCorners) {
  EXPECT_THROW(Box({1.0}, {0.0}), InputError);
  EXPECT_THROW(Box({0.0, 0.0}, {1.0}), DomainError);
  const Box b({0.0, 10.0}, {1.0, 20.0});
  const auto c = b.corners();
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], (Point{0.0, 10.0}));
  EXPECT_EQ(c[3], (Point{1.0, 20.0}));
  EXPECT_TRUE(b.contains(Point{0.5, 15.0}));
  EXPECT_FALSE(b.contains(Point{1.5, 15.0}));
  EXPECT_EQ(b.clamp(Point{2.0, 0.0}), (Point{1.0, 10.0}));
}

TEST(Distance, SquaredEuclideanExamples) {
  const auto s = squared_euclidean(kWide);
  EXPECT_EQ(s.distance(Point{1.0}, Point{3.0}), 4.0);
  EXPECT_EQ(s.distance(Point{2.5}, Point{2.5}), 0.0);
  EXPECT_EQ(s.phi(Point{1.0}, Point{3.0}, Point{2.0}), 2.0);
  EXPECT_EQ(s.phi(Point{1.0}, Point{3.0}, Point{1.0}), 0.0);
}

TEST(Distance, QuasiNormExample) {
  const auto s = lp_quasinorm_space(0.5, 2, Box::cube(2, -1.0, 1.0));
  EXPECT_EQ(s.distance(Point{0.0, 0.0}, Point{1.0, 1.0}), 4.0);
}

TEST(Distance, DimensionMismatchIsDomainError) {
  const auto s = squared_euclidean(kWide);
  EXPECT_THROW(s.distance(Point{1.0}, Point{1.0, 2.0}), DomainError);
  EXPECT_THROW(s.phi(Point{1.0}, Point{1.0}, Point{1.0, 2.0}), DomainError);
}

TEST(Distance, EvaluatorFailureCarriesPoints) {
  PhiMetricSpace bad(
      "throws", 1, [](const Point&, const Point&) -> double { throw std::runtime_error("boom"); },
      [](const Point&, const Point&, const Point&) { return 0.0; }, std::nullopt,
      ModulusScope::kEitherEndpoint, kWide);
  try {
    bad.distance(Point{1.0}, Point{2.0});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    ASSERT_EQ(e.points().size(), 2u);
    EXPECT_EQ(e.points()[1], Point{2.0});
  }
}

TEST(Phi, BInducedWithK2MatchesFormula) {
  const auto s = from_b_metric(power_b_metric(2.0), 2, Box::cube(2, -1.0, 1.0));
  PointStream stream(seeded(3), Box::cube(2, -1.0, 1.0));
  for (int i = 0; i < 1000; ++i) {
    const Point x = stream.next(), y = stream.next(), z = stream.next();
    EXPECT_EQ(s.phi(x, y, z), 1.0 * (s.distance(x, z) + s.distance(y, z)));
  }
}

TEST(Sampler, SameSeedSameStream) {
  for (auto strategy : {SamplingStrategy::kUniformInBox, SamplingStrategy::kGaussianAroundAnchor}) {
    Sampler s = seeded(99);
    s.strategy = strategy;
    s.sigma = 0.5;
    PointStream a(s, Box::cube(3, -1.0, 1.0));
    PointStream b(s, Box::cube(3, -1.0, 1.0));
    for (int i = 0; i < 500; ++i) {
      const Point p = a.next();
      EXPECT_EQ(p, b.next());
      EXPECT_TRUE(Box::cube(3, -1.0, 1.0).contains(p));
    }
  }
}

TEST(Sampler, DifferentSeedsDiffer) {
  PointStream a(seeded(1), kWide);
  PointStream b(seeded(2), kWide);
  EXPECT_NE(a.next(), b.next());
}

TEST(Sampler, CorpusReplayCycles) {
  Sampler s = seeded(0);
  s.strategy = SamplingStrategy::kCorpusReplay;
  s.corpus = testing::line({1.0, 2.0});
  PointStream stream(s, kWide);
  EXPECT_EQ(stream.next(), Point{1.0});
  EXPECT_EQ(stream.next(), Point{2.0});
  EXPECT_EQ(stream.next(), Point{1.0});
  s.corpus.clear();
  EXPECT_THROW(PointStream(s, kWide), ConfigurationError);
}

TEST(Sampler, ParsesStrategies) {
  EXPECT_EQ(parse_sampling_strategy("gaussian"), SamplingStrategy::kGaussianAroundAnchor);
  EXPECT_THROW(parse_sampling_strategy("sobol"), ConfigurationError);
}

TEST(Sampler, UniformVariatesStayInRange) {
  PointStream s(seeded(5), kWide);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    const double v = s.uniform_open_low();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(CheckAxioms, SquaredEuclideanPasses) {
  const auto report = check_axioms(squared_euclidean(kWide), seeded(1, 10000));
  EXPECT_TRUE(report.all_pass());
  EXPECT_EQ(report.samples_used, 10000u);
  EXPECT_TRUE(report.witnesses.empty());
}

TEST(CheckAxioms, PhiZeroSquaredFailsTriangleWithWitness) {
  const auto report = check_axioms(broken_phi_zero(kWide), seeded(1, 10000));
  EXPECT_EQ(report.verdict(Axiom::kTriangle), Verdict::kViolated);
  const Witness* w = report.first_witness(Axiom::kTriangle);
  ASSERT_NE(w, nullptr);
  EXPECT_GT(w->lhs, w->rhs);
  EXPECT_EQ(report.verdict(Axiom::kSymmetry), Verdict::kNoViolationFound);
}

TEST(CheckAxioms, HandPickedTriangleWitness) {
  Sampler s = seeded(0, 1);
  s.strategy = SamplingStrategy::kCorpusReplay;
  s.corpus = testing::line({0.0, 2.0, 1.0});
  const auto report = check_axioms(broken_phi_zero(kWide), s);
  const Witness* w = report.first_witness(Axiom::kTriangle);
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(w->lhs, 4.0);
  EXPECT_EQ(w->rhs, 2.0);
}

TEST(CheckAxioms, DiscretePasses) {
  EXPECT_TRUE(check_axioms(discrete_space(2, Box::cube(2, 0.0, 1.0)), seeded(4, 2000)).all_pass());
}

TEST(CheckAxioms, FailVerdictIffWitness) {
  for (const auto& [name, space] : testing::shipped_spaces()) {
    const auto report = check_axioms(space, seeded(8, 500));
    for (const auto& [axiom, verdict] : report.verdicts) {
      EXPECT_EQ(verdict == Verdict::kViolated, report.first_witness(axiom) != nullptr) << name;
    }
  }
  const auto broken = check_axioms(broken_phi_zero(kWide), seeded(8, 500));
  for (const auto& [axiom, verdict] : broken.verdicts) {
    EXPECT_EQ(verdict == Verdict::kViolated, broken.first_witness(axiom) != nullptr);
  }
}

TEST(CheckAxioms, RejectsBadArguments) {
  EXPECT_THROW(check_axioms(squared_euclidean(kWide), seeded(1, 10), 0.0), InputError);
  EXPECT_THROW(check_axioms(squared_euclidean(kWide), seeded(1, 0)), InputError);
}

TEST(CheckAxioms, ReportsAreDeterministic) {
  for (auto backend : {kernels::Backend::kSerial, kernels::Backend::kOpenMP}) {
    const auto a = check_axioms(broken_phi_zero(kWide), seeded(21, 3000), 1e-9, backend);
    const auto b = check_axioms(broken_phi_zero(kWide), seeded(21, 3000), 1e-9, backend);
    EXPECT_EQ(io::canonical_dump(io::to_json(a)), io::canonical_dump(io::to_json(b)));
  }
  const auto s = check_axioms(broken_phi_zero(kWide), seeded(21, 3000), 1e-9, kernels::Backend::kSerial);
  const auto o = check_axioms(broken_phi_zero(kWide), seeded(21, 3000), 1e-9, kernels::Backend::kOpenMP);
  EXPECT_EQ(io::canonical_dump(io::to_json(s)), io::canonical_dump(io::to_json(o)));
}

TEST(Continuity, SInducedUsesHalfEps) {
  const auto s = from_s_metric(standard_s_metric(), 1, kWide);
  const std::vector<double> grid{1.0};
  const auto report = check_phi_continuity(s, seeded(2, 5000), grid);
  ASSERT_EQ(report.probes.size(), 1u);
  EXPECT_EQ(report.probes[0].delta, 0.5);
  EXPECT_TRUE(report.probes[0].analytic);
  EXPECT_EQ(report.verdict(Axiom::kPhiContinuity), Verdict::kNoViolationFound);
}

TEST(Continuity, BInducedK2UsesQuarterEps) {
  const auto s = from_b_metric(power_b_metric(2.0), 1, kWide);
  const std::vector<double> grid{1.0};
  const auto report = check_phi_continuity(s, seeded(2, 5000), grid);
  EXPECT_EQ(report.probes[0].delta, 0.25);
  EXPECT_EQ(report.verdict(Axiom::kPhiContinuity), Verdict::kNoViolationFound);
}

TEST(Continuity, SquaredUsesDiameterBound) {
  const auto s = squared_euclidean(kWide);
  const std::vector<double> grid{0.01};
  const auto report = check_phi_continuity(s, seeded(2, 10000), grid);
  EXPECT_DOUBLE_EQ(report.probes[0].delta, 0.01 * 0.01 / (4.0 * 400.0));
  EXPECT_EQ(report.verdict(Axiom::kPhiContinuity), Verdict::kNoViolationFound);
}

TEST(Continuity, NonPositiveModulusIsConfigurationError) {
  PhiMetricSpace s("zero-modulus", 1, squared_euclidean(kWide).distance_fn(),
                   squared_euclidean(kWide).phi_fn(), ModulusFn([](double) { return 0.0; }),
                   ModulusScope::kEitherEndpoint, kWide);
  const std::vector<double> grid{1.0};
  EXPECT_THROW(check_phi_continuity(s, seeded(1, 10), grid), ConfigurationError);
}

TEST(Continuity, DiscontinuousPhiIsCaught) {
  const auto s = broken_phi_discontinuous(kWide);
  const std::vector<double> grid{0.5};
  EXPECT_THROW(check_phi_continuity(s, seeded(2, 200), grid), ModulusEstimationError);
}

TEST(EstimateModulus, BInducedBoundsAnalytic) {
  const auto s = from_b_metric(power_b_metric(2.0), 1, kWide);
  EXPECT_GE(estimate_modulus(s, seeded(6, 2000), 1.0), 0.25);
}

TEST(EstimateModulus, DiscreteGetsTopRung) {
  EXPECT_EQ(estimate_modulus(discrete_space(1, kWide), seeded(6, 500), 0.1),
            modulus_ladder().front());
}

TEST(EstimateModulus, DeterministicGivenSeed) {
  const auto s = square(squared_euclidean(Box::cube(1, -1.0, 1.0)));
  EXPECT_EQ(estimate_modulus(s, seeded(6, 500), 0.1), estimate_modulus(s, seeded(6, 500), 0.1));
}

TEST(Properties, SymmetryIsExactForShippedSpaces) {
  for (const auto& [name, space] : testing::shipped_spaces()) {
    PointStream stream(seeded(17), *space.domain());
    for (int i = 0; i < 500; ++i) {
      const Point x = stream.next(), y = stream.next(), z = stream.next();
      ASSERT_EQ(space.distance(x, y), space.distance(y, x)) << name;
      ASSERT_EQ(space.phi(x, y, z), space.phi(y, x, z)) << name;
      ASSERT_EQ(space.distance(x, x), 0.0) << name;
    }
  }
}

TEST(Properties, CollinearTriplesAreTightForSquaredEuclidean) {
  const auto s = squared_euclidean(kWide);
  PointStream stream(seeded(23), kWide);
  for (int i = 0; i < 1000; ++i) {
    double a = stream.next()[0], b = stream.next()[0];
    if (a > b) std::swap(a, b);
    const double z = a + (b - a) * stream.uniform();
    const Point x{a}, y{b}, m{z};
    const double rhs = s.distance(x, m) + s.distance(m, y) + s.phi(x, y, m);
    EXPECT_NEAR(s.distance(x, y), rhs, 1e-12 * std::max(1.0, rhs));
  }
}

}  // namespace
}  // namespace phimetric
