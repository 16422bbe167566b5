#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "phimetric/point.hpp"
#include "phimetric/sampler.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

/// A true metric, with an optional closed form for its diameter on a box.
struct Metric {
  std::string name;
  DistanceFn distance;
  std::function<double(const Box&)> diameter_on;  // may be empty
};

/// Distance with a relaxed triangle inequality d(x,z) <= K [d(x,y) + d(y,z)].
struct BMetricSpec {
  std::string name;
  DistanceFn distance;
  double K = 1.0;
};

using SFn = std::function<double(const Point&, const Point&, const Point&)>;

/// Three-point distance with S(x,y,z) <= S(x,x,w) + S(y,y,w) + S(z,z,w).
struct SMetricSpec {
  std::string name;
  SFn s;
};

// Reference distances ---------------------------------------------------------

Metric euclidean_metric();
SMetricSpec standard_s_metric();  // S(x,y,z) = |x - z| + |y - z| (Euclidean norm)
/// |x - y|^q with q = 1 + log2 K, a b-metric with coefficient K (K >= 1).
BMetricSpec power_b_metric(double K);
/// f(|x - y|) with f(t) = t for t <= 1 and K t - (K - 1) beyond: satisfies
/// d(x,z) <= K d(x,y) + d(y,z) but not the triangle inequality when K > 1.
BMetricSpec hinged_strong_b_metric(double K);

// Constructions ---------------------------------------------------------------

/// A metric with phi == 0.
PhiMetricSpace from_metric(const Metric& metric, std::size_t dimension, std::optional<Box> domain);

/// d = metric^2, phi = 2 sqrt(d(x,z) d(z,y)), delta(eps) = min(eps^2 / (4 D), 1)
/// where D bounds d on the domain. `diameter_hint` is a bound on the metric
/// (not squared) diameter; without it the metric's closed form on the domain
/// box is used. Throws ConfigurationError when neither is available.
PhiMetricSpace from_metric_squared(const Metric& metric, std::size_t dimension,
                                   std::optional<Box> domain,
                                   std::optional<double> diameter_hint = std::nullopt);

/// from_metric_squared(euclidean_metric()) on `domain`.
PhiMetricSpace squared_euclidean(const Box& domain);

/// d' = d^2 with phi' = 2 d(x,z) d(z,y) + phi^2 + 2 phi [d(x,z) + d(z,y)].
PhiMetricSpace square(const PhiMetricSpace& space);

/// Pointwise product of the factor distances. phi is the left fold of the
/// two-factor bound
///   phi12 = a1 b2 + b1 a2 + p1 (a2 + b2) + p2 (a1 + b1) + p1 p2
/// with a = d(x,z), b = d(z,y), p = phi(x,y,z) per factor.
/// Throws InputError on an empty list, DomainError on mismatched factors.
PhiMetricSpace product(std::span<const PhiMetricSpace> spaces);

/// d(x,y) = S(x,x,y), phi = d(x,z) + d(y,z) (zero when z is x or y),
/// delta(eps) = eps / 2 for both endpoints. When a domain is given the induced
/// distance is checked for symmetry on seeded pairs; an asymmetry beyond
/// kDefaultTolerance throws ConfigurationError.
PhiMetricSpace from_s_metric(const SMetricSpec& spec, std::size_t dimension,
                             std::optional<Box> domain);

/// d = B, phi = (K - 1)[d(x,z) + d(y,z)] (zero when z is x or y),
/// delta(eps) = eps / (2K). K < 1 throws InputError.
PhiMetricSpace from_b_metric(const BMetricSpec& spec, std::size_t dimension,
                             std::optional<Box> domain);

/// Same assembly as from_b_metric for strong b-metrics.
PhiMetricSpace from_strong_b_metric(const BMetricSpec& spec, std::size_t dimension,
                                    std::optional<Box> domain);

/// Quasi-norm distance (sum |x_i - y_i|^p)^(1/p), 0 < p < 1, routed through
/// from_b_metric with K = 2^(1/p - 1).
PhiMetricSpace lp_quasinorm_space(double p, std::size_t dimension, std::optional<Box> domain);

/// d = 0 on equal points and 1 otherwise, phi == 0, delta == 1.
PhiMetricSpace discrete_space(std::size_t dimension, std::optional<Box> domain);

/// Squared Euclidean distance with phi == 0. Violates d_phi3; negative control.
PhiMetricSpace broken_phi_zero(const Box& domain);

/// Squared Euclidean distance with phi = 1 off the diagonal: satisfies the
/// triangle bound but phi never becomes small. Negative control for phi3.
PhiMetricSpace broken_phi_discontinuous(const Box& domain);

// Sampled validation of generalized-distance specs ----------------------------

struct SpecCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<std::vector<Point>> witness;
  bool ok() const noexcept { return violations == 0; }
};

/// d(x,z) <= K [d(x,y) + d(y,z)] plus symmetry and d(x,x) = 0.
SpecCheck check_b_metric(const BMetricSpec& spec, const Sampler& sampler, const Box& box,
                         double tol = 1e-9);
/// d(x,z) <= K d(x,y) + d(y,z).
SpecCheck check_strong_b_metric(const BMetricSpec& spec, const Sampler& sampler, const Box& box,
                                double tol = 1e-9);
/// S >= 0, S(x,x,x) = 0, S > 0 off the diagonal, and the tetrahedral inequality.
SpecCheck check_s_metric(const SMetricSpec& spec, const Sampler& sampler, const Box& box,
                         double tol = 1e-9);

}  // namespace phimetric
