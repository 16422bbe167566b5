#include "phimetric/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "phimetric/axioms.hpp"
#include "phimetric/errors.hpp"

namespace phimetric {

namespace {

constexpr std::uint64_t kSymmetryProbeSeed = 0x5eed5;
constexpr std::size_t kSymmetryProbePairs = 256;

double euclidean_norm_of_difference(const Point& x, const Point& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::string format_coefficient(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void require_domain_dimension(const std::optional<Box>& domain, std::size_t dimension) {
  if (dimension == 0) throw InputError("dimension must be at least 1");
  if (domain && domain->dimension() != dimension) {
    throw DomainError("domain box dimension differs from the requested dimension");
  }
}

/// Shared assembly for b-metric and strong b-metric induced spaces.
PhiMetricSpace b_induced(const BMetricSpec& spec, std::size_t dimension, std::optional<Box> domain,
                         const std::string& kind) {
  if (!std::isfinite(spec.K) || spec.K < 1.0) {
    throw InputError(kind + " coefficient K must be a finite value >= 1");
  }
  if (!spec.distance) throw InputError(kind + " spec has no distance");
  require_domain_dimension(domain, dimension);
  const double K = spec.K;
  DistanceFn d = spec.distance;
  PhiFn phi = [d, K](const Point& x, const Point& y, const Point& z) {
    if (z == x || z == y) return 0.0;
    return (K - 1.0) * (d(x, z) + d(y, z));
  };
  ModulusFn modulus = [K](double eps) { return eps / (2.0 * K); };
  return PhiMetricSpace(kind + "(" + spec.name + ")", dimension, std::move(d), std::move(phi),
                        std::move(modulus), ModulusScope::kBothEndpoints, std::move(domain));
}

void require_same_domain(const PhiMetricSpace& a, const PhiMetricSpace& b) {
  if (a.dimension() != b.dimension()) {
    throw DomainError("product: factors '" + a.label() + "' and '" + b.label() +
                      "' differ in dimension");
  }
  if (a.domain() != b.domain()) {
    throw DomainError("product: factors '" + a.label() + "' and '" + b.label() +
                      "' declare different domains");
  }
}

}  // namespace

Metric euclidean_metric() {
  return Metric{"euclidean", euclidean_norm_of_difference, [](const Box& box) {
                  double sum = 0.0;
                  for (std::size_t i = 0; i < box.dimension(); ++i) {
                    const double side = box.hi(i) - box.lo(i);
                    sum += side * side;
                  }
                  return std::sqrt(sum);
                }};
}

SMetricSpec standard_s_metric() {
  return SMetricSpec{"|x-z|+|y-z|", [](const Point& x, const Point& y, const Point& z) {
                       return euclidean_norm_of_difference(x, z) +
                              euclidean_norm_of_difference(y, z);
                     }};
}

BMetricSpec power_b_metric(double K) {
  if (!std::isfinite(K) || K < 1.0) throw InputError("power_b_metric: K must be >= 1");
  const double q = 1.0 + std::log2(K);
  DistanceFn d = [q](const Point& x, const Point& y) {
    const double t = euclidean_norm_of_difference(x, y);
    if (q == 2.0) return t * t;
    if (q == 1.0) return t;
    return std::pow(t, q);
  };
  return BMetricSpec{"|x-y|^" + format_coefficient(q), std::move(d), K};
}

BMetricSpec hinged_strong_b_metric(double K) {
  if (!std::isfinite(K) || K < 1.0) throw InputError("hinged_strong_b_metric: K must be >= 1");
  DistanceFn d = [K](const Point& x, const Point& y) {
    const double t = euclidean_norm_of_difference(x, y);
    return t <= 1.0 ? t : K * t - (K - 1.0);
  };
  return BMetricSpec{"hinged(K=" + format_coefficient(K) + ")", std::move(d), K};
}

PhiMetricSpace from_metric(const Metric& metric, std::size_t dimension, std::optional<Box> domain) {
  require_domain_dimension(domain, dimension);
  return PhiMetricSpace(
      "metric(" + metric.name + ")", dimension, metric.distance,
      [](const Point&, const Point&, const Point&) { return 0.0; },
      ModulusFn([](double) { return 1.0; }), ModulusScope::kEitherEndpoint, std::move(domain));
}

PhiMetricSpace from_metric_squared(const Metric& metric, std::size_t dimension,
                                   std::optional<Box> domain, std::optional<double> diameter_hint) {
  require_domain_dimension(domain, dimension);
  if (!metric.distance) throw InputError("from_metric_squared: metric has no distance");
  double metric_diameter = 0.0;
  if (diameter_hint) {
    if (!(*diameter_hint >= 0.0) || !std::isfinite(*diameter_hint)) {
      throw InputError("from_metric_squared: diameter hint must be finite and non-negative");
    }
    metric_diameter = *diameter_hint;
  } else if (domain && metric.diameter_on) {
    metric_diameter = metric.diameter_on(*domain);
  } else {
    throw ConfigurationError("from_metric_squared(" + metric.name +
                             "): the modulus needs a diameter bound; give a bounded domain with a "
                             "known metric diameter or a diameter hint");
  }
  // D bounds d = metric^2 on the domain; phi = 2 sqrt(d(x,z) d(z,y)) < 2 sqrt(delta D).
  const double D = metric_diameter * metric_diameter;
  DistanceFn m = metric.distance;
  DistanceFn d = [m](const Point& x, const Point& y) {
    const double v = m(x, y);
    return v * v;
  };
  PhiFn phi = [d](const Point& x, const Point& y, const Point& z) {
    return 2.0 * std::sqrt(d(x, z) * d(z, y));
  };
  ModulusFn modulus = [D](double eps) {
    if (D == 0.0) return 1.0;
    return std::min(eps * eps / (4.0 * D), 1.0);
  };
  return PhiMetricSpace("squared(" + metric.name + ")", dimension, std::move(d), std::move(phi),
                        std::move(modulus), ModulusScope::kEitherEndpoint, std::move(domain));
}

PhiMetricSpace squared_euclidean(const Box& domain) {
  return from_metric_squared(euclidean_metric(), domain.dimension(), domain);
}

PhiMetricSpace square(const PhiMetricSpace& space) {
  DistanceFn d = space.distance_fn();
  PhiFn p = space.phi_fn();
  DistanceFn d2 = [d](const Point& x, const Point& y) {
    const double v = d(x, y);
    return v * v;
  };
  PhiFn phi2 = [d, p](const Point& x, const Point& y, const Point& z) {
    const double a = d(x, z);
    const double b = d(z, y);
    const double q = p(x, y, z);
    return 2.0 * a * b + q * q + 2.0 * q * (a + b);
  };
  return PhiMetricSpace("square(" + space.label() + ")", space.dimension(), std::move(d2),
                        std::move(phi2), std::nullopt, ModulusScope::kBothEndpoints,
                        space.domain());
}

PhiMetricSpace product(std::span<const PhiMetricSpace> spaces) {
  if (spaces.empty()) throw InputError("product: needs at least one factor");
  for (std::size_t k = 1; k < spaces.size(); ++k) require_same_domain(spaces[0], spaces[k]);

  std::vector<DistanceFn> ds;
  std::vector<PhiFn> ps;
  std::string label = "product(";
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    ds.push_back(spaces[k].distance_fn());
    ps.push_back(spaces[k].phi_fn());
    label += (k > 0 ? ", " : "") + spaces[k].label();
  }
  label += ")";

  DistanceFn d = [ds](const Point& x, const Point& y) {
    double acc = ds[0](x, y);
    for (std::size_t k = 1; k < ds.size(); ++k) acc = acc * ds[k](x, y);
    return acc;
  };
  PhiFn phi = [ds, ps](const Point& x, const Point& y, const Point& z) {
    double A = ds[0](x, z);
    double B = ds[0](z, y);
    double P = ps[0](x, y, z);
    for (std::size_t k = 1; k < ds.size(); ++k) {
      const double a = ds[k](x, z);
      const double b = ds[k](z, y);
      const double p = ps[k](x, y, z);
      P = A * b + B * a + P * (a + b) + p * (A + B) + P * p;
      A = A * a;
      B = B * b;
    }
    return P;
  };
  return PhiMetricSpace(std::move(label), spaces[0].dimension(), std::move(d), std::move(phi),
                        std::nullopt, ModulusScope::kBothEndpoints, spaces[0].domain());
}

PhiMetricSpace from_s_metric(const SMetricSpec& spec, std::size_t dimension,
                             std::optional<Box> domain) {
  if (!spec.s) throw InputError("from_s_metric: spec has no S evaluator");
  require_domain_dimension(domain, dimension);
  SFn s = spec.s;
  DistanceFn d = [s](const Point& x, const Point& y) { return s(x, x, y); };
  if (domain) {
    Sampler probe;
    probe.seed = kSymmetryProbeSeed;
    PointStream stream(probe, *domain);
    for (std::size_t i = 0; i < kSymmetryProbePairs; ++i) {
      const Point x = stream.next();
      const Point y = stream.next();
      const double dxy = d(x, y);
      const double dyx = d(y, x);
      if (!(std::abs(dxy - dyx) <= kDefaultTolerance)) {
        throw ConfigurationError("from_s_metric(" + spec.name + "): S(x,x,y) != S(y,y,x) at x=" +
                                 x.to_string() + ", y=" + y.to_string());
      }
    }
  }
  PhiFn phi = [d](const Point& x, const Point& y, const Point& z) {
    if (z == x || z == y) return 0.0;
    return d(x, z) + d(y, z);
  };
  ModulusFn modulus = [](double eps) { return eps / 2.0; };
  return PhiMetricSpace("s-induced(" + spec.name + ")", dimension, std::move(d), std::move(phi),
                        std::move(modulus), ModulusScope::kBothEndpoints, std::move(domain));
}

PhiMetricSpace from_b_metric(const BMetricSpec& spec, std::size_t dimension,
                             std::optional<Box> domain) {
  return b_induced(spec, dimension, std::move(domain), "b-induced");
}

PhiMetricSpace from_strong_b_metric(const BMetricSpec& spec, std::size_t dimension,
                                    std::optional<Box> domain) {
  return b_induced(spec, dimension, std::move(domain), "strong-b-induced");
}

PhiMetricSpace lp_quasinorm_space(double p, std::size_t dimension, std::optional<Box> domain) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("lp_quasinorm_space: p must lie in (0, 1)");
  const double inv_p = 1.0 / p;
  DistanceFn d = [p, inv_p](const Point& x, const Point& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.dimension(); ++i) sum += std::pow(std::abs(x[i] - y[i]), p);
    return std::pow(sum, inv_p);
  };
  const double K = std::exp2(inv_p - 1.0);
  return from_b_metric(BMetricSpec{"l_" + format_coefficient(p), std::move(d), K}, dimension,
                       std::move(domain));
}

PhiMetricSpace discrete_space(std::size_t dimension, std::optional<Box> domain) {
  require_domain_dimension(domain, dimension);
  return PhiMetricSpace(
      "discrete", dimension, [](const Point& x, const Point& y) { return x == y ? 0.0 : 1.0; },
      [](const Point&, const Point&, const Point&) { return 0.0; },
      ModulusFn([](double) { return 1.0; }), ModulusScope::kEitherEndpoint, std::move(domain));
}

PhiMetricSpace broken_phi_zero(const Box& domain) {
  const PhiMetricSpace sq = squared_euclidean(domain);
  return PhiMetricSpace(
      "broken-phi-zero", domain.dimension(), sq.distance_fn(),
      [](const Point&, const Point&, const Point&) { return 0.0; }, std::nullopt,
      ModulusScope::kEitherEndpoint, domain);
}

PhiMetricSpace broken_phi_discontinuous(const Box& domain) {
  const PhiMetricSpace sq = squared_euclidean(domain);
  DistanceFn d = sq.distance_fn();
  PhiFn phi = [d](const Point& x, const Point& y, const Point& z) {
    if (z == x || z == y) return 0.0;
    return 2.0 * std::sqrt(d(x, z) * d(z, y)) + 1.0;
  };
  return PhiMetricSpace("broken-phi-discontinuous", domain.dimension(), d, std::move(phi),
                        std::nullopt, ModulusScope::kBothEndpoints, domain);
}

SpecCheck check_b_metric(const BMetricSpec& spec, const Sampler& sampler, const Box& box,
                         double tol) {
  SpecCheck out;
  PointStream stream(sampler, box);
  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Point x = stream.next();
    const Point y = stream.next();
    const Point z = stream.next();
    ++out.samples;
    const double dxz = spec.distance(x, z);
    const bool ok = dxz <= spec.K * (spec.distance(x, y) + spec.distance(y, z)) + tol &&
                    std::abs(spec.distance(x, y) - spec.distance(y, x)) <= tol &&
                    spec.distance(x, x) == 0.0 && dxz >= 0.0;
    if (!ok) {
      ++out.violations;
      if (!out.witness) out.witness = std::vector<Point>{x, y, z};
    }
  }
  return out;
}

SpecCheck check_strong_b_metric(const BMetricSpec& spec, const Sampler& sampler, const Box& box,
                                double tol) {
  SpecCheck out;
  PointStream stream(sampler, box);
  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Point x = stream.next();
    const Point y = stream.next();
    const Point z = stream.next();
    ++out.samples;
    if (!(spec.distance(x, z) <= spec.K * spec.distance(x, y) + spec.distance(y, z) + tol)) {
      ++out.violations;
      if (!out.witness) out.witness = std::vector<Point>{x, y, z};
    }
  }
  return out;
}

SpecCheck check_s_metric(const SMetricSpec& spec, const Sampler& sampler, const Box& box,
                         double tol) {
  SpecCheck out;
  PointStream stream(sampler, box);
  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Point x = stream.next();
    const Point y = stream.next();
    const Point z = stream.next();
    const Point w = stream.next();
    ++out.samples;
    const double sxyz = spec.s(x, y, z);
    const bool distinct = !(x == y && y == z);
    const bool ok = sxyz >= 0.0 && spec.s(x, x, x) == 0.0 && (!distinct || sxyz > 0.0) &&
                    sxyz <= spec.s(x, x, w) + spec.s(y, y, w) + spec.s(z, z, w) + tol;
    if (!ok) {
      ++out.violations;
      if (!out.witness) out.witness = std::vector<Point>{x, y, z, w};
    }
  }
  return out;
}

}  // namespace phimetric
