#include "phimetric/space.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <utility>

#include "phimetric/errors.hpp"

namespace phimetric {

PhiMetricSpace::PhiMetricSpace(std::string label, std::size_t dimension, DistanceFn distance,
                               PhiFn phi, std::optional<ModulusFn> modulus, ModulusScope scope,
                               std::optional<Box> domain)
    : label_(std::move(label)),
      dimension_(dimension),
      distance_(std::move(distance)),
      phi_(std::move(phi)),
      modulus_(std::move(modulus)),
      scope_(scope),
      domain_(std::move(domain)) {
  if (dimension_ == 0) throw InputError("space dimension must be at least 1");
  if (!distance_ || !phi_) throw InputError("space needs both a distance and a phi evaluator");
  if (modulus_ && !*modulus_) modulus_.reset();
  if (domain_ && domain_->dimension() != dimension_) {
    throw DomainError("space '" + label_ + "': domain box dimension differs from space dimension");
  }
}

void PhiMetricSpace::require_dimension(const Point& p) const {
  if (p.dimension() != dimension_) {
    throw DomainError("space '" + label_ + "' has dimension " + std::to_string(dimension_) +
                      ", got a point of dimension " + std::to_string(p.dimension()));
  }
}

double PhiMetricSpace::distance(const Point& x, const Point& y) const {
  require_dimension(x);
  require_dimension(y);
  try {
    return distance_(x, y);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError("distance evaluator failed: " + std::string(e.what()), {x, y});
  }
}

double PhiMetricSpace::phi(const Point& x, const Point& y, const Point& z) const {
  require_dimension(x);
  require_dimension(y);
  require_dimension(z);
  try {
    return phi_(x, y, z);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError("phi evaluator failed: " + std::string(e.what()), {x, y, z});
  }
}

double PhiMetricSpace::modulus(double eps) const {
  if (!modulus_) throw ConfigurationError("space '" + label_ + "' has no analytic modulus");
  if (!(eps > 0.0)) throw InputError("modulus: eps must be positive");
  const double delta = (*modulus_)(eps);
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigurationError("space '" + label_ + "': modulus returned a non-positive delta");
  }
  return delta;
}

std::string to_string(ModulusScope scope) {
  return scope == ModulusScope::kEitherEndpoint ? "either-endpoint" : "both-endpoints";
}

}  // namespace phimetric
