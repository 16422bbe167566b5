#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "phimetric/point.hpp"

namespace phimetric {

using DistanceFn = std::function<double(const Point&, const Point&)>;
using PhiFn = std::function<double(const Point&, const Point&, const Point&)>;
using ModulusFn = std::function<double(double)>;

/// Which closeness hypothesis a continuity modulus witnesses.
///
/// kEitherEndpoint: phi(x,y,z) < eps whenever d(x,z) < delta OR d(y,z) < delta.
/// kBothEndpoints:  phi(x,y,z) < eps whenever d(x,z) < delta AND d(y,z) < delta.
///
/// The b-metric and S-metric induced perturbations only vanish when the third
/// point is close to both endpoints, so those spaces declare kBothEndpoints.
enum class ModulusScope { kEitherEndpoint, kBothEndpoints };

/// A phi-metric space: a distance, its perturbation term phi, and optionally an
/// analytic continuity modulus eps -> delta. Immutable once built; copies share
/// evaluator state and are safe to use from several threads.
class PhiMetricSpace {
 public:
  PhiMetricSpace(std::string label, std::size_t dimension, DistanceFn distance,
                 PhiFn phi, std::optional<ModulusFn> modulus, ModulusScope scope,
                 std::optional<Box> domain);

  /// d(x, y). Throws DomainError on a dimension mismatch and EvaluationError
  /// when the evaluator throws.
  double distance(const Point& x, const Point& y) const;
  /// phi(x, y, z), validated like distance().
  double phi(const Point& x, const Point& y, const Point& z) const;

  bool has_analytic_modulus() const noexcept { return modulus_.has_value(); }
  /// Analytic delta(eps). Throws ConfigurationError when the space has none.
  double modulus(double eps) const;
  ModulusScope modulus_scope() const noexcept { return scope_; }

  const std::string& label() const noexcept { return label_; }
  std::size_t dimension() const noexcept { return dimension_; }
  /// Declared sampling box; nullopt for unbounded spaces.
  const std::optional<Box>& domain() const noexcept { return domain_; }

  /// Raw evaluators, unvalidated. Used by constructions to compose spaces.
  const DistanceFn& distance_fn() const noexcept { return distance_; }
  const PhiFn& phi_fn() const noexcept { return phi_; }

  void require_dimension(const Point& p) const;

 private:
  std::string label_;
  std::size_t dimension_;
  DistanceFn distance_;
  PhiFn phi_;
  std::optional<ModulusFn> modulus_;
  ModulusScope scope_;
  std::optional<Box> domain_;
};

std::string to_string(ModulusScope scope);

}  // namespace phimetric
