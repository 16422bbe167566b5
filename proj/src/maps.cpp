#include "phimetric/maps.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "phimetric/errors.hpp"

namespace phimetric {

std::vector<std::string> builtin_map_ids() {
  return {"arctan-shift", "half-sine", "kannan-piecewise", "rotation", "shift"};
}

SelfMap builtin_map(std::string_view id) {
  if (id == "half-sine") {
    return SelfMap{[](const Point& p) { return Point{std::sin(p[0]) / 2.0}; },
                   Box::cube(1, -10.0, 10.0), "half-sine", ContractionKind::kBanach};
  }
  if (id == "kannan-piecewise") {
    return SelfMap{[](const Point& p) {
                     const double x = p[0];
                     return Point{x < 1.0 ? x / 10.0 : x / 5.0};
                   },
                   Box::cube(1, -2.0, 2.0), "kannan-piecewise", ContractionKind::kKannan};
  }
  if (id == "arctan-shift") {
    const double h = std::numbers::pi / 2.0;
    return SelfMap{[](const Point& p) { return Point{std::atan(p[0]) - p[0]}; },
                   Box::cube(1, -h, h), "arctan-shift", ContractionKind::kEdelstein};
  }
  if (id == "shift") {
    return SelfMap{[](const Point& p) { return Point{p[0] + 1.0}; }, Box::cube(1, -1e9, 1e9),
                   "shift", ContractionKind::kBanach};
  }
  if (id == "rotation") {
    return SelfMap{[](const Point& p) { return Point{-p[1], p[0]}; }, Box::cube(2, -1.0, 1.0),
                   "rotation", ContractionKind::kEdelstein};
  }
  std::string known;
  for (const auto& k : builtin_map_ids()) known += (known.empty() ? "" : ", ") + k;
  throw ConfigurationError("unknown map '" + std::string(id) + "' (known: " + known +
                           ", affine)");
}

SelfMap affine_map(double a, double b, Box domain) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("affine map: a and b must be finite");
  return SelfMap{[a, b](const Point& p) {
                   std::vector<double> out(p.coords().begin(), p.coords().end());
                   for (double& v : out) v = a * v + b;
                   return Point(std::move(out));
                 },
                 std::move(domain), "affine", ContractionKind::kBanach};
}

}  // namespace phimetric
