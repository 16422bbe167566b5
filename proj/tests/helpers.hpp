#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>
#include <vector>

#include "phimetric/constructions.hpp"
#include "phimetric/point.hpp"
#include "phimetric/sampler.hpp"
#include "phimetric/topology.hpp"

namespace phimetric::testing {

inline Sampler seeded(std::uint64_t seed, std::size_t count = 1) {
  Sampler s;
  s.seed = seed;
  s.count = count;
  return s;
}

inline std::vector<Point> draw_points(std::uint64_t seed, const Box& box, std::size_t n) {
  PointStream stream(seeded(seed), box);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(stream.next());
  return out;
}

inline std::vector<Point> line(std::initializer_list<double> xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back(Point{x});
  return out;
}

struct ShippedSpace {
  const char* name;
  PhiMetricSpace space;
};

/// Every construction on the box it is checked on.
inline std::vector<ShippedSpace> shipped_spaces() {
  const Box wide = Box::cube(1, -10.0, 10.0);
  const Box plane = Box::cube(2, -1.0, 1.0);
  const Box unit = Box::cube(1, -1.0, 1.0);
  const Box hinge = Box::cube(2, -2.0, 2.0);
  const Box small = Box::cube(2, -0.5, 0.5);
  std::vector<ShippedSpace> out;
  out.push_back({"squared_euclidean", squared_euclidean(wide)});
  out.push_back({"s_induced", from_s_metric(standard_s_metric(), 2, plane)});
  out.push_back({"b_induced_k1_5", from_b_metric(power_b_metric(1.5), 2, plane)});
  out.push_back({"b_induced_k2", from_b_metric(power_b_metric(2.0), 2, plane)});
  out.push_back({"b_induced_k4", from_b_metric(power_b_metric(4.0), 2, plane)});
  out.push_back({"strong_b_induced", from_strong_b_metric(hinged_strong_b_metric(2.0), 2, hinge)});
  out.push_back({"lp_half_dim2", lp_quasinorm_space(0.5, 2, plane)});
  out.push_back({"discrete", discrete_space(2, plane)});
  const PhiMetricSpace sq_unit = squared_euclidean(unit);
  out.push_back({"square_of_squared", square(sq_unit)});
  const std::vector<PhiMetricSpace> three{sq_unit, sq_unit, sq_unit};
  out.push_back({"product_three_squared", product(three)});
  const std::vector<PhiMetricSpace> with_discrete{squared_euclidean(small),
                                                  discrete_space(2, small)};
  out.push_back({"product_with_discrete", product(with_discrete)});
  const std::vector<PhiMetricSpace> mixed{from_s_metric(standard_s_metric(), 2, small),
                                          from_b_metric(power_b_metric(1.5), 2, small)};
  out.push_back({"product_s_and_b", product(mixed)});
  return out;
}

}  // namespace phimetric::testing
