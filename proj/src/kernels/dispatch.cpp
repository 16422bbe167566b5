#include <cstdlib>

#include "phimetric/kernels.hpp"

namespace phimetric::kernels {

Backend default_backend() {
  static const Backend backend =
      std::getenv("PHIMETRIC_SERIAL") != nullptr ? Backend::kSerial : Backend::kOpenMP;
  return backend;
}

std::string to_string(Backend backend) {
  return backend == Backend::kSerial ? "serial" : "openmp";
}

std::vector<TripleTerms> evaluate_triples(const PhiMetricSpace& space,
                                          std::span<const Triple> triples, Backend backend) {
  return backend == Backend::kSerial ? serial::evaluate_triples(space, triples)
                                     : omp::evaluate_triples(space, triples);
}

std::vector<double> evaluate_phi(const PhiMetricSpace& space, std::span<const Triple> triples,
                                 Backend backend) {
  return backend == Backend::kSerial ? serial::evaluate_phi(space, triples)
                                     : omp::evaluate_phi(space, triples);
}

DistanceMatrix distance_matrix(const PhiMetricSpace& space, std::span<const Point> points,
                               Backend backend) {
  return backend == Backend::kSerial ? serial::distance_matrix(space, points)
                                     : omp::distance_matrix(space, points);
}

double max_pairwise_distance(const PhiMetricSpace& space, std::span<const Point> points,
                             Backend backend) {
  return backend == Backend::kSerial ? serial::max_pairwise_distance(space, points)
                                     : omp::max_pairwise_distance(space, points);
}

std::vector<double> forward_row_max(const PhiMetricSpace& space, std::span<const Point> points,
                                    Backend backend) {
  return backend == Backend::kSerial ? serial::forward_row_max(space, points)
                                     : omp::forward_row_max(space, points);
}

std::vector<MapPairTerms> evaluate_map_pairs(const PhiMetricSpace& space, const MapFn& map,
                                             const Box& domain,
                                             std::span<const std::pair<Point, Point>> pairs,
                                             Backend backend) {
  return backend == Backend::kSerial ? serial::evaluate_map_pairs(space, map, domain, pairs)
                                     : omp::evaluate_map_pairs(space, map, domain, pairs);
}

PairBoundScan cauchy_pair_bounds(const PhiMetricSpace& space, std::span<const Point> trace,
                                double k, double tol, Backend backend) {
  return backend == Backend::kSerial ? serial::cauchy_pair_bounds(space, trace, k, tol)
                                     : omp::cauchy_pair_bounds(space, trace, k, tol);
}

std::vector<unsigned char> balls_contained(const DistanceMatrix& distances,
                                           std::span<const std::size_t> centers, double radius,
                                           std::span<const unsigned char> member,
                                           Backend backend) {
  return backend == Backend::kSerial
             ? serial::balls_contained(distances, centers, radius, member)
             : omp::balls_contained(distances, centers, radius, member);
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Backend backend) {
  if (backend == Backend::kSerial) {
    serial::for_each_index(n, body);
  } else {
    omp::for_each_index(n, body);
  }
}

}  // namespace phimetric::kernels
