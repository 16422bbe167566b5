#include <algorithm>

#include "phimetric/kernels.hpp"
#include "slots.hpp"

namespace phimetric::kernels::serial {

std::vector<TripleTerms> evaluate_triples(const PhiMetricSpace& space,
                                          std::span<const Triple> triples) {
  std::vector<TripleTerms> out;
  out.reserve(triples.size());
  for (const Triple& t : triples) out.push_back(slots::triple_terms(space, t));
  return out;
}

std::vector<double> evaluate_phi(const PhiMetricSpace& space, std::span<const Triple> triples) {
  std::vector<double> out;
  out.reserve(triples.size());
  for (const Triple& t : triples) out.push_back(space.phi(t.x, t.y, t.z));
  return out;
}

DistanceMatrix distance_matrix(const PhiMetricSpace& space, std::span<const Point> points) {
  DistanceMatrix out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) slots::distance_row(space, points, i, out);
  return out;
}

double max_pairwise_distance(const PhiMetricSpace& space, std::span<const Point> points) {
  double best = 0.0;
  for (std::size_t n = 0; n < points.size(); ++n) {
    best = std::max(best, slots::row_max(space, points, n));
  }
  return best;
}

std::vector<double> forward_row_max(const PhiMetricSpace& space, std::span<const Point> points) {
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t n = 0; n < points.size(); ++n) out[n] = slots::row_max(space, points, n);
  return out;
}

std::vector<MapPairTerms> evaluate_map_pairs(const PhiMetricSpace& space, const MapFn& map,
                                             const Box& domain,
                                             std::span<const std::pair<Point, Point>> pairs) {
  std::vector<MapPairTerms> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(slots::map_pair_terms(space, map, domain, p));
  return out;
}

PairBoundScan cauchy_pair_bounds(const PhiMetricSpace& space, std::span<const Point> trace,
                                double k, double tol) {
  PairBoundScan scan;
  if (trace.size() < 2) return scan;
  for (std::size_t m = 1; m < trace.size(); ++m) {
    std::vector<PairBound> row;
    scan.pairs_checked += slots::cauchy_row(space, trace, m, k, tol, row);
    scan.violations.insert(scan.violations.end(), row.begin(), row.end());
  }
  return scan;
}

std::vector<unsigned char> balls_contained(const DistanceMatrix& distances,
                                           std::span<const std::size_t> centers, double radius,
                                           std::span<const unsigned char> member) {
  std::vector<unsigned char> out(centers.size(), 0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    out[i] = slots::ball_contained(distances, centers[i], radius, member);
  }
  return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace phimetric::kernels::serial
