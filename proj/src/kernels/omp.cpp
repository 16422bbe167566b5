#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <optional>

#include "phimetric/kernels.hpp"
#include "slots.hpp"

namespace phimetric::kernels::omp {

namespace {

using Index = std::int64_t;

Index signed_size(std::size_t n) { return static_cast<Index>(n); }

}  // namespace

std::vector<TripleTerms> evaluate_triples(const PhiMetricSpace& space,
                                          std::span<const Triple> triples) {
  std::vector<TripleTerms> out(triples.size());
  slots::FirstError error;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < signed_size(triples.size()); ++i) {
    try {
      out[i] = slots::triple_terms(space, triples[i]);
    } catch (...) {
      error.capture(static_cast<std::size_t>(i));
    }
  }
  error.rethrow_if_any();
  return out;
}

std::vector<double> evaluate_phi(const PhiMetricSpace& space, std::span<const Triple> triples) {
  std::vector<double> out(triples.size());
  slots::FirstError error;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < signed_size(triples.size()); ++i) {
    try {
      out[i] = space.phi(triples[i].x, triples[i].y, triples[i].z);
    } catch (...) {
      error.capture(static_cast<std::size_t>(i));
    }
  }
  error.rethrow_if_any();
  return out;
}

DistanceMatrix distance_matrix(const PhiMetricSpace& space, std::span<const Point> points) {
  DistanceMatrix out(points.size());
  slots::FirstError error;
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < signed_size(points.size()); ++i) {
    try {
      slots::distance_row(space, points, static_cast<std::size_t>(i), out);
    } catch (...) {
      error.capture(static_cast<std::size_t>(i));
    }
  }
  error.rethrow_if_any();
  return out;
}

std::vector<double> forward_row_max(const PhiMetricSpace& space, std::span<const Point> points) {
  std::vector<double> out(points.size(), 0.0);
  slots::FirstError error;
#pragma omp parallel for schedule(dynamic, 8)
  for (Index n = 0; n < signed_size(points.size()); ++n) {
    try {
      out[n] = slots::row_max(space, points, static_cast<std::size_t>(n));
    } catch (...) {
      error.capture(static_cast<std::size_t>(n));
    }
  }
  error.rethrow_if_any();
  return out;
}

double max_pairwise_distance(const PhiMetricSpace& space, std::span<const Point> points) {
  const std::vector<double> rows = forward_row_max(space, points);
  double best = 0.0;
  for (double r : rows) best = std::max(best, r);
  return best;
}

std::vector<MapPairTerms> evaluate_map_pairs(const PhiMetricSpace& space, const MapFn& map,
                                             const Box& domain,
                                             std::span<const std::pair<Point, Point>> pairs) {
  std::vector<MapPairTerms> out(pairs.size());
  slots::FirstError error;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < signed_size(pairs.size()); ++i) {
    try {
      out[i] = slots::map_pair_terms(space, map, domain, pairs[i]);
    } catch (...) {
      error.capture(static_cast<std::size_t>(i));
    }
  }
  error.rethrow_if_any();
  return out;
}

PairBoundScan cauchy_pair_bounds(const PhiMetricSpace& space, std::span<const Point> trace,
                                double k, double tol) {
  PairBoundScan scan;
  if (trace.size() < 2) return scan;
  std::vector<std::vector<PairBound>> rows(trace.size());
  std::vector<std::size_t> counts(trace.size(), 0);
  slots::FirstError error;
#pragma omp parallel for schedule(dynamic, 4)
  for (Index m = 1; m < signed_size(trace.size()); ++m) {
    try {
      counts[m] = slots::cauchy_row(space, trace, static_cast<std::size_t>(m), k, tol, rows[m]);
    } catch (...) {
      error.capture(static_cast<std::size_t>(m));
    }
  }
  error.rethrow_if_any();
  for (std::size_t m = 1; m < trace.size(); ++m) {
    scan.pairs_checked += counts[m];
    scan.violations.insert(scan.violations.end(), rows[m].begin(), rows[m].end());
  }
  return scan;
}

std::vector<unsigned char> balls_contained(const DistanceMatrix& distances,
                                           std::span<const std::size_t> centers, double radius,
                                           std::span<const unsigned char> member) {
  std::vector<unsigned char> out(centers.size(), 0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < signed_size(centers.size()); ++i) {
    out[i] = slots::ball_contained(distances, centers[i], radius, member);
  }
  return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  slots::FirstError error;
#pragma omp parallel for schedule(dynamic, 1)
  for (Index i = 0; i < signed_size(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      error.capture(static_cast<std::size_t>(i));
    }
  }
  error.rethrow_if_any();
}

}  // namespace phimetric::kernels::omp
