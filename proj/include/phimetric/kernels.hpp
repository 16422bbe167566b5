#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; both produce bitwise-identical results (each output slot is
// computed by the same expression, reductions are order-fixed), which the
// kernel tests check and bench/ compares for speed.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phimetric/point.hpp"
#include "phimetric/space.hpp"

namespace phimetric::kernels {

enum class Backend { kSerial, kOpenMP };

/// kOpenMP unless PHIMETRIC_SERIAL is set in the environment.
Backend default_backend();
std::string to_string(Backend backend);

struct Triple {
  Point x;
  Point y;
  Point z;
};

/// All distance and phi evaluations the axiom checker needs for one triple.
struct TripleTerms {
  double d_xx;
  double d_xy;
  double d_yx;
  double d_xz;
  double d_zy;
  double phi_xyz;
  double phi_yxz;
  double phi_xyx;
  double phi_xyy;
};

std::vector<TripleTerms> evaluate_triples(const PhiMetricSpace& space,
                                          std::span<const Triple> triples, Backend backend);

/// phi(x, y, z) for every triple.
std::vector<double> evaluate_phi(const PhiMetricSpace& space, std::span<const Triple> triples,
                                 Backend backend);

/// Dense symmetric matrix of pairwise distances; only i < j is evaluated.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : size_(size), values_(size * size, 0.0) {}

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * size_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    values_[i * size_ + j] = v;
    values_[j * size_ + i] = v;
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * size_, size_);
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> values_;
};

DistanceMatrix distance_matrix(const PhiMetricSpace& space, std::span<const Point> points,
                               Backend backend);

/// max over i < j of d(p_i, p_j); 0 for fewer than two points.
double max_pairwise_distance(const PhiMetricSpace& space, std::span<const Point> points,
                             Backend backend);

/// M[n] = max over m > n of d(p_n, p_m), M[last] = 0.
std::vector<double> forward_row_max(const PhiMetricSpace& space, std::span<const Point> points,
                                    Backend backend);

using MapFn = std::function<Point(const Point&)>;

/// Evaluations needed to certify a contraction on one sampled pair.
struct MapPairTerms {
  double d_xy;
  double d_txty;
  double d_xtx;
  double d_yty;
  bool tx_in_domain;
  bool ty_in_domain;
};

std::vector<MapPairTerms> evaluate_map_pairs(const PhiMetricSpace& space, const MapFn& map,
                                             const Box& domain,
                                             std::span<const std::pair<Point, Point>> pairs,
                                             Backend backend);

/// One violated instance of the Cauchy-rate pair bound
///   d(x_m, x_n) <= k^n/(1-k) d(x_1, x_0) + sum_{i=n}^{m-2} phi(x_m, x_i, x_{i+1}) + tol.
struct PairBound {
  std::size_t m;
  std::size_t n;
  double lhs;
  double rhs;
};

struct PairBoundScan {
  std::size_t pairs_checked = 0;
  std::vector<PairBound> violations;  // sorted by (m, n)
};

PairBoundScan cauchy_pair_bounds(const PhiMetricSpace& space, std::span<const Point> trace,
                                double k, double tol, Backend backend);

/// For each center c: 1 iff every j with d(c, j) < radius has member[j] != 0.
std::vector<unsigned char> balls_contained(const DistanceMatrix& distances,
                                           std::span<const std::size_t> centers, double radius,
                                           std::span<const unsigned char> member, Backend backend);

/// Runs body(i) for i in [0, n). Under OpenMP the first exception by index is
/// rethrown after the loop, matching what the serial loop would throw.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Backend backend);

namespace serial {
std::vector<TripleTerms> evaluate_triples(const PhiMetricSpace&, std::span<const Triple>);
std::vector<double> evaluate_phi(const PhiMetricSpace&, std::span<const Triple>);
DistanceMatrix distance_matrix(const PhiMetricSpace&, std::span<const Point>);
double max_pairwise_distance(const PhiMetricSpace&, std::span<const Point>);
std::vector<double> forward_row_max(const PhiMetricSpace&, std::span<const Point>);
std::vector<MapPairTerms> evaluate_map_pairs(const PhiMetricSpace&, const MapFn&, const Box&,
                                             std::span<const std::pair<Point, Point>>);
PairBoundScan cauchy_pair_bounds(const PhiMetricSpace&, std::span<const Point>, double, double);
std::vector<unsigned char> balls_contained(const DistanceMatrix&, std::span<const std::size_t>,
                                           double, std::span<const unsigned char>);
void for_each_index(std::size_t, const std::function<void(std::size_t)>&);
}  // namespace serial

namespace omp {
std::vector<TripleTerms> evaluate_triples(const PhiMetricSpace&, std::span<const Triple>);
std::vector<double> evaluate_phi(const PhiMetricSpace&, std::span<const Triple>);
DistanceMatrix distance_matrix(const PhiMetricSpace&, std::span<const Point>);
double max_pairwise_distance(const PhiMetricSpace&, std::span<const Point>);
std::vector<double> forward_row_max(const PhiMetricSpace&, std::span<const Point>);
std::vector<MapPairTerms> evaluate_map_pairs(const PhiMetricSpace&, const MapFn&, const Box&,
                                             std::span<const std::pair<Point, Point>>);
PairBoundScan cauchy_pair_bounds(const PhiMetricSpace&, std::span<const Point>, double, double);
std::vector<unsigned char> balls_contained(const DistanceMatrix&, std::span<const std::size_t>,
                                           double, std::span<const unsigned char>);
void for_each_index(std::size_t, const std::function<void(std::size_t)>&);
}  // namespace omp

}  // namespace phimetric::kernels
