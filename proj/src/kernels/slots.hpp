#pragma once

// Per-slot computations shared by the serial and OpenMP kernels. Both
// variants call exactly these functions, which is what makes their outputs
// bitwise identical.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <vector>

#include "phimetric/kernels.hpp"

namespace phimetric::kernels::slots {

inline TripleTerms triple_terms(const PhiMetricSpace& s, const Triple& t) {
  return TripleTerms{
      s.distance(t.x, t.x),     s.distance(t.x, t.y),     s.distance(t.y, t.x),
      s.distance(t.x, t.z),     s.distance(t.z, t.y),     s.phi(t.x, t.y, t.z),
      s.phi(t.y, t.x, t.z),     s.phi(t.x, t.y, t.x),     s.phi(t.x, t.y, t.y),
  };
}

inline void distance_row(const PhiMetricSpace& s, std::span<const Point> pts, std::size_t i,
                         DistanceMatrix& out) {
  for (std::size_t j = i + 1; j < pts.size(); ++j) out.set(i, j, s.distance(pts[i], pts[j]));
}

inline double row_max(const PhiMetricSpace& s, std::span<const Point> pts, std::size_t n) {
  double best = 0.0;
  for (std::size_t m = n + 1; m < pts.size(); ++m) best = std::max(best, s.distance(pts[n], pts[m]));
  return best;
}

inline MapPairTerms map_pair_terms(const PhiMetricSpace& s, const MapFn& map, const Box& domain,
                                   const std::pair<Point, Point>& pair) {
  const Point& x = pair.first;
  const Point& y = pair.second;
  const Point tx = map(x);
  const Point ty = map(y);
  return MapPairTerms{s.distance(x, y), s.distance(tx, ty), s.distance(x, tx), s.distance(y, ty),
                      domain.contains(tx), domain.contains(ty)};
}

/// All n < m for one m. The phi tail sum is accumulated from n = m-2 downward.
inline std::size_t cauchy_row(const PhiMetricSpace& s, std::span<const Point> pts, std::size_t m,
                             double k, double tol, std::vector<PairBound>& out) {
  const std::size_t start = out.size();
  const double d10 = s.distance(pts[1], pts[0]);
  const double scale = d10 / (1.0 - k);
  double phi_sum = 0.0;
  std::size_t checked = 0;
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t n = m - 1 - step;
    if (n + 2 <= m) phi_sum += s.phi(pts[m], pts[n], pts[n + 1]);
    const double lhs = s.distance(pts[m], pts[n]);
    const double rhs = std::pow(k, static_cast<double>(n)) * scale + phi_sum + tol;
    ++checked;
    if (!(lhs <= rhs)) out.push_back(PairBound{m, n, lhs, rhs});
  }
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
  return checked;
}

inline unsigned char ball_contained(const DistanceMatrix& d, std::size_t c, double radius,
                                    std::span<const unsigned char> member) {
  const auto row = d.row(c);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] < radius && !member[j]) return 0;
  }
  return 1;
}

/// Keeps the exception thrown at the lowest index.
class FirstError {
 public:
  void capture(std::size_t index) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (index < index_) {
      index_ = index;
      error_ = std::current_exception();
    }
  }
  void rethrow_if_any() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::size_t index_ = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error_;
};

}  // namespace phimetric::kernels::slots
