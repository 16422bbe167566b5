#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace phimetric {

/// A point of R^n with finite coordinates. Equality is exact coordinate equality.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dimension() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Axis-aligned box [lo_i, hi_i] in R^n.
class Box {
 public:
  Box(std::vector<double> lo, std::vector<double> hi);
  /// The cube [lo, hi]^dimension.
  static Box cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const noexcept { return lo_.size(); }
  double lo(std::size_t i) const { return lo_[i]; }
  double hi(std::size_t i) const { return hi_[i]; }
  std::span<const double> lo() const noexcept { return lo_; }
  std::span<const double> hi() const noexcept { return hi_; }

  bool contains(const Point& p) const;
  /// True iff every point of `inner` lies in this box.
  bool contains(const Box& inner) const;
  Point clamp(const Point& p) const;
  Point center() const;
  /// Largest side length.
  double extent() const;
  /// All 2^n corners, in binary counting order.
  std::vector<Point> corners() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

}  // namespace phimetric
