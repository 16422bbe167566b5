#include "phimetric/point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "phimetric/errors.hpp"

namespace phimetric {

namespace {

void require_finite(const std::vector<double>& coords, const char* what) {
  if (coords.empty()) throw InputError(std::string(what) + " needs at least one coordinate");
  for (double c : coords) {
    if (!std::isfinite(c)) throw InputError(std::string(what) + " has a non-finite coordinate");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  require_finite(coords_, "point");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

std::string Point::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", coords_[i]);
    if (i > 0) out += ", ";
    out += buf;
  }
  return out + ")";
}

Box::Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_finite(lo_, "box lower corner");
  require_finite(hi_, "box upper corner");
  if (lo_.size() != hi_.size()) throw DomainError("box corners differ in dimension");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (lo_[i] > hi_[i]) throw InputError("box has lo > hi in coordinate " + std::to_string(i));
  }
}

Box Box::cube(std::size_t dimension, double lo, double hi) {
  return Box(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

bool Box::contains(const Point& p) const {
  if (p.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (p[i] < lo_[i] || p[i] > hi_[i]) return false;
  }
  return true;
}

bool Box::contains(const Box& inner) const {
  if (inner.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (inner.lo_[i] < lo_[i] || inner.hi_[i] > hi_[i]) return false;
  }
  return true;
}

Point Box::clamp(const Point& p) const {
  if (p.dimension() != dimension()) throw DomainError("clamp: dimension mismatch");
  std::vector<double> c(p.coords().begin(), p.coords().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::clamp(c[i], lo_[i], hi_[i]);
  return Point(std::move(c));
}

Point Box::center() const {
  std::vector<double> c(lo_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = lo_[i] + 0.5 * (hi_[i] - lo_[i]);
  return Point(std::move(c));
}

double Box::extent() const {
  double e = 0.0;
  for (std::size_t i = 0; i < lo_.size(); ++i) e = std::max(e, hi_[i] - lo_[i]);
  return e;
}

std::vector<Point> Box::corners() const {
  const std::size_t n = dimension();
  if (n >= 20) throw InputError("corners: dimension too large to enumerate");
  std::vector<Point> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1U ? hi_[i] : lo_[i];
    out.emplace_back(std::move(c));
  }
  return out;
}

}  // namespace phimetric
