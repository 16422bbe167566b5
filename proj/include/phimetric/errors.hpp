#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phimetric/point.hpp"

namespace phimetric {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: non-finite coordinates, empty lists, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Points of the wrong dimension, or spaces that do not share a domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A space or experiment cannot be configured as requested.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A distance, phi or map evaluator threw; carries the points it was given.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<Point> points)
      : Error(what), points_(std::move(points)) {}

  const std::vector<Point>& points() const noexcept { return points_; }

 private:
  std::vector<Point> points_;
};

/// No rung of the candidate ladder survived sampled falsification.
class ModulusEstimationError : public Error {
 public:
  using Error::Error;
};

/// Every sampled ratio had a zero denominator.
class DegenerateMapError : public Error {
 public:
  using Error::Error;
};

/// Stone refinement ran out of levels before covering the cloud.
class RefinementError : public Error {
 public:
  RefinementError(const std::string& what, std::vector<std::size_t> uncovered)
      : Error(what), uncovered_(std::move(uncovered)) {}

  const std::vector<std::size_t>& uncovered() const noexcept { return uncovered_; }

 private:
  std::vector<std::size_t> uncovered_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The recorded data cannot decide the question (e.g. diameters stay large).
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// A nested family that is not nested, or whose intersection is empty.
class FamilyInvalidError : public Error {
 public:
  using Error::Error;
};

}  // namespace phimetric
