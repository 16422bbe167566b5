#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "phimetric/point.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

enum class SamplingStrategy { kUniformInBox, kGaussianAroundAnchor, kCorpusReplay };

std::string to_string(SamplingStrategy strategy);
/// Accepts "uniform", "gaussian", "corpus" (and the long forms). Throws ConfigurationError.
SamplingStrategy parse_sampling_strategy(std::string_view text);

/// Reproducible description of a point stream. Identical samplers yield
/// bit-identical streams.
struct Sampler {
  std::uint64_t seed = 0;
  SamplingStrategy strategy = SamplingStrategy::kUniformInBox;
  /// Number of draws (points, pairs or triples, depending on the consumer).
  std::size_t count = 1;
  /// Overrides the space's declared domain when set.
  std::optional<Box> box;
  /// Gaussian strategy: anchor (defaults to the box center) and spread.
  std::optional<Point> anchor;
  double sigma = 1.0;
  /// Corpus strategy: points replayed cyclically.
  std::vector<Point> corpus;

  Sampler with_seed(std::uint64_t new_seed) const;
  Sampler with_count(std::size_t new_count) const;
};

/// splitmix64 finaliser; used to derive independent seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

/// The sampling box for `space`: the sampler's own box, else the space domain.
/// Throws ConfigurationError when neither exists.
Box resolve_box(const Sampler& sampler, const PhiMetricSpace& space);

/// Stateful stream of points drawn according to a Sampler. Uniform and
/// Gaussian variates are derived from raw mt19937_64 output by fixed formulas,
/// so streams do not depend on the standard library's distribution classes.
class PointStream {
 public:
  PointStream(const Sampler& sampler, Box box);

  Point next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in (0, 1].
  double uniform_open_low();
  /// Standard normal variate (Box-Muller).
  double gaussian();

  const Box& box() const noexcept { return box_; }

 private:
  Sampler sampler_;
  Box box_;
  std::mt19937_64 engine_;
  std::size_t replay_position_ = 0;
  std::optional<double> spare_gaussian_;
};

}  // namespace phimetric
