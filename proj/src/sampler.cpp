#include "phimetric/sampler.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "phimetric/errors.hpp"

namespace phimetric {

std::string to_string(SamplingStrategy strategy) {
  switch (strategy) {
    case SamplingStrategy::kUniformInBox: return "uniform-in-box";
    case SamplingStrategy::kGaussianAroundAnchor: return "gaussian-around-anchor";
    case SamplingStrategy::kCorpusReplay: return "corpus-replay";
  }
  return "unknown";
}

SamplingStrategy parse_sampling_strategy(std::string_view text) {
  if (text == "uniform" || text == "uniform-in-box") return SamplingStrategy::kUniformInBox;
  if (text == "gaussian" || text == "gaussian-around-anchor") {
    return SamplingStrategy::kGaussianAroundAnchor;
  }
  if (text == "corpus" || text == "corpus-replay") return SamplingStrategy::kCorpusReplay;
  throw ConfigurationError("unknown sampling strategy '" + std::string(text) +
                           "' (known: uniform, gaussian, corpus)");
}

Sampler Sampler::with_seed(std::uint64_t new_seed) const {
  Sampler s = *this;
  s.seed = new_seed;
  return s;
}

Sampler Sampler::with_count(std::size_t new_count) const {
  Sampler s = *this;
  s.count = new_count;
  return s;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Box resolve_box(const Sampler& sampler, const PhiMetricSpace& space) {
  if (sampler.box) {
    if (sampler.box->dimension() != space.dimension()) {
      throw DomainError("sampler box dimension differs from space '" + space.label() + "'");
    }
    return *sampler.box;
  }
  if (space.domain()) return *space.domain();
  throw ConfigurationError("space '" + space.label() +
                           "' is unbounded; the sampler needs an explicit box");
}

PointStream::PointStream(const Sampler& sampler, Box box)
    : sampler_(sampler), box_(std::move(box)), engine_(sampler.seed) {
  if (sampler_.strategy == SamplingStrategy::kCorpusReplay) {
    if (sampler_.corpus.empty()) throw ConfigurationError("corpus-replay sampler has no corpus");
    for (const Point& p : sampler_.corpus) {
      if (p.dimension() != box_.dimension()) {
        throw DomainError("corpus point dimension differs from the sampling box");
      }
    }
  }
  if (sampler_.strategy == SamplingStrategy::kGaussianAroundAnchor) {
    if (!(sampler_.sigma > 0.0)) throw ConfigurationError("gaussian sampler needs sigma > 0");
    if (sampler_.anchor && sampler_.anchor->dimension() != box_.dimension()) {
      throw DomainError("gaussian anchor dimension differs from the sampling box");
    }
  }
}

double PointStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PointStream::uniform_open_low() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double PointStream::gaussian() {
  if (spare_gaussian_) {
    const double g = *spare_gaussian_;
    spare_gaussian_.reset();
    return g;
  }
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = r * std::sin(theta);
  return r * std::cos(theta);
}

Point PointStream::next() {
  const std::size_t n = box_.dimension();
  switch (sampler_.strategy) {
    case SamplingStrategy::kUniformInBox: {
      std::vector<double> c(n);
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = box_.lo(i) + (box_.hi(i) - box_.lo(i)) * uniform();
      }
      return Point(std::move(c));
    }
    case SamplingStrategy::kGaussianAroundAnchor: {
      const Point anchor = sampler_.anchor ? *sampler_.anchor : box_.center();
      std::vector<double> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = anchor[i] + sampler_.sigma * gaussian();
      return box_.clamp(Point(std::move(c)));
    }
    case SamplingStrategy::kCorpusReplay: {
      const Point& p = sampler_.corpus[replay_position_ % sampler_.corpus.size()];
      ++replay_position_;
      return p;
    }
  }
  throw ConfigurationError("unknown sampling strategy");
}

}  // namespace phimetric
