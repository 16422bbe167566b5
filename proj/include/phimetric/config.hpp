#pragma once

// Experiment configuration: a `key = value` text file, one experiment per
// file. '#' starts a comment. Keys are listed in README.md; unknown keys are
// rejected so typos do not silently fall back to defaults.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phimetric/point.hpp"
#include "phimetric/sampler.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

class Config {
 public:
  /// Throws ConfigurationError on malformed lines, duplicate or unknown keys.
  static Config parse(std::string_view text, std::string source = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& source() const noexcept { return source_; }
  /// Directory relative paths in the file are resolved against.
  const std::filesystem::path& base_dir() const noexcept { return base_dir_; }

  std::string get(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t require_u64(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list of numbers.
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  std::filesystem::path resolve_path(const std::string& key) const;

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

 private:
  std::map<std::string, std::string> values_;
  std::string source_;
  std::filesystem::path base_dir_;
};

/// Every key the parser accepts, sorted.
const std::vector<std::string>& known_config_keys();

/// Ids accepted in `space =`, sorted.
std::vector<std::string> space_recipe_ids();

/// `box.lo` / `box.hi` (scalars broadcast to `dim`); nullopt when absent.
std::optional<Box> config_box(const Config& config, std::size_t dim);

/// Builds the space named by `space` (default squared-euclidean) of dimension
/// `space.dim` (default 1) on the config box. `fallback_box` is used when the
/// config gives none. Throws ConfigurationError listing known ids.
PhiMetricSpace build_space(const Config& config,
                           const std::optional<Box>& fallback_box = std::nullopt);

/// Seeded sampler from `sampler.*`; the seed is mandatory unless overridden.
Sampler config_sampler(const Config& config, std::optional<std::uint64_t> seed_override,
                       std::size_t default_count);

}  // namespace phimetric
