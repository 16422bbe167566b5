#include "phimetric/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "phimetric/constructions.hpp"
#include "phimetric/errors.hpp"

namespace phimetric {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  return out;
}

double parse_double(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigurationError("config key '" + key + "': '" + text + "' is not a number");
  }
  return v;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

PhiMetricSpace recipe(const std::string& id, const Config& config, std::size_t dim,
                      const std::optional<Box>& box);

PhiMetricSpace require_box_recipe(const std::string& id, const std::optional<Box>& box) {
  if (!box) throw ConfigurationError("space '" + id + "' needs box.lo and box.hi");
  return id == "squared-euclidean" ? squared_euclidean(*box) : broken_phi_zero(*box);
}

PhiMetricSpace recipe(const std::string& id, const Config& config, std::size_t dim,
                      const std::optional<Box>& box) {
  if (id == "squared-euclidean" || id == "broken-phi-zero") return require_box_recipe(id, box);
  if (id == "euclidean") return from_metric(euclidean_metric(), dim, box);
  if (id == "s-metric") return from_s_metric(standard_s_metric(), dim, box);
  if (id == "b-metric") return from_b_metric(power_b_metric(config.get_double("space.K", 2.0)), dim, box);
  if (id == "strong-b-metric") {
    return from_strong_b_metric(hinged_strong_b_metric(config.get_double("space.K", 2.0)), dim,
                                box);
  }
  if (id == "lp") return lp_quasinorm_space(config.get_double("space.p", 0.5), dim, box);
  if (id == "discrete") return discrete_space(dim, box);
  if (id == "square") {
    const std::string base = config.get("space.base", "squared-euclidean");
    if (base == "square" || base == "product") {
      throw ConfigurationError("space.base must be a non-composite recipe");
    }
    return square(recipe(base, config, dim, box));
  }
  if (id == "product") {
    const auto factors = split(config.require("space.factors"), ',');
    std::vector<PhiMetricSpace> spaces;
    for (const auto& f : factors) {
      if (f == "square" || f == "product") {
        throw ConfigurationError("space.factors must name non-composite recipes");
      }
      spaces.push_back(recipe(f, config, dim, box));
    }
    return product(spaces);
  }
  throw ConfigurationError("unknown space '" + id + "' (known: " + join(space_recipe_ids()) + ")");
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k{
        "space",           "space.K",           "space.p",         "space.dim",
        "space.factors",   "space.base",        "box.lo",          "box.hi",
        "sampler.seed",    "sampler.strategy",  "sampler.count",   "sampler.sigma",
        "check.tol",       "check.eps",         "solve.map",       "solve.kind",
        "solve.x0",        "solve.tol",         "solve.max_iter",  "solve.stall_window",
        "solve.certify",   "solve.affine.a",    "solve.affine.b",  "refine.cloud",
        "refine.i_max",    "refine.exclusion",  "refine.containment_factor",
        "cover.balls",     "cover.random_balls", "cover.eps",      "cover.cloud",
        "trace.input",     "trace.map",         "trace.x0",        "trace.steps",
        "trace.tol",       "trace.limit",       "trace.affine.a",  "trace.affine.b"};
    std::sort(k.begin(), k.end());
    return k;
  }();
  return keys;
}

Config Config::parse(std::string_view text, std::string source) {
  Config config;
  config.source_ = std::move(source);
  std::stringstream ss{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  const auto& known = known_config_keys();
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = config.source_ + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigurationError(where + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigurationError(where + ": empty key or value");
    if (!std::binary_search(known.begin(), known.end(), key)) {
      throw ConfigurationError(where + ": unknown key '" + key + "'");
    }
    if (config.values_.count(key)) throw ConfigurationError(where + ": duplicate key '" + key + "'");
    config.values_[key] = value;
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Config config = parse(buf.str(), path.string());
  config.base_dir_ = path.parent_path();
  return config;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigurationError(source_ + ": missing required key '" + key + "'");
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? parse_double(require(key), key) : fallback;
}

double Config::require_double(const std::string& key) const {
  return parse_double(require(key), key);
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
  if (!has(key)) return fallback;
  const std::string text = require(key);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigurationError("config key '" + key + "': '" + text + "' is not a count");
  }
  return v;
}

std::uint64_t Config::require_u64(const std::string& key) const {
  const std::string text = require(key);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigurationError("config key '" + key + "': '" + text + "' is not an unsigned integer");
  }
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = require(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigurationError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& part : split(require(key), ',')) out.push_back(parse_double(part, key));
  return out;
}

std::filesystem::path Config::resolve_path(const std::string& key) const {
  std::filesystem::path p = require(key);
  return p.is_absolute() ? p : base_dir_ / p;
}

std::vector<std::string> space_recipe_ids() {
  return {"b-metric", "broken-phi-zero", "discrete", "euclidean",  "lp",
          "product",  "s-metric",        "square",   "squared-euclidean", "strong-b-metric"};
}

std::optional<Box> config_box(const Config& config, std::size_t dim) {
  if (!config.has("box.lo") && !config.has("box.hi")) return std::nullopt;
  auto lo = config.get_doubles("box.lo", {});
  auto hi = config.get_doubles("box.hi", {});
  if (lo.empty() || hi.empty()) throw ConfigurationError("box needs both box.lo and box.hi");
  if (lo.size() == 1) lo.assign(dim, lo[0]);
  if (hi.size() == 1) hi.assign(dim, hi[0]);
  if (lo.size() != dim || hi.size() != dim) {
    throw ConfigurationError("box.lo/box.hi must give 1 or " + std::to_string(dim) + " values");
  }
  try {
    return Box(lo, hi);
  } catch (const InputError& e) {
    throw ConfigurationError(std::string("invalid box: ") + e.what());
  }
}

PhiMetricSpace build_space(const Config& config, const std::optional<Box>& fallback_box) {
  const std::string id = config.get("space", "squared-euclidean");
  const std::size_t dim =
      config.get_size("space.dim", fallback_box ? fallback_box->dimension() : 1);
  if (dim == 0) throw ConfigurationError("space.dim must be at least 1");
  auto box = config_box(config, dim);
  if (!box) box = fallback_box;
  return recipe(id, config, dim, box);
}

Sampler config_sampler(const Config& config, std::optional<std::uint64_t> seed_override,
                       std::size_t default_count) {
  Sampler s;
  s.seed = seed_override ? *seed_override : config.require_u64("sampler.seed");
  s.strategy = parse_sampling_strategy(config.get("sampler.strategy", "uniform"));
  s.count = config.get_size("sampler.count", default_count);
  s.sigma = config.get_double("sampler.sigma", 1.0);
  if (s.count == 0) throw ConfigurationError("sampler.count must be positive");
  return s;
}

}  // namespace phimetric
