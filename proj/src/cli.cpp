#include "phimetric/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phimetric/axioms.hpp"
#include "phimetric/config.hpp"
#include "phimetric/errors.hpp"
#include "phimetric/fixedpoint.hpp"
#include "phimetric/io.hpp"
#include "phimetric/maps.hpp"
#include "phimetric/sequences.hpp"
#include "phimetric/topology.hpp"

namespace phimetric {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Context {
  Config config;
  fs::path out_dir;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  std::ostream& out;
  std::ostream& err;
};

void note(const Context& ctx, const std::string& line) {
  if (ctx.verbose) ctx.err << line << '\n';
}

std::string write_json(const Context& ctx, const std::string& name, const Json& value) {
  const auto path = io::write_file(ctx.out_dir, name, io::canonical_dump(value));
  note(ctx, "wrote " + path.string());
  return path.string();
}

SelfMap config_map(const Config& config, const std::string& prefix) {
  const std::string id = config.require(prefix + ".map");
  if (id == "affine") {
    const auto box = config_box(config, config.get_size("space.dim", 1));
    if (!box) throw ConfigurationError("affine map needs box.lo and box.hi");
    return affine_map(config.require_double(prefix + ".affine.a"),
                      config.require_double(prefix + ".affine.b"), *box);
  }
  return builtin_map(id);
}

Point config_point(const Config& config, const std::string& key, std::size_t dim) {
  auto coords = config.get_doubles(key, {});
  if (coords.empty()) throw ConfigurationError("missing required key '" + key + "'");
  if (coords.size() == 1 && dim > 1) coords.assign(dim, coords[0]);
  if (coords.size() != dim) {
    throw ConfigurationError("'" + key + "' must give " + std::to_string(dim) + " coordinates");
  }
  return Point(std::move(coords));
}

int cmd_check(Context& ctx) {
  const PhiMetricSpace space = build_space(ctx.config);
  const Sampler sampler = config_sampler(ctx.config, ctx.seed, 10000);
  const double tol = ctx.config.get_double("check.tol", kDefaultTolerance);
  const auto eps = ctx.config.get_doubles("check.eps", {1.0, 0.1, 0.01});
  note(ctx, "checking " + space.label() + " on " + std::to_string(sampler.count) + " samples");
  AxiomReport report = check_axioms(space, sampler, tol);
  report = merge_reports(std::move(report), check_phi_continuity(space, sampler, eps));
  Json json = io::to_json(report);
  json["seed"] = sampler.seed;
  write_json(ctx, "check_report.json", json);
  std::string line = space.label() + ":";
  for (const auto& [axiom, verdict] : report.verdicts) {
    line += " " + axiom_id(axiom) + "=" + (verdict == Verdict::kViolated ? "FAIL" : "ok");
  }
  ctx.out << line << '\n';
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_solve(Context& ctx) {
  const SelfMap map = config_map(ctx.config, "solve");
  const PhiMetricSpace space = build_space(ctx.config, map.domain);
  const ContractionKind kind = ctx.config.has("solve.kind")
                                   ? parse_contraction_kind(ctx.config.require("solve.kind"))
                                   : map.intended;
  SolveOptions options;
  options.tol = ctx.config.get_double("solve.tol", kDefaultSolveTolerance);
  options.max_iter = ctx.config.get_size("solve.max_iter", options.max_iter);
  options.stall_window = ctx.config.get_size("solve.stall_window", options.stall_window);
  const Point x0 = config_point(ctx.config, "solve.x0", space.dimension());

  Json report = Json::object();
  if (ctx.config.get_bool("solve.certify", true)) {
    Sampler sampler = config_sampler(ctx.config, ctx.seed, 10000);
    sampler.box = map.domain;
    options.certificate = certify(space, map, sampler, kind);
    report["certificate"] = io::to_json(*options.certificate);
    report["seed"] = sampler.seed;
    note(ctx, "certificate k_estimate " + io::format_double(options.certificate->k_estimate));
  }
  const FixedPointResult result = solve(kind, space, map, x0, options);
  std::ostringstream csv;
  io::write_trace_csv(csv, result.trace);
  io::write_file(ctx.out_dir, "trace.csv", csv.str());
  report["result"] = io::to_json(result, "trace.csv");
  if (result.converged() && kind == ContractionKind::kBanach && result.certified_k &&
      *result.certified_k > 0.0 && *result.certified_k < 1.0 && result.trace.size() >= 3) {
    report["rate_bound"] = io::to_json(rate_bound_check(result.trace, *result.certified_k));
  }
  write_json(ctx, "solve_result.json", report);
  ctx.out << map.label << " " << to_string(kind) << ": " << to_string(result.status) << " at "
          << result.point.to_string() << " after " << result.iterations << " iterations\n";
  if (!result.converged() && !result.diagnostic.empty()) ctx.err << result.diagnostic << '\n';
  return result.converged() ? kExitOk : kExitCheckFailed;
}

PointCloud load_cloud(const Context& ctx, const std::string& key) {
  auto points = io::read_points_csv(ctx.config.resolve_path(key));
  if (points.empty()) throw InputError("cloud file '" + ctx.config.require(key) + "' has no points");
  const std::size_t dim = points[0].dimension();
  std::optional<Box> bounds;
  if (!ctx.config.has("box.lo")) {
    std::vector<double> lo(points[0].coords().begin(), points[0].coords().end());
    std::vector<double> hi = lo;
    for (const Point& p : points) {
      if (p.dimension() != dim) throw InputError("cloud rows differ in dimension");
      for (std::size_t i = 0; i < dim; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
    bounds = Box(lo, hi);
  }
  Config adjusted = ctx.config;
  if (!adjusted.has("space.dim")) adjusted.set("space.dim", std::to_string(dim));
  return PointCloud(build_space(adjusted, bounds), std::move(points));
}

/// "x1,...,xn r; x1,...,xn r; ..." or cover.random_balls = N.
std::vector<Ball> config_balls(const Context& ctx, const PointCloud& cloud) {
  std::vector<Ball> balls;
  if (ctx.config.has("cover.balls")) {
    std::stringstream ss(ctx.config.require("cover.balls"));
    std::string item;
    while (std::getline(ss, item, ';')) {
      std::stringstream parts(item);
      std::vector<double> nums;
      std::string tok;
      while (parts >> tok) {
        std::stringstream cells(tok);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
          if (cell.empty()) continue;
          try {
            nums.push_back(std::stod(cell));
          } catch (const std::exception&) {
            throw ConfigurationError("cover.balls: '" + cell + "' is not a number");
          }
        }
      }
      if (nums.empty()) continue;
      if (nums.size() != cloud.space().dimension() + 1) {
        throw ConfigurationError("cover.balls: each ball needs " +
                                 std::to_string(cloud.space().dimension()) +
                                 " center coordinates and a radius");
      }
      const double r = nums.back();
      nums.pop_back();
      balls.push_back(Ball{Point(std::move(nums)), r});
    }
    return balls;
  }
  const std::size_t count = ctx.config.get_size("cover.random_balls", 0);
  if (count == 0) throw ConfigurationError("give cover.balls or cover.random_balls");
  Sampler sampler = config_sampler(ctx.config, ctx.seed, 1);
  if (!cloud.space().domain()) throw ConfigurationError("cover.random_balls needs a box");
  PointStream stream(sampler, *cloud.space().domain());
  return random_ball_cover(cloud, count, stream);
}

int cmd_refine(Context& ctx) {
  const PointCloud cloud = load_cloud(ctx, "refine.cloud");
  const auto balls = config_balls(ctx, cloud);
  const Cover cover = cover_from_balls(cloud, balls);
  require_cover(cloud, cover);
  RefinementOptions options;
  if (ctx.config.has("refine.i_max")) options.i_max = ctx.config.get_size("refine.i_max", 0);
  options.containment_factor =
      ctx.config.get_double("refine.containment_factor", kStoneContainmentFactor);
  const std::string exclusion = ctx.config.get("refine.exclusion", "earlier-levels");
  if (exclusion == "earlier-levels-and-sets") {
    options.exclusion = ExclusionRule::kEarlierLevelsAndEarlierSets;
  } else if (exclusion != "earlier-levels") {
    throw ConfigurationError("refine.exclusion must be earlier-levels or earlier-levels-and-sets");
  }
  Json report{{"space", cloud.space().label()}, {"cover", io::to_json(cover)},
              {"points", cloud.size()}, {"containment_factor", options.containment_factor}};
  try {
    const RefinementFamily family = stone_refinement(cloud, cover, options);
    const RefinementReport verification = verify_refinement(cloud, cover, family);
    report["family"] = io::to_json(family);
    report["verification"] = io::to_json(verification);
    write_json(ctx, "refinement.json", report);
    ctx.out << "refinement: " << family.members.size() << " members over "
            << family.levels_used << " levels; verification "
            << (verification.all_pass() ? "passed" : "FAILED") << '\n';
    return verification.all_pass() ? kExitOk : kExitCheckFailed;
  } catch (const RefinementError& e) {
    report["error"] = e.what();
    report["uncovered"] = e.uncovered();
    write_json(ctx, "refinement.json", report);
    ctx.err << e.what() << '\n';
    return kExitCheckFailed;
  }
}

int cmd_cover(Context& ctx) {
  const PointCloud cloud = load_cloud(ctx, "cover.cloud");
  const double eps = ctx.config.require_double("cover.eps");
  const IndexSet centers = epsilon_net(cloud, eps);
  std::vector<Ball> balls;
  for (std::size_t c : centers) balls.push_back(Ball{cloud[c], eps});
  const Cover cover = cover_from_balls(cloud, balls);
  bool covers = true;
  try {
    require_cover(cloud, cover);
  } catch (const InputError&) {
    covers = false;
  }
  write_json(ctx, "cover.json",
             Json{{"space", cloud.space().label()},
                  {"eps", eps},
                  {"centers", centers},
                  {"cover", io::to_json(cover)},
                  {"covers_cloud", covers},
                  {"points", cloud.size()}});
  ctx.out << "epsilon-net: " << centers.size() << " centers for " << cloud.size()
          << " points at eps " << eps << '\n';
  return covers ? kExitOk : kExitCheckFailed;
}

int cmd_trace(Context& ctx) {
  std::optional<Trace> trace;
  if (ctx.config.has("trace.input")) {
    auto points = io::read_points_csv(ctx.config.resolve_path("trace.input"));
    if (points.empty()) throw InputError("trace input has no points");
    Config adjusted = ctx.config;
    if (!adjusted.has("space.dim")) adjusted.set("space.dim", std::to_string(points[0].dimension()));
    trace.emplace(build_space(adjusted, std::nullopt), std::move(points));
  } else {
    const SelfMap map = config_map(ctx.config, "trace");
    const PhiMetricSpace space = build_space(ctx.config, map.domain);
    Point x = config_point(ctx.config, "trace.x0", space.dimension());
    trace.emplace(space);
    trace->append(x);
    const std::size_t steps = ctx.config.get_size("trace.steps", 50);
    for (std::size_t n = 0; n < steps; ++n) {
      x = map(x);
      trace->append(x);
    }
  }
  const double tol = ctx.config.get_double("trace.tol", 1e-9);
  Json report{{"space", trace->space().label()}, {"length", trace->size()}, {"tol", tol}};
  const TailResult cauchy = is_cauchy(*trace, tol);
  report["cauchy"] = Json{{"holds", cauchy.holds},
                          {"first_index", cauchy.first_index ? Json(*cauchy.first_index) : Json()}};
  report["bound"] = is_bounded(*trace).bound;
  if (ctx.config.has("trace.limit")) {
    const Point limit = config_point(ctx.config, "trace.limit", trace->space().dimension());
    const TailResult conv = converges_to(*trace, limit, tol);
    report["converges"] = Json{{"limit", io::to_json(limit)},
                               {"holds", conv.holds},
                               {"first_index", conv.first_index ? Json(*conv.first_index) : Json()}};
  }
  std::ostringstream csv;
  io::write_trace_csv(csv, *trace);
  io::write_file(ctx.out_dir, "trace.csv", csv.str());
  report["trace_ref"] = "trace.csv";
  write_json(ctx, "trace_report.json", report);
  ctx.out << "trace of " << trace->size() << " points: "
          << (cauchy.holds ? "consistent with Cauchy" : "not Cauchy at this horizon") << '\n';
  return kExitOk;
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("PHIMETRIC_OUT"); env != nullptr && *env != '\0') return env;
  return fs::current_path();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"phi-metric spaces: axiom checks, fixed points and refinements", "phimetric"};
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"check", "sample the phi-metric axioms of a space"},
      {"solve", "certify a map and run a fixed-point solver"},
      {"refine", "build and verify a Stone-type refinement of a ball cover"},
      {"cover", "greedy epsilon-net of a point cloud"},
      {"trace", "Cauchy, boundedness and convergence analysis of a sequence"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_dir, "output directory (default $PHIMETRIC_OUT or .)");
    sub->add_option("--seed", seed, "overrides sampler.seed");
    sub->add_flag("--verbose", verbose, "progress on stderr");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "phimetric: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Context ctx{Config::load(config_path), out_dir.empty() ? default_out_dir() : fs::path(out_dir),
                seed, verbose, out, err};
    if (command == "check") return cmd_check(ctx);
    if (command == "solve") return cmd_solve(ctx);
    if (command == "refine") return cmd_refine(ctx);
    if (command == "cover") return cmd_cover(ctx);
    return cmd_trace(ctx);
  } catch (const ConfigurationError& e) {
    err << "phimetric " << command << ": config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "phimetric " << command << ": input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "phimetric " << command << ": domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "phimetric " << command << ": " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace phimetric
