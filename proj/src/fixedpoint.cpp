#include "phimetric/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "phimetric/errors.hpp"

namespace phimetric {

std::string to_string(ContractionKind kind) {
  switch (kind) {
    case ContractionKind::kBanach: return "banach";
    case ContractionKind::kKannan: return "kannan";
    case ContractionKind::kEdelstein: return "edelstein";
  }
  return "unknown";
}

ContractionKind parse_contraction_kind(std::string_view text) {
  if (text == "banach") return ContractionKind::kBanach;
  if (text == "kannan") return ContractionKind::kKannan;
  if (text == "edelstein") return ContractionKind::kEdelstein;
  throw ConfigurationError("unknown contraction kind '" + std::string(text) +
                           "' (expected banach, kannan or edelstein)");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kStagnated: return "stagnated";
    case SolveStatus::kDomainViolation: return "domain_violation";
    case SolveStatus::kNonFinite: return "non_finite";
    case SolveStatus::kRefused: return "refused";
  }
  return "unknown";
}

ContractionCertificate certify(const PhiMetricSpace& space, const SelfMap& map,
                               const Sampler& sampler, ContractionKind kind,
                               kernels::Backend backend) {
  const Box box = sampler.box ? *sampler.box : map.domain;
  PointStream stream(sampler, box);
  std::vector<std::pair<Point, Point>> pairs;
  pairs.reserve(sampler.count);
  for (std::size_t i = 0; i < sampler.count; ++i) {
    Point x = stream.next();
    Point y = stream.next();
    pairs.emplace_back(std::move(x), std::move(y));
  }
  const auto terms = kernels::evaluate_map_pairs(space, map.map, map.domain, pairs, backend);

  ContractionCertificate cert;
  cert.kind = kind;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const kernels::MapPairTerms& t = terms[i];
    if (!t.tx_in_domain || !t.ty_in_domain) {
      ++cert.domain_escapes;
      continue;
    }
    const double denom = kind == ContractionKind::kKannan ? t.d_xtx + t.d_yty : t.d_xy;
    if (!(denom > 0.0)) continue;
    ++cert.samples;
    const double ratio = t.d_txty / denom;
    cert.k_estimate = std::max(cert.k_estimate, ratio);
    bool violated = false;
    switch (kind) {
      case ContractionKind::kBanach: violated = ratio >= 1.0; break;
      case ContractionKind::kKannan: violated = ratio >= 0.5; break;
      case ContractionKind::kEdelstein: violated = t.d_txty >= t.d_xy; break;
    }
    if (violated) {
      ++cert.violation_count;
      if (cert.violations.size() < kMaxCertificateWitnesses) {
        cert.violations.push_back({pairs[i].first, pairs[i].second, t.d_txty, denom});
      }
    }
  }
  if (cert.samples == 0 && cert.domain_escapes < terms.size()) {
    throw DegenerateMapError("certify(" + map.label + "): every sampled " +
                             (kind == ContractionKind::kKannan ? "d(x,Tx) + d(y,Ty)" : "d(x,y)") +
                             " is zero");
  }
  return cert;
}

namespace {

enum class Flavor { kPlain, kStall };

FixedPointResult make_result(ContractionKind kind, SolveStatus status, Point point,
                             std::size_t iterations, double residual, Trace trace,
                             const SolveOptions& options, std::string diagnostic) {
  FixedPointResult r{kind,     status, std::move(point), iterations, residual, std::move(trace),
                     std::nullopt, std::nullopt, std::move(diagnostic)};
  if (options.certificate) {
    r.certified_k = options.certificate->k_estimate;
    if (kind == ContractionKind::kKannan && options.certificate->k_estimate < 1.0) {
      r.alpha = options.certificate->k_estimate / (1.0 - options.certificate->k_estimate);
    }
  }
  return r;
}

std::optional<Point> apply(const SelfMap& map, const Point& x) {
  try {
    return map(x);
  } catch (const InputError&) {
    return std::nullopt;  // a non-finite coordinate was produced
  }
}

FixedPointResult picard(ContractionKind kind, Flavor flavor, const PhiMetricSpace& space,
                        const SelfMap& map, const Point& x0, const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw InputError("solve: tol must be positive");
  if (options.max_iter < 1) throw InputError("solve: max_iter must be at least 1");
  space.require_dimension(x0);

  Trace trace(space);
  trace.append(x0);
  auto done = [&](SolveStatus status, const Point& x, std::size_t it, double residual,
                  std::string diagnostic) {
    return make_result(kind, status, x, it, residual, trace, options, std::move(diagnostic));
  };

  if (options.certificate && !options.certificate->passed()) {
    return done(SolveStatus::kRefused, x0, 0, 0.0,
                "certificate for " + to_string(options.certificate->kind) + " reports " +
                    std::to_string(options.certificate->violation_count) + " violations and " +
                    std::to_string(options.certificate->domain_escapes) +
                    " domain escapes; the hypothesis is not met");
  }
  if (!map.domain.contains(x0)) {
    return done(SolveStatus::kDomainViolation, x0, 0, 0.0,
                "start " + x0.to_string() + " lies outside the map domain");
  }

  Point x = x0;
  double best_residual = std::numeric_limits<double>::infinity();
  std::size_t best_at = 0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    const auto tx = apply(map, x);
    if (!tx) return done(SolveStatus::kNonFinite, x, it - 1, 0.0, "map produced a non-finite value");
    if (!map.domain.contains(*tx)) {
      return done(SolveStatus::kDomainViolation, x, it - 1, 0.0,
                  "iterate " + tx->to_string() + " left the map domain");
    }
    trace.append(*tx);
    const double step = trace.step_distances().back();
    x = *tx;
    const auto ttx = apply(map, x);
    if (!ttx) return done(SolveStatus::kNonFinite, x, it, 0.0, "map produced a non-finite value");
    const double residual = space.distance(*ttx, x);
    if (!std::isfinite(step) || !std::isfinite(residual)) {
      return done(SolveStatus::kNonFinite, x, it, residual, "distance became non-finite");
    }
    if (step < options.tol && residual < options.tol) {
      return done(SolveStatus::kConverged, x, it, residual, "");
    }
    if (residual < best_residual) {
      best_residual = residual;
      best_at = it;
    } else if (flavor == Flavor::kStall && it - best_at >= options.stall_window) {
      return done(SolveStatus::kStagnated, x, it, residual,
                  "no convergent subsequence detected at this horizon (residual has not "
                  "decreased for " +
                      std::to_string(options.stall_window) + " iterations)");
    }
    if (it == options.max_iter) {
      return done(SolveStatus::kMaxIterations, x, it, residual,
                  "max_iter reached; residual " + std::to_string(residual));
    }
  }
  return done(SolveStatus::kMaxIterations, x, options.max_iter, 0.0, "max_iter reached");
}

}  // namespace

FixedPointResult banach_solve(const PhiMetricSpace& space, const SelfMap& map, const Point& x0,
                              const SolveOptions& options) {
  return picard(ContractionKind::kBanach, Flavor::kPlain, space, map, x0, options);
}

FixedPointResult kannan_solve(const PhiMetricSpace& space, const SelfMap& map, const Point& x0,
                              const SolveOptions& options) {
  return picard(ContractionKind::kKannan, Flavor::kPlain, space, map, x0, options);
}

FixedPointResult edelstein_solve(const PhiMetricSpace& space, const SelfMap& map,
                                 const Point& x0, const SolveOptions& options) {
  return picard(ContractionKind::kEdelstein, Flavor::kStall, space, map, x0, options);
}

FixedPointResult solve(ContractionKind kind, const PhiMetricSpace& space, const SelfMap& map,
                       const Point& x0, const SolveOptions& options) {
  switch (kind) {
    case ContractionKind::kBanach: return banach_solve(space, map, x0, options);
    case ContractionKind::kKannan: return kannan_solve(space, map, x0, options);
    case ContractionKind::kEdelstein: return edelstein_solve(space, map, x0, options);
  }
  throw InputError("solve: unknown contraction kind");
}

std::vector<FixedPointResult> multi_start_solve(ContractionKind kind, const PhiMetricSpace& space,
                                                const SelfMap& map, std::span<const Point> starts,
                                                const SolveOptions& options,
                                                kernels::Backend backend) {
  std::vector<std::optional<FixedPointResult>> slots(starts.size());
  kernels::for_each_index(
      starts.size(), [&](std::size_t i) { slots[i] = solve(kind, space, map, starts[i], options); },
      backend);
  std::vector<FixedPointResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

RateBoundReport rate_bound_check(const Trace& trace, double k, double tol,
                                 kernels::Backend backend) {
  if (!(k > 0.0 && k < 1.0)) throw InputError("rate_bound_check: k must lie in (0, 1)");
  if (trace.size() < 3) throw InputError("rate_bound_check: trace needs at least three points");
  RateBoundReport report;
  report.k = k;
  report.tol = tol;
  const auto& steps = trace.step_distances();
  for (std::size_t n = 1; n < steps.size(); ++n) {
    const double rhs = k * steps[n - 1] + tol;
    if (!(steps[n] <= rhs)) report.step_violations.push_back({n, steps[n], rhs});
  }
  auto scan = kernels::cauchy_pair_bounds(trace.space(), trace.points(), k, tol, backend);
  report.pairs_checked = scan.pairs_checked;
  report.pair_violations = std::move(scan.violations);
  report.step_check = report.step_violations.empty();
  report.pair_check = report.pair_violations.empty();
  return report;
}

}  // namespace phimetric
