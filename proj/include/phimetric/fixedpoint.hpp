#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phimetric/kernels.hpp"
#include "phimetric/point.hpp"
#include "phimetric/sampler.hpp"
#include "phimetric/sequences.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

enum class ContractionKind { kBanach, kKannan, kEdelstein };

std::string to_string(ContractionKind kind);
ContractionKind parse_contraction_kind(std::string_view text);

/// T: domain -> domain.
struct SelfMap {
  kernels::MapFn map;
  Box domain;
  std::string label;
  ContractionKind intended = ContractionKind::kBanach;

  Point operator()(const Point& x) const { return map(x); }
};

inline constexpr std::size_t kMaxCertificateWitnesses = 16;

struct CertificateWitness {
  Point x;
  Point y;
  double lhs;  // d(Tx, Ty)
  double rhs;  // d(x, y) or d(x, Tx) + d(y, Ty)
};

/// Worst sampled contraction ratio for one hypothesis:
///   banach:    d(Tx,Ty) / d(x,y)                       violation when >= 1
///   kannan:    d(Tx,Ty) / [d(x,Tx) + d(y,Ty)]          violation when >= 1/2
///   edelstein: d(Tx,Ty) / d(x,y)                       violation when d(Tx,Ty) >= d(x,y)
/// A certificate never claims the hypothesis holds; it reports what sampling saw.
struct ContractionCertificate {
  ContractionKind kind = ContractionKind::kBanach;
  double k_estimate = 0.0;
  std::size_t samples = 0;        // pairs with a positive denominator
  std::size_t domain_escapes = 0; // pairs where Tx or Ty left the domain
  std::size_t violation_count = 0;
  std::vector<CertificateWitness> violations;  // the first kMaxCertificateWitnesses
  bool passed() const noexcept { return violation_count == 0 && domain_escapes == 0; }
};

/// Throws DegenerateMapError when every sampled denominator is zero.
ContractionCertificate certify(const PhiMetricSpace& space, const SelfMap& map,
                               const Sampler& sampler, ContractionKind kind,
                               kernels::Backend backend = kernels::default_backend());

enum class SolveStatus {
  kConverged,
  kMaxIterations,
  kStagnated,        // no residual decrease over the stall window
  kDomainViolation,  // an iterate left the map's domain
  kNonFinite,
  kRefused           // the supplied certificate rules the map out
};

std::string to_string(SolveStatus status);

inline constexpr double kDefaultSolveTolerance = 1e-10;

struct SolveOptions {
  double tol = kDefaultSolveTolerance;
  std::size_t max_iter = 1000;
  /// Edelstein only: iterations without a new smallest residual before giving up.
  std::size_t stall_window = 50;
  std::optional<ContractionCertificate> certificate;
};

struct FixedPointResult {
  ContractionKind kind = ContractionKind::kBanach;
  SolveStatus status = SolveStatus::kMaxIterations;
  Point point;
  std::size_t iterations = 0;
  double residual = 0.0;  // d(T x*, x*)
  Trace trace;
  std::optional<double> certified_k;
  /// Kannan: alpha = k / (1 - k), the step-distance decay the certificate implies.
  std::optional<double> alpha;
  std::string diagnostic;

  bool converged() const noexcept { return status == SolveStatus::kConverged; }
};

/// Picard iteration x_{n+1} = T x_n until d(x_n, x_{n+1}) < tol and
/// d(T x_{n+1}, x_{n+1}) < tol.
FixedPointResult banach_solve(const PhiMetricSpace& space, const SelfMap& map, const Point& x0,
                              const SolveOptions& options = {});
FixedPointResult kannan_solve(const PhiMetricSpace& space, const SelfMap& map, const Point& x0,
                              const SolveOptions& options = {});
/// Adds stall detection; a stalled run reports that no convergent
/// subsequence was seen within the horizon.
FixedPointResult edelstein_solve(const PhiMetricSpace& space, const SelfMap& map,
                                 const Point& x0, const SolveOptions& options = {});

FixedPointResult solve(ContractionKind kind, const PhiMetricSpace& space, const SelfMap& map,
                       const Point& x0, const SolveOptions& options = {});

/// One solve per start, run in parallel; results in start order.
std::vector<FixedPointResult> multi_start_solve(ContractionKind kind, const PhiMetricSpace& space,
                                                const SelfMap& map, std::span<const Point> starts,
                                                const SolveOptions& options = {},
                                                kernels::Backend backend =
                                                    kernels::default_backend());

struct StepViolation {
  std::size_t n;
  double lhs;  // d(x_n, x_{n+1})
  double rhs;  // k d(x_{n-1}, x_n) + tol
};

struct RateBoundReport {
  double k = 0.0;
  double tol = 0.0;
  bool step_check = true;
  bool pair_check = true;
  std::size_t pairs_checked = 0;
  std::vector<StepViolation> step_violations;
  std::vector<kernels::PairBound> pair_violations;
  bool passed() const noexcept { return step_check && pair_check; }
};

/// (a) d(x_n, x_{n+1}) <= k d(x_{n-1}, x_n) + tol for every n, and
/// (b) d(x_m, x_n) <= k^n/(1-k) d(x_1, x_0) + sum_{i=n}^{m-2} phi(x_m, x_i, x_{i+1}) + tol
///     for every recorded m > n.
/// Throws InputError unless 0 < k < 1 and the trace has at least 3 points.
RateBoundReport rate_bound_check(const Trace& trace, double k, double tol = 1e-9,
                                 kernels::Backend backend = kernels::default_backend());

}  // namespace phimetric
