#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phimetric/kernels.hpp"
#include "phimetric/point.hpp"
#include "phimetric/sampler.hpp"
#include "phimetric/space.hpp"

namespace phimetric {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kMaxWitnessesPerAxiom = 8;

enum class Axiom {
  kIdentity,      // d_phi1, plus d >= 0
  kSymmetry,      // d_phi2
  kTriangle,      // d_phi3
  kPhiVanishes,   // phi1, plus phi >= 0
  kPhiSymmetry,   // phi2
  kPhiContinuity  // phi3
};

/// "d_phi1", "d_phi2", "d_phi3", "phi1", "phi2", "phi3".
std::string axiom_id(Axiom axiom);

/// Sampling can only falsify: a passing axiom is "no violation found", never "holds".
enum class Verdict { kNotChecked, kNoViolationFound, kViolated };

std::string to_string(Verdict verdict);

struct Witness {
  Axiom axiom;
  std::size_t sample;
  std::vector<Point> points;
  double lhs;
  double rhs;
  std::optional<double> eps;
  std::optional<double> delta;
};

/// One eps of a continuity check: the delta used and how it was obtained.
struct ContinuityProbe {
  double eps;
  double delta;
  bool analytic;
  std::size_t samples;
  std::size_t violations;
};

struct AxiomReport {
  std::string space_label;
  std::map<Axiom, Verdict> verdicts;
  std::map<Axiom, std::size_t> violation_counts;
  /// At most kMaxWitnessesPerAxiom per axiom, ordered by (axiom, sample).
  std::vector<Witness> witnesses;
  /// x != y with 0 < d(x, y) < tol: not a failure, but worth a look.
  std::vector<Witness> suspicious;
  std::vector<ContinuityProbe> probes;
  std::size_t samples_used = 0;
  double tolerance = kDefaultTolerance;

  Verdict verdict(Axiom axiom) const;
  bool all_pass() const;
  const Witness* first_witness(Axiom axiom) const;
};

/// Checks d_phi1, d_phi2, d_phi3, phi1, phi2 on sampler.count seeded triples.
AxiomReport check_axioms(const PhiMetricSpace& space, const Sampler& sampler,
                         double tol = kDefaultTolerance,
                         kernels::Backend backend = kernels::default_backend());

/// Checks phi3 for every eps in the grid on sampler.count triples each, drawn
/// with the third point within delta of the endpoint(s) named by the space's
/// modulus scope. Spaces without an analytic modulus use estimate_modulus on an
/// independent seed, backed off by kEmpiricalBackoff.
AxiomReport check_phi_continuity(const PhiMetricSpace& space, const Sampler& sampler,
                                 std::span<const double> eps_grid,
                                 kernels::Backend backend = kernels::default_backend());

inline constexpr double kEmpiricalBackoff = 0.25;

/// Decreasing candidate deltas 2^4, 2^3, ..., 2^-60.
std::vector<double> modulus_ladder();

/// Largest ladder delta for which sampler.count conditioned triples all give
/// phi < eps. Throws ModulusEstimationError when no rung passes.
double estimate_modulus(const PhiMetricSpace& space, const Sampler& sampler, double eps,
                        kernels::Backend backend = kernels::default_backend());

/// A point z with d(anchor, z) < delta: a random direction is scaled down by
/// halving until the condition holds, so draws sit near the delta boundary.
/// Falls back to the anchor itself.
Point sample_near(const PhiMetricSpace& space, PointStream& stream, const Point& anchor,
                  double delta);

/// Combines a check_axioms and a check_phi_continuity report.
AxiomReport merge_reports(AxiomReport first, const AxiomReport& second);

}  // namespace phimetric
