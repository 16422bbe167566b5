#include "phimetric/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "phimetric/errors.hpp"

namespace phimetric {

namespace {

constexpr Axiom kSampledAxioms[] = {Axiom::kIdentity, Axiom::kSymmetry, Axiom::kTriangle,
                                    Axiom::kPhiVanishes, Axiom::kPhiSymmetry};
constexpr std::size_t kEstimateChunk = 512;

class Recorder {
 public:
  explicit Recorder(AxiomReport& report) : report_(report) {}

  void violation(Axiom axiom, std::size_t sample, std::vector<Point> points, double lhs,
                 double rhs, std::optional<double> eps = std::nullopt,
                 std::optional<double> delta = std::nullopt) {
    std::size_t& n = report_.violation_counts[axiom];
    ++n;
    if (n <= kMaxWitnessesPerAxiom) {
      report_.witnesses.push_back(Witness{axiom, sample, std::move(points), lhs, rhs, eps, delta});
    }
  }

  void suspicious(std::size_t sample, std::vector<Point> points, double value, double tol) {
    if (report_.suspicious.size() < kMaxWitnessesPerAxiom) {
      report_.suspicious.push_back(
          Witness{Axiom::kIdentity, sample, std::move(points), value, tol, {}, {}});
    }
  }

 private:
  AxiomReport& report_;
};

void sort_witnesses(std::vector<Witness>& ws) {
  std::stable_sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) {
    if (a.axiom != b.axiom) return a.axiom < b.axiom;
    return a.sample < b.sample;
  });
}

void finalize_verdicts(AxiomReport& report, std::span<const Axiom> checked) {
  for (Axiom a : checked) {
    const auto it = report.violation_counts.find(a);
    const bool failed = it != report.violation_counts.end() && it->second > 0;
    report.verdicts[a] = failed ? Verdict::kViolated : Verdict::kNoViolationFound;
    if (!failed) report.violation_counts[a] = 0;
  }
  sort_witnesses(report.witnesses);
}

void require_count(const Sampler& sampler) {
  if (sampler.count == 0) throw InputError("sampler count must be at least 1");
}

/// Triples whose third point is within delta of the endpoint(s) the space's
/// modulus scope names.
std::vector<kernels::Triple> conditioned_triples(const PhiMetricSpace& space, PointStream& stream,
                                                 double delta, std::size_t count) {
  std::vector<kernels::Triple> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (space.modulus_scope() == ModulusScope::kEitherEndpoint) {
      Point x = stream.next();
      Point y = stream.next();
      Point z = sample_near(space, stream, j % 2 == 0 ? x : y, delta);
      out.push_back(kernels::Triple{std::move(x), std::move(y), std::move(z)});
    } else {
      Point z = stream.next();
      Point x = sample_near(space, stream, z, delta);
      Point y = sample_near(space, stream, z, delta);
      out.push_back(kernels::Triple{std::move(x), std::move(y), std::move(z)});
    }
  }
  return out;
}

}  // namespace

std::string axiom_id(Axiom axiom) {
  switch (axiom) {
    case Axiom::kIdentity: return "d_phi1";
    case Axiom::kSymmetry: return "d_phi2";
    case Axiom::kTriangle: return "d_phi3";
    case Axiom::kPhiVanishes: return "phi1";
    case Axiom::kPhiSymmetry: return "phi2";
    case Axiom::kPhiContinuity: return "phi3";
  }
  return "unknown";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNotChecked: return "not-checked";
    case Verdict::kNoViolationFound: return "no-violation-found";
    case Verdict::kViolated: return "violated";
  }
  return "unknown";
}

Verdict AxiomReport::verdict(Axiom axiom) const {
  const auto it = verdicts.find(axiom);
  return it == verdicts.end() ? Verdict::kNotChecked : it->second;
}

bool AxiomReport::all_pass() const {
  return std::none_of(verdicts.begin(), verdicts.end(),
                      [](const auto& kv) { return kv.second == Verdict::kViolated; });
}

const Witness* AxiomReport::first_witness(Axiom axiom) const {
  for (const Witness& w : witnesses) {
    if (w.axiom == axiom) return &w;
  }
  return nullptr;
}

Point sample_near(const PhiMetricSpace& space, PointStream& stream, const Point& anchor,
                  double delta) {
  const std::size_t n = anchor.dimension();
  std::vector<double> dir(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dir[i] = stream.gaussian();
    scale = std::max(scale, std::abs(dir[i]));
  }
  if (scale == 0.0) return anchor;
  const double extent = stream.box().extent();
  double r = (extent > 0.0 ? extent : 1.0) * stream.uniform_open_low() / scale;
  for (int halving = 0; halving < 200; ++halving, r *= 0.5) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = anchor[i] + r * dir[i];
    Point z = stream.box().clamp(Point(std::move(c)));
    if (space.distance(anchor, z) < delta) return z;
  }
  return anchor;
}

AxiomReport check_axioms(const PhiMetricSpace& space, const Sampler& sampler, double tol,
                         kernels::Backend backend) {
  if (!(tol > 0.0)) throw InputError("check_axioms: tol must be positive");
  require_count(sampler);
  PointStream stream(sampler, resolve_box(sampler, space));

  std::vector<kernels::Triple> triples;
  triples.reserve(sampler.count);
  for (std::size_t i = 0; i < sampler.count; ++i) {
    Point x = stream.next();
    Point y = stream.next();
    Point z = stream.next();
    triples.push_back(kernels::Triple{std::move(x), std::move(y), std::move(z)});
  }
  const std::vector<kernels::TripleTerms> terms =
      kernels::evaluate_triples(space, triples, backend);

  AxiomReport report;
  report.space_label = space.label();
  report.tolerance = tol;
  report.samples_used = sampler.count;
  report.verdicts[Axiom::kPhiContinuity] = Verdict::kNotChecked;
  Recorder rec(report);

  for (std::size_t i = 0; i < terms.size(); ++i) {
    const kernels::TripleTerms& t = terms[i];
    const Point& x = triples[i].x;
    const Point& y = triples[i].y;
    const Point& z = triples[i].z;
    const bool same = x == y;

    // d_phi1: d(x,x) = 0 exactly, d >= 0, and d(x,y) > 0 for x != y.
    if (!(t.d_xx == 0.0)) rec.violation(Axiom::kIdentity, i, {x, x}, t.d_xx, 0.0);
    if (!(t.d_xy >= 0.0) || !std::isfinite(t.d_xy)) {
      rec.violation(Axiom::kIdentity, i, {x, y}, t.d_xy, 0.0);
    } else if (same && t.d_xy != 0.0) {
      rec.violation(Axiom::kIdentity, i, {x, y}, t.d_xy, 0.0);
    } else if (!same && t.d_xy == 0.0) {
      rec.violation(Axiom::kIdentity, i, {x, y}, t.d_xy, 0.0);
    } else if (!same && t.d_xy < tol) {
      rec.suspicious(i, {x, y}, t.d_xy, tol);
    }

    if (!(std::abs(t.d_xy - t.d_yx) <= tol)) {
      rec.violation(Axiom::kSymmetry, i, {x, y}, t.d_xy, t.d_yx);
    }

    const double bound = t.d_xz + t.d_zy + t.phi_xyz;
    if (!(t.d_xy <= bound + tol)) rec.violation(Axiom::kTriangle, i, {x, y, z}, t.d_xy, bound);

    // phi1, plus the codomain phi >= 0.
    if (!(std::abs(t.phi_xyx) <= tol)) rec.violation(Axiom::kPhiVanishes, i, {x, y, x}, t.phi_xyx, 0.0);
    if (!(std::abs(t.phi_xyy) <= tol)) rec.violation(Axiom::kPhiVanishes, i, {x, y, y}, t.phi_xyy, 0.0);
    if (!(t.phi_xyz >= -tol)) rec.violation(Axiom::kPhiVanishes, i, {x, y, z}, t.phi_xyz, 0.0);

    if (!(std::abs(t.phi_xyz - t.phi_yxz) <= tol)) {
      rec.violation(Axiom::kPhiSymmetry, i, {x, y, z}, t.phi_xyz, t.phi_yxz);
    }
  }
  finalize_verdicts(report, kSampledAxioms);
  return report;
}

std::vector<double> modulus_ladder() {
  std::vector<double> ladder;
  for (int e = 4; e >= -60; --e) ladder.push_back(std::ldexp(1.0, e));
  return ladder;
}

double estimate_modulus(const PhiMetricSpace& space, const Sampler& sampler, double eps,
                        kernels::Backend backend) {
  if (!(eps > 0.0)) throw InputError("estimate_modulus: eps must be positive");
  require_count(sampler);
  const Box box = resolve_box(sampler, space);
  const std::vector<double> ladder = modulus_ladder();
  for (std::size_t rung = 0; rung < ladder.size(); ++rung) {
    const double delta = ladder[rung];
    PointStream stream(sampler.with_seed(mix_seed(sampler.seed, 0x5eed0000 + rung)), box);
    bool violated = false;
    for (std::size_t done = 0; done < sampler.count && !violated;) {
      const std::size_t chunk = std::min(kEstimateChunk, sampler.count - done);
      const auto triples = conditioned_triples(space, stream, delta, chunk);
      const auto phis = kernels::evaluate_phi(space, triples, backend);
      violated = std::any_of(phis.begin(), phis.end(), [eps](double p) { return !(p < eps); });
      done += chunk;
    }
    if (!violated) return delta;
  }
  throw ModulusEstimationError("space '" + space.label() + "': no delta down to 2^-60 keeps phi < " +
                               std::to_string(eps) + "; the space is likely not a phi-metric");
}

AxiomReport check_phi_continuity(const PhiMetricSpace& space, const Sampler& sampler,
                                 std::span<const double> eps_grid, kernels::Backend backend) {
  if (eps_grid.empty()) throw InputError("check_phi_continuity: eps grid is empty");
  for (double eps : eps_grid) {
    if (!(eps > 0.0)) throw InputError("check_phi_continuity: eps values must be positive");
  }
  require_count(sampler);
  const Box box = resolve_box(sampler, space);

  AxiomReport report;
  report.space_label = space.label();
  report.tolerance = 0.0;
  for (Axiom a : kSampledAxioms) report.verdicts[a] = Verdict::kNotChecked;
  Recorder rec(report);

  for (std::size_t g = 0; g < eps_grid.size(); ++g) {
    const double eps = eps_grid[g];
    const bool analytic = space.has_analytic_modulus();
    double delta = 0.0;
    if (analytic) {
      delta = space.modulus(eps);
    } else {
      const Sampler probe = sampler.with_seed(mix_seed(sampler.seed, 0xc0de0000 + g));
      delta = estimate_modulus(space, probe, eps, backend) * kEmpiricalBackoff;
    }
    if (!(delta > 0.0)) throw ConfigurationError("modulus produced a non-positive delta");

    PointStream stream(sampler.with_seed(mix_seed(sampler.seed, g)), box);
    const auto triples = conditioned_triples(space, stream, delta, sampler.count);
    const auto phis = kernels::evaluate_phi(space, triples, backend);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
      if (!(phis[i] < eps)) {
        ++violations;
        const auto& t = triples[i];
        rec.violation(Axiom::kPhiContinuity, g * sampler.count + i, {t.x, t.y, t.z}, phis[i], eps,
                      eps, delta);
      }
    }
    report.probes.push_back(ContinuityProbe{eps, delta, analytic, sampler.count, violations});
    report.samples_used += sampler.count;
  }
  const Axiom checked[] = {Axiom::kPhiContinuity};
  finalize_verdicts(report, checked);
  return report;
}

AxiomReport merge_reports(AxiomReport first, const AxiomReport& second) {
  for (const auto& [axiom, verdict] : second.verdicts) {
    if (verdict != Verdict::kNotChecked || !first.verdicts.contains(axiom)) {
      first.verdicts[axiom] = verdict;
    }
  }
  for (const auto& [axiom, n] : second.violation_counts) first.violation_counts[axiom] += n;
  first.witnesses.insert(first.witnesses.end(), second.witnesses.begin(), second.witnesses.end());
  sort_witnesses(first.witnesses);
  first.suspicious.insert(first.suspicious.end(), second.suspicious.begin(),
                          second.suspicious.end());
  first.probes.insert(first.probes.end(), second.probes.begin(), second.probes.end());
  first.samples_used += second.samples_used;
  return first;
}

}  // namespace phimetric
