#include "phimetric/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "phimetric/errors.hpp"

namespace phimetric::io {

namespace {

void dump(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        dump(v[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : Json(format_double(d)).dump();
      return;
    }
    default:
      out += v.dump();
  }
}

Json points_json(const std::vector<Point>& points) {
  Json arr = Json::array();
  for (const Point& p : points) arr.push_back(to_json(p));
  return arr;
}

Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, out, 0);
  out += "\n";
  return out;
}

Json to_json(const Point& p) {
  Json arr = Json::array();
  for (double c : p.coords()) arr.push_back(c);
  return arr;
}

Json to_json(const Box& box) {
  return Json{{"lo", Json(std::vector<double>(box.lo().begin(), box.lo().end()))},
              {"hi", Json(std::vector<double>(box.hi().begin(), box.hi().end()))}};
}

Json to_json(const AxiomReport& report) {
  Json verdicts = Json::object();
  Json counts = Json::object();
  for (const auto& [axiom, verdict] : report.verdicts) {
    verdicts[axiom_id(axiom)] = to_string(verdict);
  }
  for (const auto& [axiom, n] : report.violation_counts) counts[axiom_id(axiom)] = n;
  auto witness_list = [](const std::vector<Witness>& ws) {
    Json arr = Json::array();
    for (const Witness& w : ws) {
      arr.push_back(Json{{"axiom", axiom_id(w.axiom)},
                         {"sample", w.sample},
                         {"points", points_json(w.points)},
                         {"lhs", w.lhs},
                         {"rhs", w.rhs},
                         {"eps", optional_double(w.eps)},
                         {"delta", optional_double(w.delta)}});
    }
    return arr;
  };
  Json probes = Json::array();
  for (const ContinuityProbe& p : report.probes) {
    probes.push_back(Json{{"eps", p.eps},
                          {"delta", p.delta},
                          {"analytic", p.analytic},
                          {"samples", p.samples},
                          {"violations", p.violations}});
  }
  return Json{{"space", report.space_label},
              {"verdicts", verdicts},
              {"violation_counts", counts},
              {"witnesses", witness_list(report.witnesses)},
              {"suspicious", witness_list(report.suspicious)},
              {"continuity_probes", probes},
              {"samples", report.samples_used},
              {"tolerance", report.tolerance},
              {"all_pass", report.all_pass()}};
}

Json to_json(const ContractionCertificate& cert) {
  Json witnesses = Json::array();
  for (const CertificateWitness& w : cert.violations) {
    witnesses.push_back(
        Json{{"x", to_json(w.x)}, {"y", to_json(w.y)}, {"lhs", w.lhs}, {"rhs", w.rhs}});
  }
  return Json{{"kind", to_string(cert.kind)},
              {"k_estimate", cert.k_estimate},
              {"samples", cert.samples},
              {"domain_escapes", cert.domain_escapes},
              {"violation_count", cert.violation_count},
              {"violations", witnesses},
              {"passed", cert.passed()}};
}

Json to_json(const FixedPointResult& result, const std::string& trace_ref) {
  return Json{{"kind", to_string(result.kind)},
              {"status", to_string(result.status)},
              {"point", to_json(result.point)},
              {"iterations", result.iterations},
              {"residual", result.residual},
              {"certified_k", optional_double(result.certified_k)},
              {"alpha", optional_double(result.alpha)},
              {"diagnostic", result.diagnostic},
              {"trace_ref", trace_ref},
              {"trace_length", result.trace.size()}};
}

Json to_json(const RateBoundReport& report) {
  Json steps = Json::array();
  for (const StepViolation& v : report.step_violations) {
    steps.push_back(Json{{"n", v.n}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  Json pairs = Json::array();
  for (const kernels::PairBound& b : report.pair_violations) {
    pairs.push_back(Json{{"m", b.m}, {"n", b.n}, {"lhs", b.lhs}, {"rhs", b.rhs}});
  }
  return Json{{"k", report.k},
              {"tol", report.tol},
              {"step_check", report.step_check},
              {"pair_check", report.pair_check},
              {"pairs_checked", report.pairs_checked},
              {"step_violations", steps},
              {"pair_violations", pairs}};
}

Json to_json(const Cover& cover) {
  Json sets = Json::array();
  for (const CoverSet& s : cover.sets) sets.push_back(Json{{"id", s.id}, {"indices", s.indices}});
  return sets;
}

Json to_json(const RefinementFamily& family) {
  Json members = Json::array();
  for (const RefinementMember& m : family.members) {
    members.push_back(
        Json{{"s", m.s}, {"i", m.level}, {"centers", m.centers}, {"indices", m.indices}});
  }
  return Json{{"members", members},
              {"i_max", family.i_max},
              {"levels_used", family.levels_used}};
}

Json to_json(const RefinementReport& report) {
  Json passed = Json::object();
  for (const auto& [check, ok] : report.passed) passed[to_string(check)] = ok;
  Json violations = Json::array();
  for (const RefinementViolation& v : report.violations) {
    violations.push_back(Json{{"check", to_string(v.check)},
                              {"level", v.level},
                              {"members", v.members},
                              {"points", v.points},
                              {"value", v.value},
                              {"bound", v.bound}});
  }
  return Json{{"passed", passed}, {"violations", violations}, {"all_pass", report.all_pass()}};
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const std::size_t dim = trace.space().dimension();
  out << "index";
  for (std::size_t i = 0; i < dim; ++i) out << ",x" << (i + 1);
  out << ",step\n";
  const auto& pts = trace.points();
  const auto& steps = trace.step_distances();
  for (std::size_t n = 0; n < pts.size(); ++n) {
    out << (trace.origin() + n);
    for (double c : pts[n].coords()) out << ',' << format_double(c);
    out << ',' << format_double(n == 0 ? 0.0 : steps[n - 1]) << '\n';
  }
}

void write_points_csv(std::ostream& out, const std::vector<Point>& points) {
  for (const Point& p : points) {
    bool first = true;
    for (double c : p.coords()) {
      if (!first) out << ',';
      first = false;
      out << format_double(c);
    }
    out << '\n';
  }
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    if (b == std::string::npos) return false;
    const std::string trimmed = cell.substr(b, e - b + 1);
    std::size_t used = 0;
    try {
      out.push_back(std::stod(trimmed, &used));
    } catch (const std::exception&) {
      return false;
    }
    if (used != trimmed.size()) return false;
  }
  return !out.empty();
}

}  // namespace

std::vector<Point> read_points_csv(std::istream& in, const std::string& source) {
  std::vector<Point> points;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  bool trace_layout = false;
  std::size_t width = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!parse_row(line, row)) {
      if (!seen_row) {
        seen_row = true;
        trace_layout = line.compare(first, 5, "index") == 0;
        continue;
      }
      throw InputError(source + ":" + std::to_string(line_no) + ": not a row of numbers");
    }
    seen_row = true;
    if (trace_layout) {
      if (row.size() < 3) throw InputError(source + ":" + std::to_string(line_no) + ": short trace row");
      row = std::vector<double>(row.begin() + 1, row.end() - 1);
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " columns, got " + std::to_string(row.size()));
    }
    points.emplace_back(row);
  }
  return points;
}

std::vector<Point> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_points_csv(in, path.string());
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
  return path;
}

}  // namespace phimetric::io
