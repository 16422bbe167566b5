#pragma once

// Report serialization. JSON objects are emitted with sorted keys and every
// double as %.17g, so identical inputs give byte-identical files.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "phimetric/axioms.hpp"
#include "phimetric/fixedpoint.hpp"
#include "phimetric/point.hpp"
#include "phimetric/sequences.hpp"
#include "phimetric/topology.hpp"

namespace phimetric::io {

using Json = nlohmann::json;

/// %.17g; non-finite values become the strings "inf", "-inf", "nan".
std::string format_double(double v);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& value);

Json to_json(const Point& p);
Json to_json(const Box& box);
Json to_json(const AxiomReport& report);
Json to_json(const ContractionCertificate& cert);
/// `trace_ref` names the CSV file holding the trace.
Json to_json(const FixedPointResult& result, const std::string& trace_ref);
Json to_json(const RateBoundReport& report);
Json to_json(const Cover& cover);
Json to_json(const RefinementFamily& family);
Json to_json(const RefinementReport& report);

/// Header "index,x1,...,xn,step"; step is d(x_{n-1}, x_n), 0 on the first row.
void write_trace_csv(std::ostream& out, const Trace& trace);
/// One point per row, no header.
void write_points_csv(std::ostream& out, const std::vector<Point>& points);

/// Reads comma-separated rows of numbers. Blank lines and lines starting with
/// '#' are skipped; a first row that does not parse as numbers is a header.
/// A header starting with "index" marks a trace file: its first and last
/// columns are dropped. Throws InputError on ragged or non-numeric rows.
std::vector<Point> read_points_csv(std::istream& in, const std::string& source);
std::vector<Point> read_points_csv(const std::filesystem::path& path);

/// Writes `text` to dir / name, creating dir as needed. Throws InputError on failure.
std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text);

}  // namespace phimetric::io
