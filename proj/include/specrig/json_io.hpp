#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "specrig/exceptional.hpp"
#include "specrig/generators.hpp"
#include "specrig/polynomial.hpp"
#include "specrig/rigidity.hpp"
#include "specrig/spectrum.hpp"

namespace specrig {

using Json = nlohmann::json;

/// Schema violation while decoding; the message names the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where = "value");

/// {"n": int, "entries": [[[re, im], ...], ...]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& where = "matrix");

/// {"vars": [...], "terms": [{"exp": [...], "re": x, "im": y}, ...]}, lexicographic.
Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

/// {"family", "n", "nu", "matrices": {"H", "E", "F"}}; nu is null when absent.
Json tuple_to_json(const GeneratorTuple& t);
GeneratorTuple tuple_from_json(const Json& j);

/// {"lines": [{"coeffs": [[re, im], ...], "mult": k}], "certified", "distance"}.
Json lines_to_json(const LinesResult& r);
LineArrangement lines_from_json(const Json& j);

Json comparisons_to_json(const std::vector<PencilComparison>& c);

Json report_to_json(const RigidityReport& r);
RigidityReport report_from_json(const Json& j);

Json exceptional_to_json(const ExceptionalSet& s);
/// Header "i,j,z,nu" then one row per root, 17 significant digits.
std::string exceptional_to_csv(const ExceptionalSet& s);

Json relations_to_json(const RelationResidual& r);

/// Parses a UTF-8 JSON file; errors carry the path and the reason.
Json read_json_file(const std::filesystem::path& path);

/// Canonical serialization: two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace specrig
