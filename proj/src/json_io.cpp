#include "specrig/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace specrig {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) { throw SchemaError(where + ": " + why); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

// Non-finite reals travel as the strings "inf", "-inf", "nan".
Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(where, "expected a number");
}

std::size_t size_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

template <typename T>
Json optional_to_json(const std::optional<T>& v, Json (*conv)(const T&)) {
  return v ? conv(*v) : Json(nullptr);
}

Json double_ref_to_json(const double& x) { return real_to_json(x); }

}  // namespace

Json complex_to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
  return {real_from_json(j[0], where + "[0]"), real_from_json(j[1], where + "[1]")};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.size()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  const std::size_t n = size_from_json(field(j, "n", where), where + ".n");
  const Json& rows = field(j, "entries", where);
  if (!rows.is_array() || rows.size() != n) fail(where + ".entries", "expected " + std::to_string(n) + " rows");
  std::vector<Complex> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_where = where + ".entries[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != n)
      fail(row_where, "ragged row: expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      flat.push_back(complex_from_json(rows[i][k], row_where + "[" + std::to_string(k) + "]"));
  }
  try {
    return Matrix(n, std::move(flat));
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", e}, {"re", real_to_json(c.real())}, {"im", real_to_json(c.imag())}});
  return {{"vars", p.vars()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const Json& j) {
  const Json& vars = field(j, "vars", "poly");
  if (!vars.is_array()) fail("poly.vars", "expected an array of names");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) fail("poly.vars", "expected an array of names");
    names.push_back(v.get<std::string>());
  }
  MultiPoly p(names);
  const Json& terms = field(j, "terms", "poly");
  if (!terms.is_array()) fail("poly.terms", "expected an array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "poly.terms[" + std::to_string(k) + "]";
    const Json& ex = field(terms[k], "exp", where);
    if (!ex.is_array() || ex.size() != names.size()) fail(where + ".exp", "length must match vars");
    Exponent e;
    for (const auto& d : ex) {
      if (!d.is_number_integer() || d.get<int>() < 0) fail(where + ".exp", "expected non-negative integers");
      e.push_back(d.get<int>());
    }
    p.add_term(e, {real_from_json(field(terms[k], "re", where), where + ".re"),
                   real_from_json(field(terms[k], "im", where), where + ".im")});
  }
  return p;
}

Json tuple_to_json(const GeneratorTuple& t) {
  return {{"family", family_name(t.family)},
          {"n", t.n},
          {"nu", t.nu ? Json(*t.nu) : Json(nullptr)},
          {"matrices", {{"H", matrix_to_json(t.H)}, {"E", matrix_to_json(t.E)}, {"F", matrix_to_json(t.F)}}}};
}

GeneratorTuple tuple_from_json(const Json& j) {
  const Json& fam = field(j, "family", "tuple");
  if (!fam.is_string()) fail("tuple.family", "expected a string");
  Family family;
  try {
    family = parse_family(fam.get<std::string>());
  } catch (const std::exception& e) {
    fail("tuple.family", e.what());
  }
  const std::size_t n = size_from_json(field(j, "n", "tuple"), "tuple.n");
  std::optional<double> nu;
  if (const auto it = j.find("nu"); it != j.end() && !it->is_null()) nu = real_from_json(*it, "tuple.nu");
  const Json& mats = field(j, "matrices", "tuple");
  Matrix h = matrix_from_json(field(mats, "H", "tuple.matrices"), "tuple.matrices.H");
  Matrix e = matrix_from_json(field(mats, "E", "tuple.matrices"), "tuple.matrices.E");
  Matrix f = matrix_from_json(field(mats, "F", "tuple.matrices"), "tuple.matrices.F");
  if (h.size() != n || e.size() != n || f.size() != n) fail("tuple.matrices", "matrix sizes differ from n");
  return {family, n, nu, std::move(h), std::move(e), std::move(f)};
}

Json lines_to_json(const LinesResult& r) {
  Json lines = Json::array();
  for (const auto& l : r.arrangement.lines) {
    Json coeffs = Json::array();
    for (const auto& c : l.coeffs) coeffs.push_back(complex_to_json(c));
    lines.push_back({{"coeffs", std::move(coeffs)}, {"mult", l.mult}});
  }
  return {{"lines", std::move(lines)}, {"certified", r.certified}, {"distance", real_to_json(r.distance)}};
}

LineArrangement lines_from_json(const Json& j) {
  const Json& lines = field(j, "lines", "arrangement");
  if (!lines.is_array()) fail("arrangement.lines", "expected an array");
  LineArrangement out;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string where = "arrangement.lines[" + std::to_string(k) + "]";
    Line l;
    const Json& coeffs = field(lines[k], "coeffs", where);
    if (!coeffs.is_array()) fail(where + ".coeffs", "expected an array");
    for (std::size_t c = 0; c < coeffs.size(); ++c)
      l.coeffs.push_back(complex_from_json(coeffs[c], where + ".coeffs[" + std::to_string(c) + "]"));
    const Json& mult = field(lines[k], "mult", where);
    if (!mult.is_number_integer() || mult.get<int>() < 1) fail(where + ".mult", "expected a positive integer");
    l.mult = mult.get<int>();
    out.lines.push_back(std::move(l));
  }
  return out;
}

Json comparisons_to_json(const std::vector<PencilComparison>& c) {
  Json out = Json::array();
  for (const auto& p : c) out.push_back({{"pencil", p.label}, {"equal", p.equal}, {"distance", real_to_json(p.distance)}});
  return out;
}

Json report_to_json(const RigidityReport& r) {
  Json residuals = Json::object();
  for (const auto& [k, v] : r.condition_residuals) residuals[k] = real_to_json(v);
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) {
    Json entries = Json::array();
    for (const auto& e : d.entries)
      entries.push_back({{"matrix", e.matrix}, {"i", e.i}, {"j", e.j}, {"value", complex_to_json(e.value)}});
    diags.push_back({{"step", d.step}, {"message", d.message}, {"entries", std::move(entries)}});
  }
  Json global = nullptr;
  if (r.basis && r.witness) global = matrix_to_json(r.global_witness());
  return {{"verdict", verdict_name(r.verdict)},
          {"family", family_name(r.family)},
          {"n", r.n},
          {"nu", r.nu ? Json(*r.nu) : Json(nullptr)},
          {"failed_step", r.failed_step},
          {"witness", r.witness ? matrix_to_json(*r.witness) : Json(nullptr)},
          {"basis", r.basis ? matrix_to_json(*r.basis) : Json(nullptr)},
          {"global_witness", std::move(global)},
          {"certified_residual", optional_to_json(r.certified_residual, &double_ref_to_json)},
          {"certified_residual_abs", optional_to_json(r.certified_residual_abs, &double_ref_to_json)},
          {"condition_residuals", std::move(residuals)},
          {"diagnostics", std::move(diags)}};
}

RigidityReport report_from_json(const Json& j) {
  RigidityReport r;
  const auto verdict = field(j, "verdict", "report").get<std::string>();
  if (verdict == "equivalent") r.verdict = Verdict::equivalent;
  else if (verdict == "hypothesis_failed") r.verdict = Verdict::hypothesis_failed;
  else if (verdict == "reconstruction_failed") r.verdict = Verdict::reconstruction_failed;
  else fail("report.verdict", "unknown verdict '" + verdict + "'");
  try {
    r.family = parse_family(field(j, "family", "report").get<std::string>());
  } catch (const Json::exception& e) {
    fail("report.family", e.what());
  } catch (const DomainError& e) {
    fail("report.family", e.what());
  }
  r.n = size_from_json(field(j, "n", "report"), "report.n");
  if (const auto it = j.find("nu"); it != j.end() && !it->is_null()) r.nu = real_from_json(*it, "report.nu");
  if (const auto it = j.find("failed_step"); it != j.end() && it->is_string()) r.failed_step = it->get<std::string>();
  if (const auto it = j.find("witness"); it != j.end() && !it->is_null()) r.witness = matrix_from_json(*it, "report.witness");
  if (const auto it = j.find("basis"); it != j.end() && !it->is_null()) r.basis = matrix_from_json(*it, "report.basis");
  if (const auto it = j.find("certified_residual"); it != j.end() && !it->is_null())
    r.certified_residual = real_from_json(*it, "report.certified_residual");
  if (const auto it = j.find("certified_residual_abs"); it != j.end() && !it->is_null())
    r.certified_residual_abs = real_from_json(*it, "report.certified_residual_abs");
  if (const auto it = j.find("condition_residuals"); it != j.end()) {
    if (!it->is_object()) fail("report.condition_residuals", "expected an object");
    for (const auto& [k, v] : it->items()) r.condition_residuals[k] = real_from_json(v, "report.condition_residuals." + k);
  }
  if (const auto it = j.find("diagnostics"); it != j.end()) {
    if (!it->is_array()) fail("report.diagnostics", "expected an array");
    for (const auto& d : *it) {
      Finding f;
      f.step = field(d, "step", "report.diagnostics").get<std::string>();
      f.message = field(d, "message", "report.diagnostics").get<std::string>();
      for (const auto& e : field(d, "entries", "report.diagnostics"))
        f.entries.push_back({field(e, "matrix", "entry").get<std::string>(), size_from_json(field(e, "i", "entry"), "entry.i"),
                             size_from_json(field(e, "j", "entry"), "entry.j"),
                             complex_from_json(field(e, "value", "entry"), "entry.value")});
      r.diagnostics.push_back(std::move(f));
    }
  }
  return r;
}

Json exceptional_to_json(const ExceptionalSet& s) {
  Json rows = Json::array();
  for (const auto& r : s.roots) rows.push_back({{"i", r.i}, {"j", r.j}, {"z", r.z}, {"nu", r.nu}});
  return {{"n", s.n}, {"roots", std::move(rows)}};
}

std::string exceptional_to_csv(const ExceptionalSet& s) {
  std::string out = "i,j,z,nu\n";
  char buf[128];
  for (const auto& r : s.roots) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", r.i, r.j, r.z, r.nu);
    out += buf;
  }
  return out;
}

Json relations_to_json(const RelationResidual& r) {
  return {{"orientation", orientation_name(r.orientation)},
          {"absolute", {real_to_json(r.r1), real_to_json(r.r2), real_to_json(r.r3)}},
          {"relative", {real_to_json(r.rel1), real_to_json(r.rel2), real_to_json(r.rel3)}},
          {"max_absolute", real_to_json(r.max_abs())},
          {"max_relative", real_to_json(r.max_rel())}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace specrig
