#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "specrig/cli.hpp"
#include "specrig/json_io.hpp"
#include "specrig/random.hpp"

using namespace specrig;
namespace fs = std::filesystem;
using C = std::complex<double>;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "specrig_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string write_tuple(const std::string& name, const GeneratorTuple& t) {
  const fs::path p = temp_path(name);
  write_file(p, dump(tuple_to_json(t)));
  return p.string();
}

}  // namespace

TEST_CASE("complex and matrix round trips") {
  const C z(0.1, -1.0 / 3.0);
  CHECK(complex_from_json(complex_to_json(z)) == z);
  const Matrix m{{C(1, 2), C(0.1, 0)}, {C(-3, 1e-17), C(0, 0)}};
  const Json j = matrix_to_json(m);
  CHECK(j.at("n") == 2);
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json::parse(dump(j))) == m);
}

TEST_CASE("matrix schema errors") {
  const Json ragged = Json::parse(R"({"n": 2, "entries": [[[1,0],[0,0]], [[0,0]]]})");
  CHECK_THROWS_AS(matrix_from_json(ragged), SchemaError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n": 1, "entries": [[[1]]]})")), SchemaError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n": 1})")), SchemaError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n": 2, "entries": [[[1,0]]]})")), SchemaError);
  try {
    matrix_from_json(ragged, "tuple.H");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("tuple.H") != std::string::npos);
  }
}

TEST_CASE("tuple, poly and lines round trips") {
  for (const auto& t : {snu2_generators(4, -0.7), sl2_generators(3), counterexample_tuple(1.0, 2.0, 2.0, 1.0)}) {
    const GeneratorTuple back = tuple_from_json(Json::parse(dump(tuple_to_json(t))));
    CHECK(back.family == t.family);
    CHECK(back.n == t.n);
    CHECK(back.nu == t.nu);
    CHECK(back.H == t.H);
    CHECK(back.E == t.E);
    CHECK(back.F == t.F);
  }
  const auto t = snu2_generators(3, 0.4);
  const std::vector<Matrix> mats{t.H, t.E * adjoint(t.E)};
  const MultiPoly p = det_pencil(mats, default_vars(2));
  CHECK(poly_from_json(Json::parse(dump(poly_to_json(p)))) == p);

  const auto lines = lines_of_pair(t.H, t.E * adjoint(t.E));
  const LineArrangement arr = lines_from_json(lines_to_json(lines));
  REQUIRE(arr.lines.size() == lines.arrangement.lines.size());
  for (std::size_t k = 0; k < arr.lines.size(); ++k) {
    CHECK(arr.lines[k].coeffs == lines.arrangement.lines[k].coeffs);
    CHECK(arr.lines[k].mult == lines.arrangement.lines[k].mult);
  }
}

TEST_CASE("report round trips") {
  Rng rng(5);
  const auto ok = reconstruct_snu2(random_conjugate(snu2_generators(4, 0.5), ConjugationMode::unitary, rng), 4, 0.5);
  auto bad_tuple = snu2_generators(4, 0.5);
  bad_tuple.E *= 2.0;
  const auto bad = reconstruct_snu2(bad_tuple, 4, 0.5);
  for (const auto& r : {ok, bad}) {
    const Json j = report_to_json(r);
    const Json again = report_to_json(report_from_json(Json::parse(dump(j))));
    CHECK(dump(j) == dump(again));
  }
  CHECK(report_to_json(ok).at("verdict") == "equivalent");
  CHECK(report_to_json(bad).at("witness").is_null());
}

TEST_CASE("exceptional serializations") {
  const auto s = exceptional_set(5);
  const std::string csv = exceptional_to_csv(s);
  CHECK(csv.rfind("i,j,z,nu\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(exceptional_to_json(s).at("roots").size() == 2);
}

TEST_CASE("read_json_file reports path and reason") {
  const fs::path p = temp_path("broken.json");
  write_file(p, "{ not json");
  try {
    read_json_file(p);
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }
  CHECK_THROWS(read_json_file(temp_path("missing.json")));
}

TEST_CASE("cli gen") {
  const Run r = run({"gen", "--family", "sl2", "--n", "3"});
  REQUIRE(r.code == 0);
  const GeneratorTuple t = tuple_from_json(Json::parse(r.out));
  CHECK(t.E == sl2_generators(3).E);
  CHECK(t.F == sl2_generators(3).F);
  CHECK(t.H == sl2_generators(3).H);

  CHECK(run({"gen", "--family", "snu2", "--n", "3", "--nu", "2"}).code == 1);
  CHECK(run({"gen", "--family", "nope", "--n", "3"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("cli output is deterministic for a fixed seed") {
  const std::vector<std::string> args{"gen", "--family", "random-conjugate", "--base", "snu2", "--n", "4", "--nu", "0.5",
                                      "--mode", "unitary", "--seed", "42"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "43";
  CHECK(run(other).out != a.out);
}

TEST_CASE("cli exceptional") {
  const Run r = run({"exceptional", "--n", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2 3 0.7548776662") != std::string::npos);
  CHECK(r.out.find("0.8688369") != std::string::npos);
  const Run csv = run({"exceptional", "--n", "5", "--csv"});
  CHECK(csv.out.rfind("i,j,z,nu\n", 0) == 0);
  const Run js = run({"exceptional", "--n", "4", "--json"});
  CHECK(Json::parse(js.out).at("roots").size() == 1);
  CHECK(run({"exceptional", "--n", "4", "--csv", "--json"}).code == 1);
}

TEST_CASE("cli rigidity exit codes") {
  Rng rng(9);
  const std::string good = write_tuple("roundtrip.json", random_conjugate(snu2_generators(5, 0.5), ConjugationMode::unitary, rng));
  const Run ok = run({"rigidity", "--tuple", good, "--family", "snu2", "--n", "5", "--nu", "0.5", "--json"});
  CHECK(ok.code == 0);
  const Json rep = Json::parse(ok.out);
  CHECK(rep.at("verdict") == "equivalent");

  CHECK(run({"rigidity", "--tuple", good, "--family", "snu2", "--n", "5", "--nu", "0.6"}).code == 2);

  Rng rng2(10);
  const std::string tampered =
      write_tuple("tampered.json", tamper(random_conjugate(snu2_generators(5, 0.5), ConjugationMode::unitary, rng2), 1e-3, rng2));
  const int code = run({"rigidity", "--tuple", tampered, "--family", "snu2", "--n", "5", "--nu", "0.5"}).code;
  CHECK((code == 2 || code == 3));

  const std::string sl = write_tuple("sl2.json", sl2_generators(4));
  CHECK(run({"rigidity", "--tuple", sl, "--family", "sl2", "--n", "4"}).code == 0);

  const Run missing = run({"rigidity", "--tuple", temp_path("nope.json").string(), "--family", "sl2", "--n", "4"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("nope.json") != std::string::npos);
  CHECK(run({"rigidity", "--tuple", good, "--family", "snu2", "--n", "5"}).code == 1);
}

TEST_CASE("cli det, lines, compare, relations, counterexample") {
  const std::string sl = write_tuple("sl2_3.json", sl2_generators(3));
  const Run det = run({"det", "--tuple", sl, "--pencil", "A1, A2, A3", "--vars", "x,y,z,t", "--homogeneous"});
  REQUIRE(det.code == 0);
  const MultiPoly p = poly_from_json(Json::parse(det.out));
  CHECK(std::abs(p.coeff({2, 0, 0, 1}) - 4.0) <= 1e-10);
  CHECK(std::abs(p.coeff({0, 0, 0, 3}) + 1.0) <= 1e-10);
  CHECK(run({"det", "--tuple", sl, "--pencil", "A1, A9"}).code == 1);

  const Run lines = run({"lines", "--tuple", sl, "--pencil", "A1, A2 A2^H"});
  REQUIRE(lines.code == 0);
  CHECK(Json::parse(lines.out).at("certified") == true);

  const std::string ce = write_tuple("ce.json", counterexample_tuple(1.0, 2.0, 2.0, 1.0));
  const Run cmp = run({"compare", "--tuple", ce, "--other", sl, "--pencil", "A1, A2, A3"});
  REQUIRE(cmp.code == 0);
  CHECK(Json::parse(cmp.out).at(0).at("equal") == true);

  const Run rel = run({"relations", "--family", "fundamental", "--nu", "0.3", "--orientation", "paper"});
  REQUIRE(rel.code == 0);

  const Run cx = run({"counterexample"});
  REQUIRE(cx.code == 0);
  const Json j = Json::parse(cx.out);
  CHECK(j.at("three_matrix_spectrum").at("equal") == true);
  CHECK(j.at("commutator_residual").get<double>() >= 1.0);
}

TEST_CASE("cli --output writes the file") {
  const fs::path p = temp_path("out.json");
  fs::remove(p);
  const Run r = run({"--output", p.string(), "gen", "--family", "sl2", "--n", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(tuple_from_json(read_json_file(p)).n == 2);
}

TEST_CASE("SPECRIG_TOL") {
  ::unsetenv("SPECRIG_TOL");
  CHECK(cli::default_tolerance() == 1e-9);
  ::setenv("SPECRIG_TOL", "1e-7", 1);
  CHECK(cli::default_tolerance() == 1e-7);
  ::setenv("SPECRIG_TOL", "-3", 1);
  CHECK_THROWS(cli::default_tolerance());
  CHECK(run({"exceptional", "--n", "4"}).code == 1);
  ::setenv("SPECRIG_TOL", "abc", 1);
  CHECK_THROWS(cli::default_tolerance());
  ::unsetenv("SPECRIG_TOL");
}
