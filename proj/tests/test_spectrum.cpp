#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specrig/generators.hpp"
#include "specrig/random.hpp"
#include "specrig/spectrum.hpp"

using namespace specrig;
using C = std::complex<double>;

namespace {

Matrix random_matrix(std::size_t n, Rng& rng) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = C(rng.normal(), rng.normal());
  return m;
}

}  // namespace

TEST_CASE("homogeneous n=3 showcase") {
  const auto t = sl2_generators(3);
  const std::vector<Matrix> mats{t.H, t.E, t.F};
  const MultiPoly p = det_pencil(mats, {"x", "y", "z", "t"}, {.homogeneous = true});
  // t(4x^2 + 4yz - t^2)
  oracle::Poly want{{{2, 0, 0, 1}, 4.0}, {{0, 1, 1, 1}, 4.0}, {{0, 0, 0, 3}, -1.0}};
  CHECK(oracle::distance(p, want) <= 1e-10);
  CHECK(oracle::distance(p, oracle::pencil_poly(mats, true)) <= 1e-12);
}

TEST_CASE("diagonal pencil factors") {
  const std::vector<double> lam{0.5, -2.0, 3.0, 1.25};
  const std::vector<Matrix> mats{Matrix::diagonal(lam)};
  const MultiPoly p = det_pencil(mats, {"x"});
  oracle::Poly want{{{0}, 1.0}};
  for (double l : lam) want = oracle::pmul(want, oracle::Poly{{{1}, l}, {{0}, -1.0}});
  CHECK(oracle::distance(p, want) <= 1e-13);
  CHECK(std::abs(p.coeff({0}) - 1.0) <= 1e-13);  // (-1)^4
}

TEST_CASE("constant term is (-1)^n") {
  Rng rng(29);
  for (std::size_t n = 1; n <= 7; ++n) {
    const std::vector<Matrix> mats{random_matrix(n, rng), random_matrix(n, rng)};
    const MultiPoly p = det_pencil(mats, default_vars(2));
    CHECK(std::abs(p.coeff({0, 0}) - ((n % 2) ? -1.0 : 1.0)) <= 1e-10);
  }
}

TEST_CASE("det_pencil matches the cofactor oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t k = 1 + trial % 3;
    std::vector<Matrix> mats;
    for (std::size_t v = 0; v < k; ++v) mats.push_back(random_matrix(n, rng));
    const MultiPoly p = det_pencil(mats, default_vars(k));
    const oracle::Poly q = oracle::pencil_poly(mats);
    CHECK(oracle::distance(p, q) <= 1e-9);
  }
}

TEST_CASE("interpolant agrees with direct determinants at random points") {
  Rng rng(37);
  const std::size_t n = 5;
  const std::vector<Matrix> mats{random_matrix(n, rng), random_matrix(n, rng)};
  const MultiPoly p = det_pencil(mats, default_vars(2));
  for (int s = 0; s < 50; ++s) {
    const C x(rng.normal(), rng.normal()), y(rng.normal(), rng.normal());
    Matrix m = x * mats[0] + y * mats[1] - Matrix::identity(n);
    const C direct = oracle::cofactor_det(m);
    const std::vector<C> pt{x, y};
    CHECK(std::abs(eval(p, pt) - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("threads do not change the result") {
  Rng rng(41);
  const std::vector<Matrix> mats{random_matrix(5, rng), random_matrix(5, rng), random_matrix(5, rng)};
  const MultiPoly a = det_pencil(mats, default_vars(3));
  const MultiPoly b = det_pencil(mats, default_vars(3), {.threads = 3});
  CHECK(a == b);
}

TEST_CASE("det_pencil errors") {
  const Matrix a = Matrix::identity(2), b = Matrix::identity(3);
  CHECK_THROWS(det_pencil(std::vector<Matrix>{a, b}, default_vars(2)));
  CHECK_THROWS(det_pencil(std::vector<Matrix>(5, a), default_vars(5)));
  CHECK_THROWS(det_pencil(std::vector<Matrix>{a}, default_vars(2)));
}

TEST_CASE("unitary invariance") {
  Rng rng(43);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Matrix a = random_matrix(n, rng), b = random_matrix(n, rng), w = random_unitary(n, rng);
    const MultiPoly p = det_pencil(std::vector<Matrix>{a, b}, default_vars(2));
    const MultiPoly q = det_pencil(std::vector<Matrix>{w * a * adjoint(w), w * b * adjoint(w)}, default_vars(2));
    CHECK(poly_distance(p, q) <= 1e-9);
  }
}

TEST_CASE("lines_of_pair on the E E* pencil") {
  for (std::size_t n = 2; n <= 10; ++n)
    for (double nu : {0.3, 0.5, -0.7}) {
      const auto t = snu2_generators(n, nu);
      const auto r = lines_of_pair(t.H, t.E * adjoint(t.E));
      CHECK(r.certified);
      REQUIRE(r.arrangement.lines.size() == n);
      std::vector<std::pair<double, double>> got, want;
      for (const auto& l : r.arrangement.lines) {
        CHECK(l.mult == 1);
        got.emplace_back(l.coeffs[0].real(), l.coeffs[1].real());
      }
      for (std::size_t j = 0; j < n; ++j) {
        const double c = oracle::c_printed(int(n), int(j) + 1, nu);
        want.emplace_back(oracle::h_printed(int(n), int(j), nu), nu * nu * c * c);
      }
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(got[j].first - want[j].first) <= 1e-9 * std::max(1.0, std::abs(want[j].first)));
        CHECK(std::abs(got[j].second - want[j].second) <= 1e-9 * std::max(1.0, std::abs(want[j].second)));
      }
    }
}

TEST_CASE("lines_of_pair small cases") {
  const auto d = lines_of_pair(Matrix::diagonal(std::vector<double>{1, 2}), Matrix::diagonal(std::vector<double>{3, 4}));
  CHECK(d.certified);
  REQUIRE(d.arrangement.lines.size() == 2);
  std::vector<std::pair<double, double>> got;
  for (const auto& l : d.arrangement.lines) got.emplace_back(l.coeffs[0].real(), l.coeffs[1].real());
  std::sort(got.begin(), got.end());
  CHECK(got[0] == std::pair<double, double>{1, 3});
  CHECK(got[1] == std::pair<double, double>{2, 4});

  const auto conic = lines_of_pair(Matrix::diagonal(std::vector<double>{1, -1}), Matrix{{0, 1}, {1, 0}});
  CHECK_FALSE(conic.certified);
  CHECK(conic.distance > 1e-3);

  CHECK_THROWS(lines_of_pair(sl2_generators(3).E, sl2_generators(3).H));
}

TEST_CASE("commuting Hermitian pairs certify") {
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 6;
    std::vector<double> d1(n), d2(n);
    for (std::size_t i = 0; i < n; ++i) {
      d1[i] = std::round(3 * rng.normal());  // repeats on purpose
      d2[i] = rng.normal();
    }
    const Matrix w = random_unitary(n, rng);
    const Matrix a = w * Matrix::diagonal(d1) * adjoint(w);
    const Matrix b = w * Matrix::diagonal(d2) * adjoint(w);
    CHECK(lines_of_pair(a, b).certified);
  }
}

TEST_CASE("arrangement_poly") {
  LineArrangement arr;
  arr.lines.push_back({{C(1.0), C(2.0)}, 2});
  const MultiPoly p = arrangement_poly(arr, {"x", "y"});
  // (x + 2y - 1)^2
  const oracle::Poly lin{{{1, 0}, 1.0}, {{0, 1}, 2.0}, {{0, 0}, -1.0}};
  CHECK(oracle::distance(p, oracle::pmul(lin, lin)) <= 1e-15);
}

TEST_CASE("spectra_equal") {
  const auto t = snu2_generators(4, 0.6);
  const std::vector<Pencil> pencils{parse_pencil("A1, A2 A2^H"), parse_pencil("A1, A2 A3"), parse_pencil("A1, A2, A3")};
  for (const auto& c : spectra_equal(t, t, pencils)) CHECK(c.equal);

  Rng rng(53);
  const auto u = random_conjugate(t, ConjugationMode::unitary, rng);
  for (const auto& c : spectra_equal(t, u, pencils)) CHECK(c.equal);

  const auto ce = counterexample_tuple(1.0, 2.0, 2.0, 1.0);
  const auto sl = sl2_generators(3);
  const std::vector<Pencil> three{parse_pencil("A1, A2, A3")};
  CHECK(spectra_equal(ce, sl, three).at(0).equal);
  const std::vector<Pencil> adj{parse_pencil("A1, A2 A2^H")};
  CHECK_FALSE(spectra_equal(ce, sl, adj).at(0).equal);

  CHECK_THROWS(spectra_equal(t, sl2_generators(3), three));
}

TEST_CASE("x2_dependence") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto s = sl2_generators(n);
    CHECK_FALSE(x2_dependence(s.H, s.E));
  }
  const auto s = sl2_generators(3);
  Matrix e = s.E;
  e(2, 0) += 1.0;
  CHECK(x2_dependence(s.H, e));
  // Oracle agrees: some monomial carries y.
  const auto q = oracle::pencil_poly({s.H, e});
  bool has_y = false;
  for (const auto& [ex, c] : q) has_y = has_y || (ex[1] > 0 && std::abs(c) > 1e-10);
  CHECK(has_y);
  // A diagonal second slot contributes y whenever it is nonzero: (x + 3y - 1)(2x + 4y - 1).
  CHECK(x2_dependence(Matrix::diagonal(std::vector<double>{1, 2}), Matrix::diagonal(std::vector<double>{3, 4})));
  CHECK_FALSE(x2_dependence(Matrix::diagonal(std::vector<double>{1, 2}), Matrix(2)));
}
