#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specrig/exceptional.hpp"
#include "specrig/generators.hpp"
#include "specrig/random.hpp"
#include "specrig/rigidity.hpp"

using namespace specrig;
using C = std::complex<double>;

namespace {

GeneratorTuple custom(GeneratorTuple t) {
  t.family = Family::custom;
  return t;
}

void check_witness_shape(const RigidityReport& r) {
  REQUIRE(r.witness.has_value());
  const Matrix& w = *r.witness;
  CHECK(w.off_diagonal_norm() == 0.0);
  CHECK(is_unitary(w, 1e-10));
  CHECK(std::abs(w(0, 0) - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("verdict helpers") {
  CHECK(verdict_exit_code(Verdict::equivalent) == 0);
  CHECK(verdict_exit_code(Verdict::hypothesis_failed) == 2);
  CHECK(verdict_exit_code(Verdict::reconstruction_failed) == 3);
  CHECK(verdict_name(Verdict::reconstruction_failed) == "reconstruction_failed");
  CHECK(snu2_pencils().size() == 5);
  CHECK(sl2_pencils().size() == 4);
}

TEST_CASE("verify_conditions_snu2") {
  const auto ref = snu2_generators(5, 0.6);
  const auto self = verify_conditions_snu2(ref, 5, 0.6);
  CHECK(self.a1_normal);
  CHECK(self.all());
  for (const auto& p : self.pencils) CHECK(p.equal);

  Rng rng(61);
  CHECK(verify_conditions_snu2(random_conjugate(ref, ConjugationMode::unitary, rng), 5, 0.6).all());

  auto scaled = custom(ref);
  scaled.E *= 2.0;
  const auto s = verify_conditions_snu2(scaled, 5, 0.6);
  CHECK_FALSE(s.all());
  CHECK_FALSE(s.pencils.at(0).equal);

  auto bad = custom(ref);
  bad.H = ref.E;
  CHECK_FALSE(verify_conditions_snu2(bad, 5, 0.6).a1_normal);
}

TEST_CASE("reconstruct_snu2 on the reference itself") {
  for (double nu : {0.3, -0.7, 1.0}) {
    const auto r = reconstruct_snu2(snu2_generators(6, nu), 6, nu);
    REQUIRE(r.verdict == Verdict::equivalent);
    check_witness_shape(r);
    CHECK(oracle::hs_diff(*r.witness, Matrix::identity(6)) <= 1e-9);
    CHECK(oracle::hs_diff(r.global_witness(), Matrix::identity(6)) <= 1e-9);
    CHECK(*r.certified_residual <= 1e-9);
  }
}

TEST_CASE("gauge invariance: D(H,E,F)D* returns D") {
  Rng rng(67);
  for (std::size_t n = 2; n <= 8; ++n)
    for (double nu : {0.3, -0.7, 1.0}) {
      if (is_exceptional(n, nu) && std::abs(nu) != 1.0) continue;
      const Matrix d = random_phase_diagonal(n, rng, true);
      const auto t = custom(conjugate(snu2_generators(n, nu), d));
      const auto r = reconstruct_snu2(t, n, nu);
      REQUIRE(r.verdict == Verdict::equivalent);
      check_witness_shape(r);
      CHECK(oracle::hs_diff(*r.witness, d) <= 1e-9);
      CHECK(oracle::hs_diff(r.global_witness(), d) <= 1e-9);
    }
}

TEST_CASE("unitary roundtrips certify") {
  Rng rng(71);
  for (std::size_t n = 2; n <= 10; ++n)
    for (double nu : {0.3, -0.7, 1.0}) {
      const double tol = 1e-8;
      const auto checker = RigidityChecker::snu2(n, nu, tol);
      for (int rep = 0; rep < 3; ++rep) {
        const auto t = random_conjugate(checker.reference(), ConjugationMode::unitary, rng);
        const auto r = checker.reconstruct(t);
        REQUIRE_MESSAGE(r.verdict == Verdict::equivalent, "n=" << n << " nu=" << nu << " step=" << r.failed_step);
        check_witness_shape(r);
        const auto cert = certify_equivalence(t, checker.reference(), r.global_witness(), tol);
        CHECK(cert.relative <= tol);
        CHECK(std::abs(cert.relative - *r.certified_residual) <= 1e-12);
      }
    }
}

TEST_CASE("tampering is caught") {
  Rng rng(73);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto checker = RigidityChecker::snu2(n, 0.3, 1e-8);
    for (int rep = 0; rep < 5; ++rep) {
      const auto t = tamper(random_conjugate(checker.reference(), ConjugationMode::unitary, rng), 1e-6, rng);
      const auto r = checker.reconstruct(t);
      CHECK(r.verdict != Verdict::equivalent);
      CHECK_FALSE(r.witness.has_value());
      CHECK_FALSE(r.failed_step.empty());
    }
  }
}

TEST_CASE("a superdiagonal modulus change flips the verdict") {
  // Either the pencil screen or the support check (step 3) catches it,
  // depending on how much the change moves the scaled A2A2* spectrum.
  const double tol = 1e-9;
  int support = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (double nu : {0.3, 0.5, -0.7, 1.0})
      for (std::size_t j = 0; j + 1 < n; ++j) {
        auto t = custom(snu2_generators(n, nu));
        t.E(j, j + 1) *= 1.0 + 10.0 * tol * std::max(1.0, t.E.hs_norm()) / std::abs(t.E(j, j + 1));
        const auto r = reconstruct_snu2(t, n, nu, tol);
        CHECK(r.verdict != Verdict::equivalent);
        CHECK_FALSE(r.witness.has_value());
        const bool named = r.failed_step == "joint_spectrum" || r.failed_step == "a2_support";
        CHECK_MESSAGE(named, r.failed_step);
        support += r.failed_step == "a2_support";
      }
  CHECK(support > 0);
}

TEST_CASE("off-band mass on A2 is rejected") {
  // A corner entry on A2 breaks the triangular (A1, A2) pencil.
  auto t = custom(sl2_generators(4));
  t.E(3, 0) = 1e-3;
  const auto r = reconstruct_sl2(t, 4);
  CHECK(r.verdict != Verdict::equivalent);
}

TEST_CASE("reconstruct_sl2") {
  Rng rng(79);
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto ref = sl2_generators(n);
    const auto self = reconstruct_sl2(ref, n);
    REQUIRE(self.verdict == Verdict::equivalent);
    CHECK(oracle::hs_diff(*self.witness, Matrix::identity(n)) <= 1e-9);

    const Matrix d = random_phase_diagonal(n, rng, true);
    const auto r = reconstruct_sl2(custom(conjugate(ref, d)), n);
    REQUIRE(r.verdict == Verdict::equivalent);
    check_witness_shape(r);
    CHECK(oracle::hs_diff(*r.witness, d) <= 1e-9);
    CHECK(*r.certified_residual <= 1e-9);

    const auto u = random_conjugate(ref, ConjugationMode::unitary, rng);
    const auto ru = reconstruct_sl2(u, n);
    REQUIRE(ru.verdict == Verdict::equivalent);
    CHECK(certify_equivalence(u, ref, ru.global_witness()).relative <= 1e-9);
  }
}

TEST_CASE("counterexample fails the sl2 hypotheses on (A1, A2A2*)") {
  const auto ce = counterexample_tuple(1.0, 2.0, 2.0, 1.0);
  const auto r = reconstruct_sl2(ce, 3);
  CHECK(r.verdict == Verdict::hypothesis_failed);
  const auto v = verify_conditions_sl2(ce, 3);
  CHECK(v.a1_normal);
  CHECK_FALSE(v.pencils.at(0).equal);
}

TEST_CASE("hs budget violation on A3 is diagnosed") {
  // Extra mass on A3 outside the subdiagonal changes A3A3* too, so the
  // hypothesis stage rejects it.
  auto t = custom(sl2_generators(4));
  t.F(0, 3) = 0.5;
  const auto r = reconstruct_sl2(t, 4);
  CHECK(r.verdict != Verdict::equivalent);
}

TEST_CASE("compression_check") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto s = sl2_generators(n);
    const Matrix b = s.E * s.F;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double lam = double(n) - 1.0 - 2.0 * double(j);
      const double mu = double((j + 1) * (n - 1 - j));
      CHECK(compression_check(s.H, b, lam, mu));
    }
  }
  const Matrix a = Matrix::diagonal(std::vector<double>{1, 2});
  CHECK(compression_check(a, Matrix::diagonal(std::vector<double>{5, 7}), 1.0, 5.0));
  // (1, 5) is not a line of det(x diag(1,2) + y [[5,1],[1,7]] - I): the
  // compression identity still reads the diagonal entry.
  const Matrix b{{5, 1}, {1, 7}};
  CHECK(compression_residual(a, b, 1.0, 5.0) <= 1e-14);
  CHECK_THROWS_AS(compression_check(a, b, 1.0, 5.0), DomainError);
  CHECK_THROWS_AS(compression_check(a, Matrix::diagonal(std::vector<double>{5, 7}), 1.0, 6.0), DomainError);
  // Multiplicity two is refused.
  const Matrix id2 = Matrix::identity(2);
  CHECK_THROWS_AS(compression_check(id2, id2, 1.0, 1.0), DomainError);
}

TEST_CASE("certify_equivalence") {
  const auto ref = snu2_generators(3, 0.5);
  CHECK(certify_equivalence(ref, ref, Matrix::identity(3)).absolute == 0.0);
  const auto sl = sl2_generators(3);
  CHECK(certify_equivalence(counterexample_tuple(1.0, 2.0, 2.0, 1.0), sl, Matrix::identity(3)).absolute >= 1.0);
  CHECK_THROWS_AS(certify_equivalence(ref, ref, 2.0 * Matrix::identity(3)), DomainError);
}

TEST_CASE("checker reuse gives identical reports") {
  const auto checker = RigidityChecker::snu2(5, -0.7);
  Rng rng(83);
  const auto t = random_conjugate(checker.reference(), ConjugationMode::unitary, rng);
  const auto a = checker.reconstruct(t), b = reconstruct_snu2(t, 5, -0.7);
  CHECK(a.verdict == b.verdict);
  CHECK(*a.witness == *b.witness);
  CHECK(*a.basis == *b.basis);
}
