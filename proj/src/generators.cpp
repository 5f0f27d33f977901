#include "specrig/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specrig {

namespace {

// 1 - z^m for 0 < z < 1 without cancellation near z = 1.
double one_minus_pow(double log_z, double m) { return -std::expm1(m * log_z); }

std::size_t require_n(std::size_t n, std::size_t min, const char* what) {
  if (n < min) {
    std::ostringstream os;
    os << what << ": dimension must be at least " << min;
    throw DomainError(os.str());
  }
  return n;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::snu2: return "snu2";
    case Family::sl2: return "sl2";
    case Family::limit_nu1: return "limit";
    case Family::fundamental: return "fundamental";
    case Family::one_dim: return "onedim";
    case Family::counterexample: return "counterexample";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::snu2, Family::sl2, Family::limit_nu1, Family::fundamental, Family::one_dim,
                   Family::counterexample, Family::custom})
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

void check_nu(double nu) {
  if (!std::isfinite(nu) || nu == 0.0 || std::abs(nu) > 1.0)
    throw DomainError("nu must lie in [-1, 1] \\ {0}");
}

double c_coeff(std::size_t n, std::size_t k, double nu) {
  check_nu(nu);
  if (k > n) throw DomainError("c_coeff: index k must lie in 0..n");
  if (k == 0 || k == n) return 0.0;
  const double sign = nu < 0 ? -1.0 : 1.0;
  const double kk = static_cast<double>(k), nk = static_cast<double>(n - k);
  if (std::abs(nu) == 1.0) return sign * std::sqrt(kk * nk);
  // c_k = nu |nu|^{-k} / (1 - z) * sqrt((1 - z^k)(1 - z^{n-k})), z = nu^2.
  const double log_z = 2.0 * std::log(std::abs(nu));
  const double root = std::sqrt(one_minus_pow(log_z, kk) * one_minus_pow(log_z, nk));
  return nu * std::exp(-kk * 0.5 * log_z) / one_minus_pow(log_z, 1.0) * root;
}

double h_coeff(std::size_t n, std::size_t k, double nu) {
  check_nu(nu);
  const double m = static_cast<double>(n) - 2.0 * static_cast<double>(k) - 1.0;
  if (std::abs(nu) == 1.0) return -m;
  // z/(1-z) (z^m - 1) = -z (1 - z^m)/(1 - z).
  const double z = nu * nu;
  const double log_z = std::log(z);
  return -z * one_minus_pow(log_z, m) / one_minus_pow(log_z, 1.0);
}

GeneratorTuple snu2_generators(std::size_t n, double nu) {
  require_n(n, 1, "snu2_generators");
  check_nu(nu);
  Matrix h(n), e(n), f(n);
  for (std::size_t k = 0; k < n; ++k) {
    h(k, k) = h_coeff(n, k, nu);
    if (k >= 1) e(k - 1, k) = nu * c_coeff(n, k, nu);
    if (k + 1 < n) f(k + 1, k) = -c_coeff(n, k + 1, nu);
  }
  return {Family::snu2, n, nu, std::move(h), std::move(e), std::move(f)};
}

GeneratorTuple limit_generators(std::size_t n) {
  require_n(n, 1, "limit_generators");
  Matrix h(n), e(n), f(n);
  for (std::size_t k = 0; k < n; ++k) {
    h(k, k) = 2.0 * static_cast<double>(k) + 1.0 - static_cast<double>(n);
    if (k >= 1) e(k - 1, k) = std::sqrt(static_cast<double>(k * (n - k)));
    if (k + 1 < n) f(k + 1, k) = -std::sqrt(static_cast<double>((k + 1) * (n - k - 1)));
  }
  return {Family::limit_nu1, n, 1.0, std::move(h), std::move(e), std::move(f)};
}

GeneratorTuple sl2_generators(std::size_t n) {
  require_n(n, 2, "sl2_generators");
  Matrix h(n), e(n), f(n);
  for (std::size_t j = 0; j < n; ++j) {
    h(j, j) = static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(j);
    if (j >= 1) e(j - 1, j) = static_cast<double>(j * (n - j));
    if (j + 1 < n) f(j + 1, j) = 1.0;
  }
  return {Family::sl2, n, std::nullopt, std::move(h), std::move(e), std::move(f)};
}

GeneratorTuple fundamental_generators(double nu) {
  check_nu(nu);
  Matrix h{{1.0, 0.0}, {0.0, -nu * nu}};
  Matrix e{{0.0, 1.0}, {0.0, 0.0}};
  Matrix f{{0.0, 0.0}, {-nu, 0.0}};
  return {Family::fundamental, 2, nu, std::move(h), std::move(e), std::move(f)};
}

GeneratorTuple one_dim_rep(Complex c, double nu) {
  check_nu(nu);
  if (std::abs(nu) == 1.0) throw DomainError("one_dim_rep: |nu| = 1 is a pole of the formulas");
  if (c == 0.0) throw DomainError("one_dim_rep: c must be nonzero");
  const double q = 1.0 - nu * nu;
  Matrix a0{{c * nu / q}};
  Matrix a1{{-nu * nu / q}};
  Matrix a2{{(nu * nu / q) / c}};
  return {Family::one_dim, 1, nu, std::move(a1), std::move(a2), std::move(a0)};
}

GeneratorTuple counterexample_tuple(Complex alpha, Complex beta, Complex gamma, Complex delta) {
  if (std::abs(alpha * gamma - 2.0) > 1e-12 || std::abs(beta * delta - 2.0) > 1e-12)
    throw DomainError("counterexample_tuple: requires alpha*gamma = beta*delta = 2");
  Matrix a2{{0.0, alpha, 0.0}, {0.0, 0.0, 0.0}, {0.0, beta, 0.0}};
  Matrix a3{{0.0, 0.0, 0.0}, {gamma, 0.0, delta}, {0.0, 0.0, 0.0}};
  return {Family::counterexample, 3, std::nullopt, sl2_generators(3).H, std::move(a2), std::move(a3)};
}

StructuralMatrices structural_matrices(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) throw DomainError("structural_matrices: need 0 <= i < j < n");
  Matrix p(n);
  for (std::size_t r = 0; r + 1 < n; ++r) p(r, r + 1) = 1.0;
  p(n - 1, 0) = 1.0;
  Matrix q = Matrix::identity(n);
  q(i, i) = q(j, j) = 0.0;
  q(i, j) = q(j, i) = 1.0;
  return {std::move(p), std::move(q)};
}

std::string_view orientation_name(Orientation o) { return o == Orientation::paper ? "paper" : "swapped"; }

Orientation parse_orientation(std::string_view name) {
  if (name == "paper") return Orientation::paper;
  if (name == "swapped") return Orientation::swapped;
  throw std::invalid_argument("unknown orientation '" + std::string(name) + "'");
}

double RelationResidual::max_abs() const { return std::max({r1, r2, r3}); }
double RelationResidual::max_rel() const { return std::max({rel1, rel2, rel3}); }

RelationResidual relation_residuals(const GeneratorTuple& t, Orientation orientation) {
  if (!t.nu) throw DomainError("relation_residuals: tuple family carries no nu");
  const double nu = *t.nu;
  const Matrix &h = t.H, &e = t.E, &f = t.F;
  const bool sw = orientation == Orientation::swapped;

  // Each relation is a*XY - b*YX = rhs with the operand pair swapped on demand.
  auto residual = [sw](double a, const Matrix& x, const Matrix& y, double b, const Matrix& rhs, double& abs_out,
                       double& rel_out) {
    const Matrix first = sw ? y * x : x * y;
    const Matrix second = sw ? x * y : y * x;
    const Matrix lhs1 = first * Complex(a);
    const Matrix lhs2 = second * Complex(b);
    abs_out = (lhs1 - lhs2 - rhs).hs_norm();
    rel_out = abs_out / std::max(1.0, lhs1.hs_norm() + lhs2.hs_norm() + rhs.hs_norm());
  };

  RelationResidual r;
  r.orientation = orientation;
  const double s = 1.0 + nu * nu;
  residual(nu, f, e, 1.0 / nu, h, r.r1, r.rel1);
  residual(nu * nu, h, e, 1.0 / (nu * nu), e * Complex(s), r.r2, r.rel2);
  residual(nu * nu, f, h, 1.0 / (nu * nu), f * Complex(s), r.r3, r.rel3);
  return r;
}

GeneratorTuple conjugate(const GeneratorTuple& t, const Matrix& w) {
  const Matrix ws = w.adjoint();
  return {t.family, t.n, t.nu, w * t.H * ws, w * t.E * ws, w * t.F * ws};
}

}  // namespace specrig
