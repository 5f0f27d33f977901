#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "specrig/numeric.hpp"

namespace specrig {

enum class Family { snu2, sl2, limit_nu1, fundamental, one_dim, counterexample, custom };

/// CLI-facing names: snu2 | sl2 | limit | fundamental | onedim | counterexample | custom.
std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/**
 * A triple (H, E, F) with its construction parameters.
 *
 * For candidate tuples (A1, A2, A3) the slots are read as A1 = H, A2 = E,
 * A3 = F.
 */
struct GeneratorTuple {
  Family family;
  std::size_t n;
  std::optional<double> nu;
  Matrix H;
  Matrix E;
  Matrix F;
};

/// Rejects nu = 0, |nu| > 1 and non-finite nu.
void check_nu(double nu);

/// c_k(nu) for dimension n, k in 0..n; sign(nu) * sqrt(k(n-k)) at |nu| = 1.
double c_coeff(std::size_t n, std::size_t k, double nu);

/// Diagonal entry h_k of H_{n,nu}; 2k + 1 - n at |nu| = 1.
double h_coeff(std::size_t n, std::size_t k, double nu);

GeneratorTuple snu2_generators(std::size_t n, double nu);
/// The nu -> 1 limit matrices (H~, E~, F~).
GeneratorTuple limit_generators(std::size_t n);
GeneratorTuple sl2_generators(std::size_t n);
GeneratorTuple fundamental_generators(double nu);
/// The 1x1 representation: H = A1, E = A2, F = A0.
GeneratorTuple one_dim_rep(Complex c, double nu);
/// A1 = H_3 with the displayed A2, A3; requires alpha*gamma = beta*delta = 2.
GeneratorTuple counterexample_tuple(Complex alpha, Complex beta, Complex gamma, Complex delta);

struct StructuralMatrices {
  Matrix cyclic;     ///< ones on the superdiagonal and at (n-1, 0)
  Matrix transpose;  ///< exchanges rows i and j under left multiplication
};

StructuralMatrices structural_matrices(std::size_t n, std::size_t i, std::size_t j);

enum class Orientation { paper, swapped };

std::string_view orientation_name(Orientation o);
Orientation parse_orientation(std::string_view name);

/// Hilbert-Schmidt residuals of the three deformed commutation relations.
struct RelationResidual {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  /// Per relation: residual / max(1, sum of HS norms of the terms).
  double rel1 = 0.0;
  double rel2 = 0.0;
  double rel3 = 0.0;
  Orientation orientation = Orientation::paper;

  double max_abs() const;
  double max_rel() const;
};

RelationResidual relation_residuals(const GeneratorTuple& t, Orientation orientation);

/// The three matrices of a tuple conjugated by w: (wHw*, wEw*, wFw*).
GeneratorTuple conjugate(const GeneratorTuple& t, const Matrix& w);

}  // namespace specrig
