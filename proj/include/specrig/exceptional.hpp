#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "specrig/numeric.hpp"

namespace specrig {

/// The unique root z in (0, 1) of the pair (i, j); nu = sqrt(z).
struct ExceptionalRoot {
  std::size_t n;
  std::size_t i;
  std::size_t j;
  double z;
  double nu;
};

/// Coefficients (ascending degree) of 1 + z + ... + z^{n-j-1} - z^{n-i} - ... - z^{n-1}.
std::vector<double> root_polynomial(std::size_t n, std::size_t i, std::size_t j);

/// Number of sign changes in the nonzero coefficient sequence.
int descartes_sign_changes(const std::vector<double>& coeffs);

/// Bisection on (0, 1); the polynomial is +1 at 0 and negative at 1.
ExceptionalRoot z_root(std::size_t n, std::size_t i, std::size_t j);

struct ExceptionalSet {
  std::size_t n;
  /// One root per pair (i, j) with 1 <= i < j <= n - 1, i + j > n, lexicographic.
  std::vector<ExceptionalRoot> roots;

  /// +-nu_ij for every root (the symmetric finite part), ascending.
  std::vector<double> tilde_values() const;
  /// tilde_values() together with -1 and +1.
  std::vector<double> values() const;
};

ExceptionalSet exceptional_set(std::size_t n);

/// True iff nu is within tol of +-1 or of some +-nu_ij.
bool is_exceptional(std::size_t n, double nu, double tol = 1e-10);

/**
 * Multiplicities of the eigenvalues nu^2 c_{k+1}(nu)^2, k = 0..n-1, of
 * E_{n,nu} E_{n,nu}^*. Values within tol * max(1, max value) are merged.
 */
std::map<double, int> multiplicity_profile(std::size_t n, double nu, double tol = kDefaultTol);

struct CorollaryResult {
  bool ok = true;
  std::vector<std::string> violations;
};

/**
 * For every two pairs whose roots coincide within 1e-10, with i1 < i2:
 * checks j1 > j2 and i2 - i1 > j1 - j2; also checks that no root is shared by
 * three pairs.
 */
CorollaryResult corollary_check(std::size_t n);

}  // namespace specrig
