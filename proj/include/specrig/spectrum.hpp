#pragma once

#include <span>
#include <string>
#include <vector>

#include "specrig/generators.hpp"
#include "specrig/pencil.hpp"
#include "specrig/polynomial.hpp"

namespace specrig {

struct DetOptions {
  /// det(x1 M1 + ... + xk Mk - t I) with t the last variable, instead of -I.
  bool homogeneous = false;
  /// Grid evaluations are split across this many threads; output is identical.
  unsigned threads = 1;
};

/**
 * Determinantal polynomial of a matrix pencil.
 *
 * Computes p(x) = det(x1 M1 + ... + xk Mk - I) (or the homogeneous variant)
 * by evaluating one LU determinant per node of an (n+1)^k tensor grid of
 * Chebyshev nodes on [-1, 1] and interpolating axis by axis. Both steps run in
 * double-double; coefficients are rounded to double at the end.
 */
MultiPoly det_pencil(std::span<const Matrix> mats, const std::vector<std::string>& var_names,
                     const DetOptions& options = {});

/// Default names x1..xk.
std::vector<std::string> default_vars(std::size_t k);

/// A hyperplane coeffs . x = 1 with its multiplicity.
struct Line {
  std::vector<Complex> coeffs;
  int mult = 1;
};

struct LineArrangement {
  std::vector<Line> lines;
};

/// prod (coeffs . x - 1)^mult.
MultiPoly arrangement_poly(const LineArrangement& arr, const std::vector<std::string>& vars);

struct LinesResult {
  LineArrangement arrangement;
  bool certified = false;
  /// poly_distance between the line product and det_pencil([a, b]).
  double distance = 0.0;
};

/**
 * Candidate lines lambda_j x1 + b^_jj x2 = 1 of the pencil (a, b), where b^
 * is b in an eigenbasis of the normal matrix a. Inside a repeated eigenvalue
 * of a the compression of b is diagonalized when it is normal. The result is
 * certified when the product of the lines equals det(x1 a + x2 b - I).
 */
LinesResult lines_of_pair(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

struct PencilComparison {
  std::string label;
  bool equal = false;
  double distance = 0.0;
};

/// det_pencil equality slot by slot: pencils1[i] on t1 against pencils2[i] on t2.
std::vector<PencilComparison> spectra_equal(const GeneratorTuple& t1, const std::vector<Pencil>& pencils1,
                                            const GeneratorTuple& t2, const std::vector<Pencil>& pencils2,
                                            double tol = kDefaultTol);

/// Same pencils evaluated on both tuples.
std::vector<PencilComparison> spectra_equal(const GeneratorTuple& t1, const GeneratorTuple& t2,
                                            const std::vector<Pencil>& pencils, double tol = kDefaultTol);

/// True iff det(x1 a1 + x2 a2 - I) has a monomial with positive x2 power (pruned at 1e-10).
bool x2_dependence(const Matrix& a1, const Matrix& a2);

}  // namespace specrig
