#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "specrig/numeric.hpp"

namespace specrig {

using Exponent = std::vector<int>;

/// Affine form coeffs . x + constant.
struct LinearForm {
  std::vector<Complex> coeffs;
  Complex constant = 0.0;
};

/**
 * Sparse multivariate polynomial with complex coefficients.
 *
 * Terms are keyed by dense exponent vectors (one entry per variable), so the
 * lexicographic map order doubles as the serialization order. Coefficients
 * with |c| <= 1e-14 * max|c| are dropped after every operation.
 */
class MultiPoly {
 public:
  static constexpr double kPruneRel = 1e-14;

  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, Complex c);
  static MultiPoly variable(std::vector<std::string> vars, std::size_t i);
  static MultiPoly linear(std::vector<std::string> vars, const LinearForm& f);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::map<Exponent, Complex>& terms() const { return terms_; }

  /// Adds c to the coefficient of x^e (no pruning; call prune() afterwards).
  void add_term(const Exponent& e, Complex c);
  Complex coeff(const Exponent& e) const;

  bool is_zero() const { return terms_.empty(); }
  double max_abs_coeff() const;
  int total_degree() const;

  /// Drops terms with |c| <= rel * max|c|.
  MultiPoly& prune(double rel = kPruneRel);
  MultiPoly pruned(double rel) const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::vector<std::string> vars_;
  std::map<Exponent, Complex> terms_;
};

enum class PolyOp { add, mul };

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp kind);
MultiPoly scale(const MultiPoly& p, Complex s);
MultiPoly operator+(const MultiPoly& p, const MultiPoly& q);
MultiPoly operator-(const MultiPoly& p, const MultiPoly& q);
MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);

/// Nested Horner evaluation, one variable at a time.
Complex eval(const MultiPoly& p, std::span<const Complex> point);

/// max|p_a - q_a| / max(1, max|p|, max|q|); +inf when variable lists differ.
double poly_distance(const MultiPoly& p, const MultiPoly& q);
bool poly_equal(const MultiPoly& p, const MultiPoly& q, double tol = kDefaultTol);

struct Division {
  MultiPoly quotient;
  MultiPoly remainder;
};

/// Pivot variable of f: the one with the largest |coefficient| (lowest index on ties).
std::size_t pivot_variable(const LinearForm& f);

/// p = f * quotient + remainder, remainder free of f's pivot variable.
Division divide_linear(const MultiPoly& p, const LinearForm& f);

int var_degree(const MultiPoly& p, std::size_t i);

std::string to_string(const MultiPoly& p);

}  // namespace specrig
