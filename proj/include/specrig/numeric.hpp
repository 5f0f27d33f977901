#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace specrig {

using Complex = std::complex<double>;

/// Tolerance used wherever a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Checked constructor for scalars coming from untrusted input.
Complex make_scalar(double re, double im = 0.0);

/**
 * Dense square complex matrix, row-major.
 *
 * Every entry is finite and n >= 1. All arithmetic returns new values; a
 * Matrix is never shared mutably between callers.
 */
class Matrix {
 public:
  explicit Matrix(std::size_t n);
  Matrix(std::size_t n, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> d);
  static Matrix diagonal(std::span<const double> d);

  std::size_t size() const { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const Complex> entries() const { return a_; }

  Matrix adjoint() const;
  Complex trace() const;
  double hs_norm() const;
  /// Hilbert-Schmidt norm of the off-diagonal part.
  double off_diagonal_norm() const;
  std::vector<Complex> diag() const;

  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> a_;
};

enum class MatOp { add, sub, mul, commutator };

Matrix mat_op(const Matrix& a, const Matrix& b, MatOp kind);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);

/// LU with partial pivoting. Returns exactly 0 for a zero pivot column.
Complex determinant(const Matrix& a);

/// Eigen-decomposition of a Hermitian matrix: ascending values, unit columns.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

/// Eigen-decomposition of a normal matrix. Values sorted by (re, im).
struct NormalDecomposition {
  std::vector<Complex> values;
  Matrix vectors;
};

/**
 * Cyclic Jacobi diagonalization of a Hermitian matrix.
 *
 * Throws DomainError when ||a - a*||_HS > tol * ||a||_HS. Each eigenvector is
 * phase-normalized so that its first largest-modulus component is real
 * positive, which makes the output deterministic for diagonal inputs.
 */
EigenDecomposition hermitian_eig(const Matrix& a, double tol = kDefaultTol);

/// Diagonalizes a normal matrix; throws DomainError when a is not normal.
NormalDecomposition normal_eig(const Matrix& a, double tol = kDefaultTol);

/// Eigenvalues within tol*max(1, ||a||) of each other are one spectral point.
double cluster_threshold(const Matrix& a, double tol);

/// Groups consecutive sorted values into clusters; returns index ranges.
std::vector<std::vector<std::size_t>> cluster_values(std::span<const Complex> sorted, double threshold);

/// Orthogonal projection onto the eigenspace of a normal matrix at lambda.
Matrix spectral_projection(const Matrix& a, Complex lambda, double tol = kDefaultTol);

struct MatrixClass {
  bool normal = false;
  bool hermitian = false;
  bool unitary = false;
  bool diagonal = false;
  /// Only meaningful for normal matrices; false otherwise.
  bool simple_spectrum = false;
};

MatrixClass classify(const Matrix& a, double tol = kDefaultTol);

bool is_normal(const Matrix& a, double tol = kDefaultTol);
bool is_hermitian(const Matrix& a, double tol = kDefaultTol);
bool is_unitary(const Matrix& a, double tol = kDefaultTol);

std::string to_string(const Matrix& a);

}  // namespace specrig
