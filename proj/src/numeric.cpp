#include "specrig/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace specrig {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_size(const Matrix& a, const Matrix& b, const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.size() << " vs " << b.size() << ")";
    throw DimensionError(os.str());
  }
}

// Canonical eigenvector phase: first component of (numerically) maximal
// modulus becomes real positive.
void normalize_phase(Matrix& v, std::size_t col) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(v(i, col)));
  if (best == 0.0) return;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(v(i, col)) >= best * (1.0 - 1e-8)) {
      const Complex phase = std::conj(v(i, col)) / std::abs(v(i, col));
      for (std::size_t r = 0; r < n; ++r) v(r, col) *= phase;
      v(i, col) = std::abs(v(i, col));
      return;
    }
  }
}

// Right-multiplies columns p, q of m by the 2x2 matrix g.
void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const Complex g[2][2]) {
  for (std::size_t r = 0; r < m.size(); ++r) {
    const Complex mp = m(r, p), mq = m(r, q);
    m(r, p) = mp * g[0][0] + mq * g[1][0];
    m(r, q) = mp * g[0][1] + mq * g[1][1];
  }
}

// Left-multiplies rows p, q of m by g*.
void rotate_rows_adjoint(Matrix& m, std::size_t p, std::size_t q, const Complex g[2][2]) {
  for (std::size_t c = 0; c < m.size(); ++c) {
    const Complex mp = m(p, c), mq = m(q, c);
    m(p, c) = std::conj(g[0][0]) * mp + std::conj(g[1][0]) * mq;
    m(q, c) = std::conj(g[0][1]) * mp + std::conj(g[1][1]) * mq;
  }
}

// Cyclic Jacobi on a Hermitian matrix (no symmetry check). Returns unsorted
// eigenvalues in the diagonal of `a` and the accumulated rotations in `v`.
void jacobi_sweeps(Matrix& a, Matrix& v) {
  const std::size_t n = a.size();
  const double scale = a.hs_norm();
  if (scale == 0.0) return;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (a.off_diagonal_norm() <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        // Reduce to a real symmetric 2x2 block with the phase of a_pq, then
        // apply the standard real Jacobi rotation.
        const Complex e = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex g[2][2] = {{c, s}, {-s * std::conj(e), c * std::conj(e)}};
        rotate_columns(a, p, q, g);
        rotate_rows_adjoint(a, p, q, g);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, g);
      }
    }
  }
}

}  // namespace

Complex make_scalar(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw DomainError("non-finite scalar");
  return {re, im};
}

Matrix::Matrix(std::size_t n) : n_(n), a_(n * n) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
  if (a_.size() != n * n) throw DimensionError("entry count does not match n*n");
  if (!std::all_of(a_.begin(), a_.end(), finite)) throw DomainError("non-finite matrix entry");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
  if (n_ == 0) throw DimensionError("matrix dimension must be positive");
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("ragged or non-square matrix literal");
    a_.insert(a_.end(), row.begin(), row.end());
  }
  if (!std::all_of(a_.begin(), a_.end(), finite)) throw DomainError("non-finite matrix entry");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!finite(d[i])) throw DomainError("non-finite matrix entry");
    m(i, i) = d[i];
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  std::vector<Complex> c(d.begin(), d.end());
  return diagonal(std::span<const Complex>(c));
}

Matrix Matrix::adjoint() const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::hs_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double Matrix::off_diagonal_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

std::vector<Complex> Matrix::diag() const {
  std::vector<Complex> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  require_same_size(*this, b, "add");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
  require_same_size(*this, b, "sub");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : a_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "mul");
  const std::size_t n = a.size();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix mat_op(const Matrix& a, const Matrix& b, MatOp kind) {
  switch (kind) {
    case MatOp::add: return a + b;
    case MatOp::sub: return a - b;
    case MatOp::mul: return a * b;
    case MatOp::commutator: return a * b - b * a;
  }
  throw std::logic_error("unknown MatOp");
}

Matrix commutator(const Matrix& a, const Matrix& b) { return mat_op(a, b, MatOp::commutator); }

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

Complex determinant(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<Complex> lu(m.entries().begin(), m.entries().end());
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu[i * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      std::swap_ranges(lu.begin() + k * n, lu.begin() + (k + 1) * n, lu.begin() + piv * n);
      det = -det;
    }
    const Complex pivot = lu[k * n + k];
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu[i * n + k] / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
    }
  }
  return det;
}

bool is_hermitian(const Matrix& a, double tol) {
  return (a - a.adjoint()).hs_norm() <= tol * std::max(1.0, a.hs_norm());
}

bool is_normal(const Matrix& a, double tol) {
  const Matrix as = a.adjoint();
  const double s = a.hs_norm();
  return (a * as - as * a).hs_norm() <= tol * std::max(1.0, s * s);
}

bool is_unitary(const Matrix& a, double tol) {
  return (a * a.adjoint() - Matrix::identity(a.size())).hs_norm() <=
         tol * std::max(1.0, std::sqrt(static_cast<double>(a.size())));
}

EigenDecomposition hermitian_eig(const Matrix& a, double tol) {
  if ((a - a.adjoint()).hs_norm() > tol * a.hs_norm()) throw DomainError("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = a.size();
  Matrix work = (a + a.adjoint()) * Complex(0.5);
  Matrix v = Matrix::identity(n);
  jacobi_sweeps(work, v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return work(x, x).real() < work(y, y).real(); });
  EigenDecomposition out{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = work(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    normalize_phase(out.vectors, k);
  }
  return out;
}

NormalDecomposition normal_eig(const Matrix& a, double tol) {
  if (!is_normal(a, tol)) throw DomainError("normal_eig: matrix is not normal");
  const std::size_t n = a.size();
  const Matrix as = a.adjoint();
  const Matrix re_part = (a + as) * Complex(0.5);
  const Matrix im_part = (a - as) * Complex(0.0, -0.5);

  // Commuting Hermitian parts share an eigenbasis; a generic real combination
  // separates their joint eigenvalues.
  const double mixes[] = {0.6180339887498949, 1.4142135623730951, 0.2679491924311227};
  NormalDecomposition best{{}, Matrix(n)};
  double best_off = -1.0;
  for (double phi : mixes) {
    const auto eig = hermitian_eig(re_part + im_part * Complex(phi), 1.0);
    const Matrix t = eig.vectors.adjoint() * a * eig.vectors;
    const double off = t.off_diagonal_norm();
    if (best_off < 0.0 || off < best_off) {
      best_off = off;
      best.values = t.diag();
      best.vectors = eig.vectors;
    }
    if (off <= tol * std::max(1.0, a.hs_norm())) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Complex u = best.values[x], w = best.values[y];
    return u.real() != w.real() ? u.real() < w.real() : u.imag() < w.imag();
  });
  NormalDecomposition out{std::vector<Complex>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = best.values[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = best.vectors(r, order[k]);
  }
  return out;
}

double cluster_threshold(const Matrix& a, double tol) { return tol * std::max(1.0, a.hs_norm()); }

std::vector<std::vector<std::size_t>> cluster_values(std::span<const Complex> sorted, double threshold) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (!groups.empty() && std::abs(sorted[k] - sorted[groups.back().back()]) <= threshold)
      groups.back().push_back(k);
    else
      groups.push_back({k});
  }
  return groups;
}

Matrix spectral_projection(const Matrix& a, Complex lambda, double tol) {
  const auto eig = normal_eig(a, tol);
  const double thr = cluster_threshold(a, tol);
  const std::size_t n = a.size();
  Matrix p(n);
  bool found = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(eig.values[k] - lambda) > thr) continue;
    found = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  if (!found) {
    std::ostringstream os;
    os << "spectral_projection: " << lambda << " is not an eigenvalue";
    throw DomainError(os.str());
  }
  return p;
}

MatrixClass classify(const Matrix& a, double tol) {
  MatrixClass c;
  c.hermitian = is_hermitian(a, tol);
  c.normal = is_normal(a, tol);
  c.unitary = is_unitary(a, tol);
  c.diagonal = a.off_diagonal_norm() <= tol * std::max(1.0, a.hs_norm());
  if (c.normal) {
    const auto eig = normal_eig(a, tol);
    c.simple_spectrum = cluster_values(eig.values, cluster_threshold(a, tol)).size() == a.size();
  }
  return c;
}

std::string to_string(const Matrix& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << a(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace specrig
