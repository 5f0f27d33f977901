#include "specrig/spectrum.hpp"

#include "ddouble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace specrig {

namespace {

using detail::CDD;
using detail::DD;

constexpr std::size_t kMaxVars = 4;

// Polynomial interpolation in the monomial basis (Bjorck-Pereyra), in place.
// values[i * stride] holds p(nodes[i]) on entry and the coefficient of x^i on
// exit.
void interpolate_fiber(std::span<const double> nodes, CDD* values, std::size_t stride) {
  const std::size_t m = nodes.size();
  if (m < 2) return;
  const std::size_t deg = m - 1;
  auto at = [&](std::size_t i) -> CDD& { return values[i * stride]; };
  for (std::size_t k = 0; k < deg; ++k)
    for (std::size_t i = deg; i > k; --i)
      at(i) = (at(i) - at(i - 1)) / (DD(nodes[i]) - DD(nodes[i - k - 1]));
  for (std::size_t k = deg; k-- > 0;)
    for (std::size_t i = k; i < deg; ++i) at(i) = at(i) - at(i + 1) * DD(nodes[k]);
}

std::vector<double> chebyshev_nodes(std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t j = 0; j < count; ++j)
    x[j] = std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(count)));
  return x;
}

// LU with partial pivoting in double-double; a is destroyed.
CDD determinant_dd(std::vector<CDD>& a, std::size_t n) {
  CDD det(DD(1.0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = detail::magnitude(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = detail::magnitude(a[i * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return CDD();
    if (piv != k) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * n), a.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                       a.begin() + static_cast<std::ptrdiff_t>(piv * n));
      det = -det;
    }
    const CDD pivot = a[k * n + k];
    det = det * pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (detail::is_zero(a[i * n + k])) continue;
      const CDD f = a[i * n + k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] = a[i * n + j] - f * a[k * n + j];
    }
  }
  return det;
}

}  // namespace

std::vector<std::string> default_vars(std::size_t k) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= k; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

MultiPoly det_pencil(std::span<const Matrix> mats, const std::vector<std::string>& var_names,
                     const DetOptions& options) {
  if (mats.empty()) throw DimensionError("det_pencil: empty pencil");
  const std::size_t n = mats.front().size();
  for (const auto& m : mats)
    if (m.size() != n) throw DimensionError("det_pencil: pencil matrices differ in dimension");

  std::vector<Matrix> terms(mats.begin(), mats.end());
  if (options.homogeneous) terms.push_back(Matrix::identity(n) * Complex(-1.0));
  const std::size_t k = terms.size();
  if (k > kMaxVars) throw DimensionError("det_pencil: at most 4 variables are supported");
  if (var_names.size() != k) throw DimensionError("det_pencil: variable name count does not match pencil length");

  const std::size_t per_axis = n + 1;
  const std::vector<double> nodes = chebyshev_nodes(per_axis);

  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= per_axis;
  std::vector<CDD> grid(total);

  // Flat index = sum idx_i * per_axis^(k-1-i); axis 0 varies slowest.
  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> idx(k);
    std::vector<CDD> pencil(n * n);
    for (std::size_t flat = begin; flat < end; ++flat) {
      std::size_t rest = flat;
      for (std::size_t i = k; i-- > 0;) {
        idx[i] = rest % per_axis;
        rest /= per_axis;
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          CDD v(DD(!options.homogeneous && r == c ? -1.0 : 0.0));
          for (std::size_t i = 0; i < k; ++i) {
            const Complex m = terms[i](r, c);
            if (m == Complex(0.0)) continue;
            const DD x(nodes[idx[i]]);
            v = v + CDD(DD(m.real()) * x, DD(m.imag()) * x);
          }
          pencil[r * n + c] = v;
        }
      grid[flat] = determinant_dd(pencil, n);
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    evaluate_range(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk, e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(evaluate_range, b, e);
    }
  }

  std::size_t stride = total;
  for (std::size_t axis = 0; axis < k; ++axis) {
    stride /= per_axis;
    const std::size_t block = stride * per_axis;
    for (std::size_t outer = 0; outer < total; outer += block)
      for (std::size_t inner = 0; inner < stride; ++inner)
        interpolate_fiber(nodes, grid.data() + outer + inner, stride);
  }

  MultiPoly p(var_names);
  Exponent e(k);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    int degree = 0;
    for (std::size_t i = k; i-- > 0;) {
      e[i] = static_cast<int>(rest % per_axis);
      degree += e[i];
      rest /= per_axis;
    }
    // Total degree never exceeds n; anything above is interpolation noise.
    if (degree > static_cast<int>(n)) continue;
    const CDD& c = grid[flat];
    p.add_term(e, Complex(c.re.hi + c.re.lo, c.im.hi + c.im.lo));
  }
  return p.prune();
}

MultiPoly arrangement_poly(const LineArrangement& arr, const std::vector<std::string>& vars) {
  MultiPoly p = MultiPoly::constant(vars, 1.0);
  for (const auto& line : arr.lines) {
    const MultiPoly factor = MultiPoly::linear(vars, LinearForm{line.coeffs, -1.0});
    for (int m = 0; m < line.mult; ++m) p = p * factor;
  }
  return p;
}

LinesResult lines_of_pair(const Matrix& a, const Matrix& b, double tol) {
  if (a.size() != b.size()) throw DimensionError("lines_of_pair: dimension mismatch");
  if (!is_normal(a, tol)) throw DomainError("lines_of_pair: first matrix is not normal");
  const std::size_t n = a.size();
  const auto eig = normal_eig(a, tol);
  const double thr_a = cluster_threshold(a, tol);
  const double thr_b = cluster_threshold(b, tol);

  std::vector<std::pair<Complex, Complex>> pairs;
  for (const auto& group : cluster_values(eig.values, thr_a)) {
    const std::size_t m = group.size();
    Matrix basis(n);  // only the first m columns are used
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t r = 0; r < n; ++r) basis(r, c) = eig.vectors(r, group[c]);
    Matrix block(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t q = 0; q < n; ++q) s += std::conj(basis(r, i)) * b(r, q) * basis(q, j);
        block(i, j) = s;
      }
    std::vector<Complex> slopes = block.diag();
    if (m > 1 && is_normal(block, tol)) slopes = normal_eig(block, tol).values;
    for (std::size_t c = 0; c < m; ++c) pairs.emplace_back(eig.values[group[c]], slopes[c]);
  }

  LinesResult out;
  std::vector<bool> used(pairs.size(), false);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (used[i]) continue;
    Line line{{pairs[i].first, pairs[i].second}, 1};
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (!used[j] && std::abs(pairs[j].first - pairs[i].first) <= thr_a &&
          std::abs(pairs[j].second - pairs[i].second) <= thr_b) {
        used[j] = true;
        ++line.mult;
      }
    }
    out.arrangement.lines.push_back(std::move(line));
  }

  const auto vars = default_vars(2);
  const Matrix pair[] = {a, b};
  const MultiPoly det = det_pencil(pair, vars);
  out.distance = poly_distance(arrangement_poly(out.arrangement, vars), det);
  out.certified = out.distance <= tol;
  return out;
}

std::vector<PencilComparison> spectra_equal(const GeneratorTuple& t1, const std::vector<Pencil>& pencils1,
                                            const GeneratorTuple& t2, const std::vector<Pencil>& pencils2,
                                            double tol) {
  if (pencils1.size() != pencils2.size()) throw DimensionError("spectra_equal: pencil lists differ in length");
  if (t1.n != t2.n) throw DimensionError("spectra_equal: tuples differ in dimension");
  std::vector<PencilComparison> out;
  for (std::size_t i = 0; i < pencils1.size(); ++i) {
    if (pencils1[i].size() != pencils2[i].size())
      throw DimensionError("spectra_equal: pencil " + std::to_string(i) + " differs in length");
    const auto vars = default_vars(pencils1[i].size());
    const auto m1 = evaluate(pencils1[i], t1);
    const auto m2 = evaluate(pencils2[i], t2);
    const double d = poly_distance(det_pencil(m1, vars), det_pencil(m2, vars));
    out.push_back({to_string(pencils1[i]), d <= tol, d});
  }
  return out;
}

std::vector<PencilComparison> spectra_equal(const GeneratorTuple& t1, const GeneratorTuple& t2,
                                            const std::vector<Pencil>& pencils, double tol) {
  return spectra_equal(t1, pencils, t2, pencils, tol);
}

bool x2_dependence(const Matrix& a1, const Matrix& a2) {
  const Matrix pair[] = {a1, a2};
  return var_degree(det_pencil(pair, default_vars(2)).prune(1e-10), 1) > 0;
}

}  // namespace specrig
