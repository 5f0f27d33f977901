#pragma once
// Test-side reference computations. None of these call into the library's
// numerical kernels; they are slow, direct transcriptions of the definitions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "specrig/numeric.hpp"
#include "specrig/polynomial.hpp"

namespace oracle {

using C = std::complex<double>;
using Grid = std::vector<std::vector<C>>;

inline Grid to_grid(const specrig::Matrix& m) {
  Grid g(m.size(), std::vector<C>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) g[i][j] = m(i, j);
  return g;
}

/// Laplace expansion along the first row.
inline C cofactor_det(const Grid& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  C sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Grid minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) minor[r - 1].push_back(a[r][k]);
    sum += ((c % 2) ? -1.0 : 1.0) * a[0][c] * cofactor_det(minor);
  }
  return sum;
}

inline C cofactor_det(const specrig::Matrix& m) { return cofactor_det(to_grid(m)); }

// Dense symbolic polynomial: exponent vector -> coefficient, never pruned.
using Poly = std::map<std::vector<int>, C>;

inline Poly pmul(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [ea, ca] : p)
    for (const auto& [eb, cb] : q) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  return out;
}

inline void padd(Poly& p, const Poly& q, C s) {
  for (const auto& [e, c] : q) p[e] += s * c;
}

/**
 * det(x1 M1 + ... + xk Mk - I) (or - t I with t an extra last variable) by
 * expansion over rows with memoised column subsets. Fine for n <= 7.
 */
inline Poly pencil_poly(const std::vector<specrig::Matrix>& mats, bool homogeneous = false) {
  const std::size_t n = mats.front().size();
  const std::size_t k = mats.size();
  const std::size_t nv = k + (homogeneous ? 1 : 0);
  std::vector<std::vector<Poly>> entry(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly p;
      for (std::size_t v = 0; v < k; ++v) {
        std::vector<int> e(nv, 0);
        e[v] = 1;
        if (mats[v](i, j) != C(0.0)) p[e] += mats[v](i, j);
      }
      if (i == j) {
        std::vector<int> e(nv, 0);
        if (homogeneous) e[k] = 1;
        p[e] += -1.0;
      }
      entry[i][j] = p;
    }
  std::map<unsigned, Poly> memo;
  // minor over rows row..n-1 and the columns still in `mask`.
  std::function<Poly(std::size_t, unsigned)> rec = [&](std::size_t row, unsigned mask) -> Poly {
    if (row == n) return Poly{{std::vector<int>(nv, 0), C(1.0)}};
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    Poly acc;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!entry[row][c].empty()) padd(acc, pmul(entry[row][c], rec(row + 1, mask & ~(1u << c))), double(sign));
      sign = -sign;
    }
    memo[mask] = acc;
    return acc;
  };
  return rec(0, (1u << n) - 1);
}

inline double max_abs(const Poly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p) m = std::max(m, std::abs(c));
  return m;
}

/// Same normalisation as the library's poly_distance, computed independently.
inline double distance(const specrig::MultiPoly& p, const Poly& q) {
  double diff = 0.0;
  for (const auto& [e, c] : q) diff = std::max(diff, std::abs(p.coeff(e) - c));
  for (const auto& [e, c] : p.terms())
    if (!q.count(e)) diff = std::max(diff, std::abs(c));
  return diff / std::max({1.0, p.max_abs_coeff(), max_abs(q)});
}

inline C eval(const Poly& p, const std::vector<C>& x) {
  C s = 0.0;
  for (const auto& [e, c] : p) {
    C t = c;
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

// Printed closed forms, evaluated literally (integer powers of a possibly
// negative base).
inline double ipow(double b, int e) { return std::pow(b, static_cast<double>(e)); }

inline double c_printed(int n, int k, double nu) {
  if (k == 0 || k == n) return 0.0;
  if (std::abs(nu) == 1.0) return (nu > 0 ? 1.0 : -1.0) * std::sqrt(double(k) * double(n - k));
  const double a = ipow(nu, n - 2 * k - 1) - ipow(nu, n - 1);
  const double b = ipow(nu, 1 - n) - ipow(nu, n - 2 * k + 1);
  return nu / (1.0 - nu * nu) * std::sqrt(a * b);
}

inline double h_printed(int n, int k, double nu) {
  if (std::abs(nu) == 1.0) return 2.0 * k + 1.0 - n;
  return nu * nu / (1.0 - nu * nu) * (ipow(nu, 2 * (n - 2 * k - 1)) - 1.0);
}

/// 1 + z + ... + z^{n-j-1} - z^{n-i} - ... - z^{n-1}, evaluated term by term.
inline double root_poly(int n, int i, int j, double z) {
  double s = 0.0;
  for (int d = 0; d <= n - j - 1; ++d) s += std::pow(z, d);
  for (int d = n - i; d <= n - 1; ++d) s -= std::pow(z, d);
  return s;
}

inline double bisect_root(int n, int i, int j) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (root_poly(n, i, j, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double hs_diff(const specrig::Matrix& a, const specrig::Matrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

}  // namespace oracle
