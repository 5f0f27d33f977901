#include "specrig/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specrig/generators.hpp"

namespace specrig {

namespace {

constexpr double kCoincidence = 1e-10;

void check_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j + 1 <= n && i + j > n)) {
    std::ostringstream os;
    os << "exceptional pair (" << i << ", " << j << ") violates i < j <= n-1, i + j > n for n = " << n;
    throw DomainError(os.str());
  }
}

double horner(const std::vector<double>& c, double z) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

std::vector<double> root_polynomial(std::size_t n, std::size_t i, std::size_t j) {
  check_pair(n, i, j);
  std::vector<double> c(n, 0.0);
  for (std::size_t d = 0; d < n - j; ++d) c[d] = 1.0;
  for (std::size_t d = n - i; d < n; ++d) c[d] = -1.0;
  return c;
}

int descartes_sign_changes(const std::vector<double>& coeffs) {
  int changes = 0;
  double last = 0.0;
  for (double c : coeffs) {
    if (c == 0.0) continue;
    if (last != 0.0 && (c > 0) != (last > 0)) ++changes;
    last = c;
  }
  return changes;
}

ExceptionalRoot z_root(std::size_t n, std::size_t i, std::size_t j) {
  const auto c = root_polynomial(n, i, j);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (horner(c, mid) > 0.0 ? lo : hi) = mid;
  }
  const double z = std::abs(horner(c, lo)) <= std::abs(horner(c, hi)) ? lo : hi;
  return {n, i, j, z, std::sqrt(z)};
}

std::vector<double> ExceptionalSet::tilde_values() const {
  std::vector<double> v;
  for (const auto& r : roots) {
    v.push_back(-r.nu);
    v.push_back(r.nu);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> ExceptionalSet::values() const {
  auto v = tilde_values();
  v.push_back(-1.0);
  v.push_back(1.0);
  std::sort(v.begin(), v.end());
  return v;
}

ExceptionalSet exceptional_set(std::size_t n) {
  if (n < 2) throw DomainError("exceptional_set: n must be at least 2");
  ExceptionalSet s{n, {}};
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (i + j > n) s.roots.push_back(z_root(n, i, j));
  return s;
}

bool is_exceptional(std::size_t n, double nu, double tol) {
  if (std::abs(std::abs(nu) - 1.0) <= tol) return true;
  for (const auto& r : exceptional_set(n).roots)
    if (std::abs(std::abs(nu) - r.nu) <= tol) return true;
  return false;
}

std::map<double, int> multiplicity_profile(std::size_t n, double nu, double tol) {
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = c_coeff(n, k + 1, nu);
    vals[k] = nu * nu * c * c;
  }
  std::sort(vals.begin(), vals.end());
  const double thr = tol * std::max(1.0, vals.back());
  std::map<double, int> out;
  double anchor = 0.0;
  bool open = false;
  for (double v : vals) {
    if (open && v - anchor <= thr) {
      ++out[anchor];
    } else {
      anchor = v;
      out[anchor] = 1;
      open = true;
    }
  }
  return out;
}

CorollaryResult corollary_check(std::size_t n) {
  CorollaryResult res;
  const auto set = exceptional_set(n);
  const auto& r = set.roots;
  for (std::size_t a = 0; a < r.size(); ++a) {
    std::size_t shared = 1;
    for (std::size_t b = 0; b < r.size(); ++b) {
      if (a == b || std::abs(r[a].z - r[b].z) > kCoincidence) continue;
      ++shared;
      if (r[a].i >= r[b].i) continue;
      // r[a] plays (i1, j1), r[b] plays (i2, j2).
      const bool order = r[a].j > r[b].j;
      const bool gap = order && (r[b].i - r[a].i > r[a].j - r[b].j);
      if (!order || !gap) {
        std::ostringstream os;
        os << "pairs (" << r[a].i << "," << r[a].j << ") and (" << r[b].i << "," << r[b].j
           << ") share z = " << r[a].z << " but violate the ordering";
        res.violations.push_back(os.str());
      }
    }
    if (shared >= 3) {
      std::ostringstream os;
      os << "root z = " << r[a].z << " of (" << r[a].i << "," << r[a].j << ") is shared by " << shared << " pairs";
      res.violations.push_back(os.str());
    }
  }
  res.ok = res.violations.empty();
  return res;
}

}  // namespace specrig
