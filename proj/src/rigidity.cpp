#include "specrig/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace specrig {

namespace {

constexpr std::size_t kMaxEntries = 5;

double thr_of(const Matrix& m, double tol) { return tol * std::max(1.0, m.hs_norm()); }

// Columns of v listed in cols, as an n x m block stored in an n x n matrix.
Matrix compress(const Matrix& v, const std::vector<std::size_t>& cols, const Matrix& g) {
  const std::size_t n = v.size(), m = cols.size();
  Matrix gv(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      Complex s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += g(r, q) * v(q, cols[c]);
      gv(r, c) = s;
    }
  Matrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += std::conj(v(r, cols[i])) * gv(r, j);
      out(i, j) = s;
    }
  return out;
}

std::vector<EntryRef> worst_entries(const std::string& name, const Matrix& m,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& where) {
  std::vector<EntryRef> e;
  for (auto [i, j] : where) e.push_back({name, i, j, m(i, j)});
  std::stable_sort(e.begin(), e.end(), [](const EntryRef& a, const EntryRef& b) {
    return std::abs(a.value) > std::abs(b.value);
  });
  if (e.size() > kMaxEntries) e.resize(kMaxEntries);
  return e;
}

struct Product {
  std::string name;
  Matrix cand;
  Matrix ref;
};

std::vector<Product> hermitian_products(const GeneratorTuple& t, const GeneratorTuple& ref, bool with_f_star_f) {
  std::vector<Product> p;
  p.push_back({"A2 A2^H", t.E * t.E.adjoint(), ref.E * ref.E.adjoint()});
  p.push_back({"A2^H A2", t.E.adjoint() * t.E, ref.E.adjoint() * ref.E});
  p.push_back({"A3 A3^H", t.F * t.F.adjoint(), ref.F * ref.F.adjoint()});
  if (with_f_star_f) p.push_back({"A3^H A3", t.F.adjoint() * t.F, ref.F.adjoint() * ref.F});
  return p;
}

// Resolves the basis inside a group of columns that share one reference A1
// eigenvalue (numerically), using the Hermitian products one at a time.
void refine(Matrix& v, const std::vector<std::size_t>& cols, const std::vector<Product>& prods, std::size_t p,
            double tol) {
  if (cols.size() < 2 || p >= prods.size()) return;
  const double norm = prods[p].ref.hs_norm();
  if (norm == 0.0) return refine(v, cols, prods, p + 1, tol);

  const Matrix block = compress(v, cols, prods[p].cand);
  const Matrix herm = (block + block.adjoint()) * Complex(0.5);
  const auto eig = hermitian_eig(herm, 1.0);

  std::vector<std::size_t> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return prods[p].ref(cols[a], cols[a]).real() < prods[p].ref(cols[b], cols[b]).real();
  });

  const std::size_t n = v.size(), m = cols.size();
  Matrix next = v;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t dst = cols[order[k]];
    for (std::size_t r = 0; r < n; ++r) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < m; ++c) s += v(r, cols[c]) * eig.vectors(c, k);
      next(r, dst) = s;
    }
  }
  v = next;

  std::vector<Complex> sorted_ref(m);
  for (std::size_t k = 0; k < m; ++k) sorted_ref[k] = prods[p].ref(cols[order[k]], cols[order[k]]) / norm;
  for (const auto& group : cluster_values(sorted_ref, tol)) {
    std::vector<std::size_t> sub;
    for (std::size_t g : group) sub.push_back(cols[order[g]]);
    refine(v, sub, prods, p + 1, tol);
  }
}

// Unitary V whose column k is a unit eigenvector of A1 for the reference
// eigenvalue H_kk. Empty on spectral mismatch (a finding is recorded).
std::optional<Matrix> align_basis(const GeneratorTuple& t, const GeneratorTuple& ref, const std::vector<Product>& prods,
                                  double tol, RigidityReport& rep) {
  const std::size_t n = ref.n;
  const auto eig = normal_eig(t.H, tol);
  const double thr = thr_of(ref.H, tol);

  std::vector<std::size_t> ref_order(n);
  std::iota(ref_order.begin(), ref_order.end(), 0);
  std::stable_sort(ref_order.begin(), ref_order.end(),
                   [&](std::size_t a, std::size_t b) { return ref.H(a, a).real() < ref.H(b, b).real(); });

  Finding bad{"a1_spectrum", "eigenvalues of A1 differ from the reference diagonal", {}};
  Matrix v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t dst = ref_order[k];
    if (std::abs(eig.values[k] - ref.H(dst, dst)) > thr) bad.entries.push_back({"A1", k, k, eig.values[k]});
    for (std::size_t r = 0; r < n; ++r) v(r, dst) = eig.vectors(r, k);
  }
  if (!bad.entries.empty()) {
    if (bad.entries.size() > kMaxEntries) bad.entries.resize(kMaxEntries);
    rep.diagnostics.push_back(std::move(bad));
    rep.failed_step = "a1_spectrum";
    return std::nullopt;
  }

  std::vector<Complex> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = ref.H(ref_order[k], ref_order[k]);
  for (const auto& group : cluster_values(sorted, thr)) {
    if (group.size() < 2) continue;
    std::vector<std::size_t> cols;
    for (std::size_t g : group) cols.push_back(ref_order[g]);
    refine(v, cols, prods, 0, tol);
  }
  return v;
}

bool check_products(const Matrix& v, const std::vector<Product>& prods, double tol, RigidityReport& rep) {
  const Matrix vh = v.adjoint();
  bool ok = true;
  for (const auto& p : prods) {
    const Matrix d = vh * p.cand * v - p.ref;
    const double res = d.hs_norm();
    rep.condition_residuals["basis " + p.name] = res / std::max(1.0, p.ref.hs_norm());
    if (res > thr_of(p.ref, tol)) {
      std::vector<std::pair<std::size_t, std::size_t>> all;
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) all.emplace_back(i, j);
      rep.diagnostics.push_back({"adjoint_products", p.name + " is not the reference diagonal in the A1 eigenbasis",
                                 worst_entries("V^H (" + p.name + ") V - ref", d, all)});
      ok = false;
    }
  }
  if (!ok) rep.failed_step = "adjoint_products";
  return ok;
}

// Off-band mass of b (band = +1 superdiagonal, -1 subdiagonal) and modulus
// agreement with the reference band.
bool check_band(const Matrix& b, const Matrix& refm, int band, const std::string& name, const std::string& step,
                double tol, RigidityReport& rep) {
  const std::size_t n = b.size();
  const double thr = thr_of(refm, tol);
  std::vector<std::pair<std::size_t, std::size_t>> off, onband;
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<long>(j) - static_cast<long>(i) == band) {
        onband.emplace_back(i, j);
      } else {
        mass += std::norm(b(i, j));
        off.emplace_back(i, j);
      }
    }
  mass = std::sqrt(mass);
  rep.condition_residuals[step] = mass / std::max(1.0, refm.hs_norm());
  if (mass > thr) {
    rep.diagnostics.push_back({step, name + " has mass outside its band in the A1 eigenbasis", worst_entries(name, b, off)});
    rep.failed_step = step;
    return false;
  }
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (auto [i, j] : onband)
    if (std::abs(std::abs(b(i, j)) - std::abs(refm(i, j))) > thr) bad.emplace_back(i, j);
  if (!bad.empty()) {
    rep.diagnostics.push_back({step, name + " band moduli differ from the reference", worst_entries(name, b, bad)});
    rep.failed_step = step;
    return false;
  }
  return true;
}

// e_j = B2_{j,j+1} / E_{j,j+1}, normalized to the unit circle.
std::vector<Complex> read_phases(const Matrix& b2, const Matrix& e) {
  std::vector<Complex> ph;
  for (std::size_t j = 0; j + 1 < b2.size(); ++j) {
    const Complex r = e(j, j + 1) == Complex(0.0) ? Complex(1.0) : b2(j, j + 1) / e(j, j + 1);
    ph.push_back(std::abs(r) > 0.0 ? r / std::abs(r) : Complex(1.0));
  }
  return ph;
}

Matrix witness_from_phases(const std::vector<Complex>& ph) {
  std::vector<Complex> d(ph.size() + 1, 1.0);
  for (std::size_t j = 0; j < ph.size(); ++j) d[j + 1] = d[j] * std::conj(ph[j]);
  return Matrix::diagonal(d);
}

void finish(RigidityReport& rep, const GeneratorTuple& t, const GeneratorTuple& ref, const Matrix& v,
            const std::vector<Complex>& ph, double tol) {
  rep.basis = v;
  rep.witness = witness_from_phases(ph);
  const auto cert = certify_equivalence(t, ref, rep.global_witness(), std::max(tol, 1e-8));
  rep.certified_residual = cert.relative;
  rep.certified_residual_abs = cert.absolute;
  if (cert.relative <= tol) {
    rep.verdict = Verdict::equivalent;
  } else {
    rep.verdict = Verdict::reconstruction_failed;
    rep.failed_step = "certify";
    std::ostringstream os;
    os << "relative residual " << cert.relative << " exceeds " << tol;
    rep.diagnostics.push_back({"certify", os.str(), {}});
  }
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::hypothesis_failed: return "hypothesis_failed";
    case Verdict::reconstruction_failed: return "reconstruction_failed";
  }
  return "unknown";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return 0;
    case Verdict::hypothesis_failed: return 2;
    case Verdict::reconstruction_failed: return 3;
  }
  return 1;
}

Matrix RigidityReport::global_witness() const {
  if (!basis || !witness) throw DomainError("rigidity report has no witness");
  return *basis * *witness;
}

bool ConditionCheck::all() const {
  return a1_normal && std::all_of(pencils.begin(), pencils.end(), [](const auto& p) { return p.equal; });
}

std::vector<Pencil> snu2_pencils() {
  std::vector<Pencil> out;
  for (const char* s : {"A1, A2 A2^H", "A1, A2^H A2", "A1, A3 A3^H", "A1, A3^H A3", "A1, A2 A3"})
    out.push_back(parse_pencil(s));
  return out;
}

std::vector<Pencil> sl2_pencils() {
  std::vector<Pencil> out;
  for (const char* s : {"A1, A2 A2^H", "A1, A2^H A2", "A1, A3 A3^H", "A1, A2 A3"}) out.push_back(parse_pencil(s));
  return out;
}

namespace {

// Slot i is divided by scales[i], i.e. both polynomials are compared as
// p(x1 / s1, x2 / s2). Unit-norm slots keep the coefficients balanced, so
// rounding in large entries does not swamp the small eigenvalues.
MultiPoly scaled_det(const Pencil& p, const GeneratorTuple& t, const std::vector<double>& scales) {
  std::vector<Matrix> mats = evaluate(p, t);
  for (std::size_t i = 0; i < mats.size(); ++i) mats[i] *= 1.0 / scales[i];
  return det_pencil(mats, default_vars(p.size()));
}

}  // namespace

RigidityChecker::RigidityChecker(GeneratorTuple ref, std::vector<Pencil> pencils, double tol)
    : ref_(std::move(ref)), pencils_(std::move(pencils)), tol_(tol) {
  for (const auto& p : pencils_) {
    std::vector<double> s;
    for (const Matrix& m : evaluate(p, ref_)) s.push_back(std::max(1.0, m.hs_norm()));
    ref_polys_.push_back(scaled_det(p, ref_, s));
    scales_.push_back(std::move(s));
  }
}

RigidityChecker RigidityChecker::snu2(std::size_t n, double nu, double tol) {
  return RigidityChecker(snu2_generators(n, nu), snu2_pencils(), tol);
}

RigidityChecker RigidityChecker::sl2(std::size_t n, double tol) {
  return RigidityChecker(sl2_generators(n), sl2_pencils(), tol);
}

ConditionCheck RigidityChecker::verify(const GeneratorTuple& t) const {
  if (t.n != ref_.n) throw DimensionError("rigidity: candidate dimension differs from the reference");
  ConditionCheck out;
  out.a1_normal = is_normal(t.H, tol_);
  for (std::size_t i = 0; i < pencils_.size(); ++i) {
    const auto d = poly_distance(scaled_det(pencils_[i], t, scales_[i]), ref_polys_[i]);
    out.pencils.push_back({to_string(pencils_[i]), d <= tol_, d});
  }
  return out;
}

RigidityReport RigidityChecker::reconstruct(const GeneratorTuple& t) const {
  RigidityReport rep;
  rep.family = ref_.family;
  rep.n = ref_.n;
  rep.nu = ref_.nu;

  const auto cond = verify(t);
  for (const auto& p : cond.pencils) rep.condition_residuals[p.label] = p.distance;
  if (!cond.all()) {
    rep.verdict = Verdict::hypothesis_failed;
    if (!cond.a1_normal) {
      rep.failed_step = "a1_normal";
      rep.diagnostics.push_back({"a1_normal", "A1 is not normal", {}});
    }
    for (const auto& p : cond.pencils)
      if (!p.equal) {
        if (rep.failed_step.empty()) rep.failed_step = "joint_spectrum";
        std::ostringstream os;
        os << "pencil (" << p.label << ") differs from the reference, distance " << p.distance;
        rep.diagnostics.push_back({"joint_spectrum", os.str(), {}});
      }
    return rep;
  }

  rep.verdict = Verdict::reconstruction_failed;
  const bool is_snu2 = ref_.family != Family::sl2;
  const auto prods = hermitian_products(t, ref_, is_snu2);
  const auto v = align_basis(t, ref_, prods, tol_, rep);
  if (!v) return rep;
  if (!check_products(*v, prods, tol_, rep)) return rep;

  const Matrix vh = v->adjoint();
  const Matrix b2 = vh * t.E * *v;
  const Matrix b3 = vh * t.F * *v;
  const std::size_t n = ref_.n;

  if (!check_band(b2, ref_.E, 1, "A2", "a2_support", tol_, rep)) {
    if (rep.failed_step == "a2_support" && x2_dependence(t.H, t.E))
      rep.diagnostics.push_back(
          {"x2_dependence", "det(x1 A1 + x2 A2 - I) depends on x2, so A2 is not nilpotent in the A1 eigenbasis", {}});
    return rep;
  }
  const auto ph = read_phases(b2, ref_.E);

  if (!is_snu2) {
    const double budget = std::abs(std::pow(t.F.hs_norm(), 2) - static_cast<double>(n - 1));
    rep.condition_residuals["hs_budget"] = budget / std::max(1.0, static_cast<double>(n - 1));
    if (budget > tol_ * std::max(1.0, static_cast<double>(n - 1))) {
      rep.failed_step = "hs_budget";
      rep.diagnostics.push_back({"hs_budget", "||A3||_HS^2 differs from n - 1", {}});
      return rep;
    }
    const Matrix a2a3 = t.E * t.F;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double lambda = static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(j);
      const double mu = static_cast<double>((j + 1) * (n - 1 - j));
      bool ok = false;
      std::string why;
      try {
        ok = compression_check(t.H, a2a3, lambda, mu, tol_);
      } catch (const DomainError& e) {
        why = e.what();
      }
      if (!ok) {
        rep.failed_step = "compression";
        std::ostringstream os;
        os << "compression of A2 A3 on the line (" << lambda << ", " << mu << ") fails";
        if (!why.empty()) os << ": " << why;
        rep.diagnostics.push_back({"compression", os.str(), {}});
        return rep;
      }
    }
  }

  if (!check_band(b3, ref_.F, -1, "A3", "a3_support", tol_, rep)) return rep;

  const double thr3 = thr_of(ref_.F, tol_);
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double d = std::abs(b3(j + 1, j) - std::conj(ph[j]) * ref_.F(j + 1, j));
    worst = std::max(worst, d);
    if (d > thr3) bad.emplace_back(j + 1, j);
  }
  rep.condition_residuals["phase_agreement"] = worst / std::max(1.0, ref_.F.hs_norm());
  if (!bad.empty()) {
    rep.failed_step = "phase_agreement";
    rep.diagnostics.push_back({"phase_agreement", "A3 phases disagree with the conjugate A2 phases",
                               worst_entries("A3", b3, bad)});
    return rep;
  }

  finish(rep, t, ref_, *v, ph, tol_);
  return rep;
}

ConditionCheck verify_conditions_snu2(const GeneratorTuple& t, std::size_t n, double nu, double tol) {
  return RigidityChecker::snu2(n, nu, tol).verify(t);
}

ConditionCheck verify_conditions_sl2(const GeneratorTuple& t, std::size_t n, double tol) {
  return RigidityChecker::sl2(n, tol).verify(t);
}

RigidityReport reconstruct_snu2(const GeneratorTuple& t, std::size_t n, double nu, double tol) {
  return RigidityChecker::snu2(n, nu, tol).reconstruct(t);
}

RigidityReport reconstruct_sl2(const GeneratorTuple& t, std::size_t n, double tol) {
  return RigidityChecker::sl2(n, tol).reconstruct(t);
}

double compression_residual(const Matrix& a1, const Matrix& b, Complex lambda, Complex mu, double tol) {
  if (a1.size() != b.size()) throw DimensionError("compression: dimension mismatch");
  const Matrix p = spectral_projection(a1, lambda, tol);
  return (p * b * p - p * mu).hs_norm();
}

bool compression_check(const Matrix& a1, const Matrix& b, Complex lambda, Complex mu, double tol) {
  if (a1.size() != b.size()) throw DimensionError("compression_check: dimension mismatch");
  const Matrix pair[] = {a1, b};
  const MultiPoly det = det_pencil(pair, default_vars(2));
  const LinearForm line{{lambda, mu}, -1.0};
  const auto first = divide_linear(det, line);
  if (first.remainder.max_abs_coeff() > tol * std::max(1.0, det.max_abs_coeff()))
    throw DomainError("compression_check: line is not in the joint spectrum");
  const auto second = divide_linear(first.quotient, line);
  if (second.remainder.max_abs_coeff() <= tol * std::max(1.0, first.quotient.max_abs_coeff()))
    throw DomainError("compression_check: line has multiplicity above one");
  return compression_residual(a1, b, lambda, mu, tol) <= tol * std::max(1.0, b.hs_norm());
}

Certification certify_equivalence(const GeneratorTuple& t, const GeneratorTuple& ref, const Matrix& w, double tol) {
  if (t.n != ref.n || w.size() != ref.n) throw DimensionError("certify_equivalence: dimension mismatch");
  if (!is_unitary(w, tol)) throw DomainError("certify_equivalence: witness is not unitary");
  const Matrix wh = w.adjoint();
  Certification c;
  const std::pair<const Matrix*, const Matrix*> slots[] = {{&t.H, &ref.H}, {&t.E, &ref.E}, {&t.F, &ref.F}};
  for (auto [cand, r] : slots) {
    const double res = (*cand - w * *r * wh).hs_norm();
    c.absolute = std::max(c.absolute, res);
    c.relative = std::max(c.relative, res / std::max(1.0, r->hs_norm()));
  }
  return c;
}

}  // namespace specrig
