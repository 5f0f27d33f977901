#include "specrig/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace specrig {

namespace {

void require_same_vars(const MultiPoly& p, const MultiPoly& q) {
  if (p.vars() != q.vars()) throw DimensionError("polynomial variable lists differ");
}

using TermIt = std::map<Exponent, Complex>::const_iterator;

// Terms in [first, last) share exponents of variables < v.
Complex horner(TermIt first, TermIt last, std::size_t v, std::span<const Complex> x) {
  if (first == last) return 0.0;
  if (v == x.size()) return first->second;
  Complex acc = 0.0;
  int deg = std::prev(last)->first[v];
  auto group_end = last;
  // Walk groups from the highest exponent of x_v downwards.
  while (group_end != first) {
    auto group_begin = std::prev(group_end);
    const int e = group_begin->first[v];
    while (group_begin != first && std::prev(group_begin)->first[v] == e) --group_begin;
    for (; deg > e; --deg) acc *= x[v];
    acc += horner(group_begin, group_end, v + 1, x);
    group_end = group_begin;
  }
  for (; deg > 0; --deg) acc *= x[v];
  return acc;
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, Complex c) {
  MultiPoly p(std::move(vars));
  p.add_term(Exponent(p.nvars(), 0), c);
  return p.prune();
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t i) {
  MultiPoly p(std::move(vars));
  if (i >= p.nvars()) throw DimensionError("variable index out of range");
  Exponent e(p.nvars(), 0);
  e[i] = 1;
  p.add_term(e, 1.0);
  return p;
}

MultiPoly MultiPoly::linear(std::vector<std::string> vars, const LinearForm& f) {
  MultiPoly p(std::move(vars));
  if (f.coeffs.size() != p.nvars()) throw DimensionError("linear form length does not match variable count");
  Exponent e(p.nvars(), 0);
  p.add_term(e, f.constant);
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    e[i] = 1;
    p.add_term(e, f.coeffs[i]);
    e[i] = 0;
  }
  return p.prune();
}

void MultiPoly::add_term(const Exponent& e, Complex c) {
  if (e.size() != vars_.size()) throw DimensionError("exponent length does not match variable count");
  if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) throw DomainError("negative exponent");
  if (c == 0.0) return;
  terms_[e] += c;
}

Complex MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double MultiPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

MultiPoly& MultiPoly::prune(double rel) {
  const double cut = rel * max_abs_coeff();
  std::erase_if(terms_, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
  return *this;
}

MultiPoly MultiPoly::pruned(double rel) const {
  MultiPoly p = *this;
  return p.prune(rel);
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp kind) {
  require_same_vars(p, q);
  MultiPoly r(p.vars());
  if (kind == PolyOp::add) {
    for (const auto& [e, c] : p.terms()) r.add_term(e, c);
    for (const auto& [e, c] : q.terms()) r.add_term(e, c);
  } else {
    Exponent e(p.nvars());
    for (const auto& [ep, cp] : p.terms())
      for (const auto& [eq, cq] : q.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
        r.add_term(e, cp * cq);
      }
  }
  return r.prune();
}

MultiPoly scale(const MultiPoly& p, Complex s) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c * s);
  return r.prune();
}

MultiPoly operator+(const MultiPoly& p, const MultiPoly& q) { return poly_arith(p, q, PolyOp::add); }
MultiPoly operator-(const MultiPoly& p, const MultiPoly& q) { return poly_arith(p, scale(q, -1.0), PolyOp::add); }
MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) { return poly_arith(p, q, PolyOp::mul); }

Complex eval(const MultiPoly& p, std::span<const Complex> point) {
  if (point.size() != p.nvars()) throw DimensionError("evaluation point length does not match variable count");
  if (p.nvars() == 0) return p.is_zero() ? Complex(0.0) : p.terms().begin()->second;
  return horner(p.terms().begin(), p.terms().end(), 0, point);
}

double poly_distance(const MultiPoly& p, const MultiPoly& q) {
  if (p.vars() != q.vars()) return std::numeric_limits<double>::infinity();
  double diff = 0.0;
  auto ip = p.terms().begin(), iq = q.terms().begin();
  while (ip != p.terms().end() || iq != q.terms().end()) {
    if (iq == q.terms().end() || (ip != p.terms().end() && ip->first < iq->first)) {
      diff = std::max(diff, std::abs(ip->second));
      ++ip;
    } else if (ip == p.terms().end() || iq->first < ip->first) {
      diff = std::max(diff, std::abs(iq->second));
      ++iq;
    } else {
      diff = std::max(diff, std::abs(ip->second - iq->second));
      ++ip;
      ++iq;
    }
  }
  return diff / std::max({1.0, p.max_abs_coeff(), q.max_abs_coeff()});
}

bool poly_equal(const MultiPoly& p, const MultiPoly& q, double tol) { return poly_distance(p, q) <= tol; }

std::size_t pivot_variable(const LinearForm& f) {
  std::size_t v = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (std::abs(f.coeffs[i]) > best) {
      best = std::abs(f.coeffs[i]);
      v = i;
    }
  }
  if (best <= 0.0) throw DomainError("divide_linear: linear form has no variable part");
  return v;
}

Division divide_linear(const MultiPoly& p, const LinearForm& f) {
  if (f.coeffs.size() != p.nvars()) throw DimensionError("linear form length does not match variable count");
  const std::size_t v = pivot_variable(f);
  const Complex lead = f.coeffs[v];

  // f = lead * (x_v - root), root free of x_v.
  LinearForm neg = f;
  neg.coeffs[v] = 0.0;
  for (auto& c : neg.coeffs) c = -c / lead;
  neg.constant = -neg.constant / lead;
  const MultiPoly root = MultiPoly::linear(p.vars(), neg);

  // Slice p by powers of x_v.
  const int deg = var_degree(p, v);
  std::vector<MultiPoly> slice(std::max(deg, 0) + 1, MultiPoly(p.vars()));
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    rest[v] = 0;
    slice[e[v]].add_term(rest, c);
  }

  // Synthetic division: b_d = p_d, b_k = p_k + root * b_{k+1}.
  MultiPoly quotient(p.vars());
  MultiPoly b = slice[deg < 0 ? 0 : deg];
  for (int k = deg - 1; k >= 0; --k) {
    for (const auto& [e, c] : b.terms()) {
      Exponent shifted = e;
      shifted[v] = k;
      quotient.add_term(shifted, c / lead);
    }
    b = slice[k] + root * b;
  }
  quotient.prune();
  b.prune();
  return {std::move(quotient), std::move(b)};
}

int var_degree(const MultiPoly& p, std::size_t i) {
  if (i >= p.nvars()) throw DimensionError("variable index out of range");
  int d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, e[i]);
  return d;
}

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    os << (first ? "" : " + ") << '(' << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << 'i';
    os << ')';
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << '*' << p.vars()[i];
      if (e[i] > 1) os << '^' << e[i];
    }
    first = false;
  }
  return os.str();
}

}  // namespace specrig
