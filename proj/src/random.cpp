#include "specrig/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace specrig {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t bound) { return static_cast<std::size_t>(uniform() * static_cast<double>(bound)); }

Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = Complex(rng.normal(), rng.normal());

  // Modified Gram-Schmidt, two passes; the column norms play R's positive diagonal.
  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < c; ++p) {
        Complex s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += std::conj(q(r, p)) * q(r, c);
        for (std::size_t r = 0; r < n; ++r) q(r, c) -= s * q(r, p);
      }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
  }
  return q;
}

Matrix random_phase_diagonal(std::size_t n, Rng& rng, bool fix_first) {
  std::vector<Complex> d(n);
  for (std::size_t k = 0; k < n; ++k)
    d[k] = (fix_first && k == 0) ? Complex(1.0) : std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return Matrix::diagonal(d);
}

std::string_view conjugation_mode_name(ConjugationMode m) {
  return m == ConjugationMode::phase ? "phase" : "unitary";
}

ConjugationMode parse_conjugation_mode(std::string_view name) {
  if (name == "phase") return ConjugationMode::phase;
  if (name == "unitary") return ConjugationMode::unitary;
  throw DomainError("unknown conjugation mode '" + std::string(name) + "' (expected phase|unitary)");
}

GeneratorTuple random_conjugate(const GeneratorTuple& t, ConjugationMode mode, Rng& rng) {
  const Matrix w = mode == ConjugationMode::phase ? random_phase_diagonal(t.n, rng) : random_unitary(t.n, rng);
  GeneratorTuple out = conjugate(t, w);
  out.family = Family::custom;
  return out;
}

GeneratorTuple tamper(const GeneratorTuple& t, double magnitude, Rng& rng) {
  GeneratorTuple out = t;
  out.family = Family::custom;
  Matrix* slots[] = {&out.H, &out.E, &out.F};
  Matrix& m = *slots[rng.index(3)];
  const std::size_t i = rng.index(t.n), j = rng.index(t.n);
  const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  m(i, j) += dir * (magnitude * std::max(1.0, m.hs_norm()));
  return out;
}

}  // namespace specrig
