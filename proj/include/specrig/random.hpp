#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "specrig/generators.hpp"

namespace specrig {

/// Seeded generator for test fixtures. Distributions are derived from the raw
/// mt19937_64 stream so output does not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();
  std::size_t index(std::size_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary (QR of a complex Ginibre matrix, R's diagonal made positive).
Matrix random_unitary(std::size_t n, Rng& rng);

/// diag(e^{i theta_k}); the first entry is 1 when fix_first is set.
Matrix random_phase_diagonal(std::size_t n, Rng& rng, bool fix_first = false);

enum class ConjugationMode { phase, unitary };

std::string_view conjugation_mode_name(ConjugationMode m);
ConjugationMode parse_conjugation_mode(std::string_view name);

/// w t w* with w drawn according to mode; the result has family custom.
GeneratorTuple random_conjugate(const GeneratorTuple& t, ConjugationMode mode, Rng& rng);

/// Adds magnitude * max(1, ||slot||_HS) to one random entry of one random slot.
GeneratorTuple tamper(const GeneratorTuple& t, double magnitude, Rng& rng);

}  // namespace specrig
