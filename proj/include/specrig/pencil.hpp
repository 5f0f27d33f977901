#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "specrig/generators.hpp"

namespace specrig {

/// Pencil leaves. A1/A2/A3 name the slots H/E/F of a tuple.
enum class Atom { H, E, F };

struct Factor {
  Atom atom;
  bool adjoint = false;
  std::string name;  ///< spelling used in the source, e.g. "A2" or "E"

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Product of (optionally adjointed) atoms, left to right.
struct PencilTerm {
  std::vector<Factor> factors;

  friend bool operator==(const PencilTerm&, const PencilTerm&) = default;
};

/// One term per pencil slot: "A1, A2 A2^H" has two slots.
using Pencil = std::vector<PencilTerm>;

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/**
 * Parses a comma-separated list of products.
 *
 *   pencil := term ("," term)*
 *   term   := factor+
 *   factor := atom ("^H")*
 *   atom   := "A1" | "A2" | "A3" | "H" | "E" | "F"
 *
 * "^H" toggles the adjoint of the atom it follows, so "A2^H^H" is A2.
 */
Pencil parse_pencil(std::string_view src);

std::string to_string(const PencilTerm& t);
std::string to_string(const Pencil& p);

Matrix evaluate(const PencilTerm& t, const GeneratorTuple& tuple);
std::vector<Matrix> evaluate(const Pencil& p, const GeneratorTuple& tuple);

}  // namespace specrig
