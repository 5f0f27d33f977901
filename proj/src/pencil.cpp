#include "specrig/pencil.hpp"

#include <cctype>
#include <sstream>

namespace specrig {

namespace {

std::string with_offset(const std::string& what, std::size_t offset) {
  std::ostringstream os;
  os << what << " at byte " << offset;
  return os.str();
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Pencil run() {
    Pencil out;
    out.push_back(term());
    skip_space();
    while (pos_ < src_.size() && src_[pos_] == ',') {
      ++pos_;
      out.push_back(term());
      skip_space();
    }
    if (pos_ != src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  PencilTerm term() {
    PencilTerm t;
    skip_space();
    while (pos_ < src_.size() && src_[pos_] != ',') {
      if (src_[pos_] == '^') {
        if (t.factors.empty()) throw ParseError("'^H' without a preceding atom", pos_);
        if (src_.substr(pos_, 2) != "^H") throw ParseError("expected '^H'", pos_);
        t.factors.back().adjoint = !t.factors.back().adjoint;
        pos_ += 2;
      } else {
        t.factors.push_back(atom());
      }
      skip_space();
    }
    if (t.factors.empty()) throw ParseError("empty pencil term", pos_);
    return t;
  }

  Factor atom() {
    // Atoms may be juxtaposed without spaces ("A2A3", "EF").
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (c == 'A') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
    }
    const std::string_view word = src_.substr(start, pos_ - start);
    if (word == "A1" || word == "H") return {Atom::H, false, std::string(word)};
    if (word == "A2" || word == "E") return {Atom::E, false, std::string(word)};
    if (word == "A3" || word == "F") return {Atom::F, false, std::string(word)};
    throw ParseError("unknown atom '" + std::string(word) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

const Matrix& slot(const GeneratorTuple& t, Atom a) {
  switch (a) {
    case Atom::H: return t.H;
    case Atom::E: return t.E;
    case Atom::F: return t.F;
  }
  return t.H;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::invalid_argument(with_offset(what, offset)), offset_(offset) {}

Pencil parse_pencil(std::string_view src) { return Parser(src).run(); }

std::string to_string(const PencilTerm& t) {
  std::string s;
  for (const auto& f : t.factors) {
    if (!s.empty()) s += ' ';
    s += f.name;
    if (f.adjoint) s += "^H";
  }
  return s;
}

std::string to_string(const Pencil& p) {
  std::string s;
  for (const auto& t : p) {
    if (!s.empty()) s += ", ";
    s += to_string(t);
  }
  return s;
}

Matrix evaluate(const PencilTerm& t, const GeneratorTuple& tuple) {
  Matrix m = Matrix::identity(tuple.n);
  for (const auto& f : t.factors) {
    const Matrix& x = slot(tuple, f.atom);
    m = f.adjoint ? m * x.adjoint() : m * x;
  }
  return m;
}

std::vector<Matrix> evaluate(const Pencil& p, const GeneratorTuple& tuple) {
  std::vector<Matrix> out;
  out.reserve(p.size());
  for (const auto& t : p) out.push_back(evaluate(t, tuple));
  return out;
}

}  // namespace specrig
