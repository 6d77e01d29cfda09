#pragma once

#include <crformal/error.hpp>
#include <crformal/hypersurface.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace crformal {

/// Syntax, UndeclaredName or NonGaussianLiteral with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct Expr {
  enum class Kind { Number, ImaginaryUnit, Variable, Add, Sub, Mul, Neg, Pow, Call, Keyword, Tuple };
  Kind kind = Kind::Number;
  /// Non-negative rational for Number.
  mpq_class number{0};
  /// Variable, function or keyword name.
  std::string name;
  unsigned exponent = 0;
  std::vector<Expr> args;
  int line = 0;
  int column = 0;

  /// Structural equality; positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct Statement {
  enum class Kind { Degree, Convention, Seed, Dimension, Declare, Classify, CheckMap, Prolong, Verify, Examples };
  Kind kind = Kind::Examples;
  /// Declared name, classify target, map name of check-map, or suite name.
  std::string name;
  std::string source;
  std::string target;
  /// Declaration body; for prolong a Call named "prolong".
  Expr value;
  std::uint64_t number = 0;
  Convention convention = Convention::TwoI;
  int line = 0;

  friend bool operator==(const Statement& a, const Statement& b);
};

struct Document {
  std::vector<Statement> statements;
  friend bool operator==(const Document& a, const Document& b) { return a.statements == b.statements; }
};

/// Parses a document; names are checked against earlier declarations and
/// the coordinate names (z, chi, tau, w, s, zK, chiK).
Document parse_document(const std::string& text);

/// Canonical text: one statement per line, minimal parentheses.
std::string print_document(const Document& doc);
std::string print_expr(const Expr& e);

/// The accepted grammar in EBNF.
const std::string& document_grammar();

bool is_coordinate_name(const std::string& name);

}  // namespace crformal
