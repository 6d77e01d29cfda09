#pragma once

#include <crformal/multi_index.hpp>
#include <crformal/scalar.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crformal {

/// How much of a series is known.
///
/// A truncated precision D means every coefficient of total degree <= D is
/// the true coefficient and nothing is known above D (D = -1: nothing known).
/// An exact precision means the stored terms are the whole object, i.e. the
/// series is a polynomial.
class Precision {
 public:
  static Precision exact() { return Precision(true, 0); }
  static Precision upto(int degree) { return Precision(false, degree < -1 ? -1 : degree); }

  bool is_exact() const { return exact_; }
  /// Only meaningful when !is_exact().
  int degree() const { return degree_; }

  /// Admits a coefficient of this total degree.
  bool covers(unsigned total_degree) const {
    return exact_ || static_cast<int>(total_degree) <= degree_;
  }

  /// Precision after losing `k` degrees (derivatives, coefficient extraction).
  Precision lowered(unsigned k) const {
    return exact_ ? *this : upto(degree_ - static_cast<int>(k));
  }
  Precision raised(unsigned k) const {
    return exact_ ? *this : upto(degree_ + static_cast<int>(k));
  }

  friend Precision min(const Precision& a, const Precision& b) {
    if (a.exact_) return b;
    if (b.exact_) return a;
    return a.degree_ <= b.degree_ ? a : b;
  }
  friend bool operator==(const Precision&, const Precision&) = default;

  /// "exact" or "D=<d>".
  std::string to_string() const;

 private:
  Precision(bool exact, int degree) : exact_(exact), degree_(degree) {}
  bool exact_;
  int degree_;
};

/// Contiguous range of variables, e.g. the z-block of (z, chi, tau).
struct Block {
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Truncated multivariate formal power series with Gaussian-rational
/// coefficients.
///
/// Terms are kept sparse in graded-lex order and never store zeros. All
/// arithmetic honours the truncation contract: every coefficient the result
/// claims to know (see Precision) equals the coefficient of the untruncated
/// computation.
class Series {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  Series() : Series(0, Precision::exact()) {}
  /// Zero series.
  Series(std::size_t arity, Precision precision);

  static Series constant(std::size_t arity, const Scalar& c, Precision precision);
  static Series variable(std::size_t arity, std::size_t index, Precision precision);
  static Series monomial(const MultiIndex& exps, const Scalar& c, Precision precision);
  /// Zero coefficients are dropped; terms above a truncated precision too.
  static Series from_terms(std::size_t arity, Precision precision, const Terms& terms);

  static Series polynomial_constant(std::size_t arity, const Scalar& c) {
    return constant(arity, c, Precision::exact());
  }
  static Series polynomial_variable(std::size_t arity, std::size_t index) {
    return variable(arity, index, Precision::exact());
  }

  std::size_t arity() const { return arity_; }
  Precision precision() const { return precision_; }
  bool is_exact() const { return precision_.is_exact(); }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Zero coefficient when absent. Throws if the degree is not covered.
  Scalar coefficient(const MultiIndex& exps) const;
  Scalar constant_term() const;
  /// No nonzero term is known.
  bool is_zero() const { return terms_.empty(); }
  /// Highest degree among stored terms (0 for zero).
  unsigned max_degree() const;
  /// Lowest stored term in graded-lex order, if any.
  std::optional<std::pair<MultiIndex, Scalar>> leading_term() const;

  /// Forget everything above degree D (result is never exact).
  Series truncate(int degree) const;
  /// Same terms, declared exact (caller asserts they are the whole object).
  Series as_exact() const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Scalar& c);
  Series operator-() const;

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  /// Cauchy product; the result precision is the minimum of the operands'.
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Scalar& c) { return a *= c; }
  friend Series operator*(const Scalar& c, Series a) { return a *= c; }

  Series pow(unsigned e) const;

  friend bool operator==(const Series& a, const Series& b);

  /// Expression text over the given variable names ("tau + 2*i*z*chi").
  std::string to_string(std::span<const std::string> names) const;
  /// Same with names x1..xk.
  std::string to_string() const;

 private:
  void add_term(const MultiIndex& e, const Scalar& c);
  void drop_above_precision();

  std::size_t arity_;
  Precision precision_;
  Terms terms_;
};

/// Ordered list of series sharing arity, used as a substitution argument.
struct FormalMap {
  std::vector<Series> components;

  std::size_t size() const { return components.size(); }
  /// Every component has zero constant term.
  bool is_pointed() const;
};

/// Product whose precision accounts for valuations:
/// min(P_a + ord b, P_b + ord a). Used where denominators of high order
/// would otherwise wipe out all information.
Series mul_tracking_valuation(const Series& a, const Series& b);

/// Substitute g into f: f(g_1, ..., g_m). g must be pointed.
Series compose(const Series& f, const FormalMap& g);

Series partial_derivative(const Series& f, std::size_t var);

/// Order: smallest degree of a nonzero term; nullopt means zero up to the
/// known precision (ord 0 = +infinity).
std::optional<unsigned> ord(const Series& f);
std::optional<unsigned> ord_in_block(const Series& f, Block block);

Series conjugate(const Series& f);

/// Coefficient of z^alpha, where z is `block`, as a series in the remaining
/// variables. Precision drops by |alpha|.
Series block_coefficient(const Series& f, Block block, const MultiIndex& alpha);

/// Set the variables of `block` to zero and remove them.
Series restrict_to_zero(const Series& f, Block block);

/// Re-embed f into a larger variable set: variable j of f becomes variable
/// `targets[j]` of the result.
Series embed(const Series& f, std::size_t new_arity, std::span<const std::size_t> targets);

/// Exchange two disjoint equally sized blocks of variables.
Series swap_blocks(const Series& f, Block a, Block b);

/// 1/f for f(0) != 0. Exact inputs need an explicit target degree.
Series invert_unit(const Series& f, std::optional<int> degree = std::nullopt);

/// exp(f) for f(0) = 0.
Series exp_series(const Series& f, std::optional<int> degree = std::nullopt);

/// Solve u = rhs(x, u) for u = u*(x), where u is the last variable of rhs.
/// Requires rhs(0, 0) = 0 and d rhs / du (0, 0) = 0.
Series solve_implicit(const Series& rhs, std::optional<int> degree = std::nullopt);

/// Evaluate the known terms at a point.
Scalar evaluate(const Series& f, std::span<const Scalar> point);

}  // namespace crformal
