#pragma once

#include <crformal/series.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crformal {

/// Quotient g/f inside the power-series ring, when it exists at the known
/// precision. Uses division by lowest terms (graded-lex). Returns nullopt
/// when a known term of the remainder is not divisible by the lowest term
/// of f. Exact inputs need `degree` unless the division terminates.
std::optional<Series> divide_series(const Series& g, const Series& f,
                                    std::optional<int> degree = std::nullopt);

/// Element of the fraction field of the series ring.
///
/// The denominator is kept factored as a product of normalized series
/// (lowest term has coefficient 1) raised to powers; monomial parts of exact
/// factors are split into single variables so common denominators stay small.
class FracSeries {
 public:
  struct Factor {
    Series base;
    unsigned exponent;
  };

  FracSeries() = default;
  explicit FracSeries(Series numerator);
  /// Throws DivisionUncertifiable when den is zero up to its precision.
  static FracSeries quotient(Series numerator, const Series& denominator);

  std::size_t arity() const { return num_.arity(); }
  const Series& numerator() const { return num_; }
  const std::vector<Factor>& factors() const { return factors_; }
  Series denominator() const;
  /// Order of the denominator.
  unsigned denominator_order() const;
  /// Precision of the quotient as a series: numerator precision lowered by
  /// the denominator order; exact when everything involved is exact.
  Precision certified_precision() const;

  /// Numerator vanishes at its known precision.
  bool is_zero() const { return num_.is_zero(); }
  /// The quotient as a series, if the denominator divides the numerator.
  std::optional<Series> to_series(std::optional<int> degree = std::nullopt) const;

  FracSeries operator-() const;
  friend FracSeries operator+(const FracSeries& a, const FracSeries& b);
  friend FracSeries operator-(const FracSeries& a, const FracSeries& b);
  friend FracSeries operator*(const FracSeries& a, const FracSeries& b);
  /// Throws DivisionUncertifiable when b is zero at truncation.
  friend FracSeries operator/(const FracSeries& a, const FracSeries& b);

  /// a/b == c/d iff a*d == c*b up to the common known degree.
  friend bool operator==(const FracSeries& a, const FracSeries& b);

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void multiply_denominator(const Series& base, unsigned exponent);
  void absorb_factor(Series base, unsigned exponent);

  Series num_;
  std::vector<Factor> factors_;
};

}  // namespace crformal
