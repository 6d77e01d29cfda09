#pragma once

#include <crformal/frac_series.hpp>
#include <crformal/series.hpp>
#include <crformal/verdict.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace crformal {

/// Rectangular grid of series sharing one arity.
class SeriesMatrix {
 public:
  SeriesMatrix(std::size_t rows, std::size_t cols, std::size_t arity);
  /// Rows must be non-empty and rectangular.
  static SeriesMatrix from_rows(const std::vector<std::vector<Series>>& rows);
  /// Jacobian d f_i / d x_j of a formal map.
  static SeriesMatrix jacobian(const FormalMap& f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t arity() const { return arity_; }

  const Series& at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Series value);

  SeriesMatrix submatrix(const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) const;
  /// All entries are exact polynomials.
  bool is_exact() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t arity_;
  std::vector<Series> cells_;
};

/// Determinant by Laplace expansion along rows with memoized column subsets.
Series determinant(const SeriesMatrix& m);

struct RankResult {
  /// Largest size of a minor that is nonzero up to truncation.
  std::size_t rank = 0;
  /// "rank >= rank": certified with a witness minor whenever rank > 0.
  Verdict lower;
  /// "rank <= rank": certified only for full rank or exact entries.
  Verdict upper;
  std::vector<std::size_t> witness_rows;
  std::vector<std::size_t> witness_cols;
  std::optional<MultiIndex> witness_monomial;
  Scalar witness_coefficient;
  /// Rank of the known terms evaluated at random points (a heuristic).
  std::size_t evaluation_rank = 0;
};

/// Generic rank over the fraction field. Random evaluation proposes a
/// candidate; only symbolic minors certify.
RankResult generic_rank(const SeriesMatrix& m, std::uint64_t seed = 0);

/// Rank of a scalar matrix (row-major).
std::size_t scalar_rank(std::vector<std::vector<Scalar>> m);

/// Forward substitution L x = rhs for lower-triangular L.
std::vector<FracSeries> solve_triangular(const SeriesMatrix& lower,
                                         const std::vector<FracSeries>& rhs);

/// Is v in the fraction-field span of gens (each a vector of equal length)?
Verdict span_membership(const std::vector<FracSeries>& v,
                        const std::vector<std::vector<FracSeries>>& gens,
                        std::uint64_t seed = 0);

}  // namespace crformal
