#pragma once

// Seeded random inputs shared by the unit tests and the acceptance runner.

#include <crformal/prolongation.hpp>
#include <crformal/series_matrix.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <array>
#include <vector>

namespace fixtures {

using namespace crformal;

// b_{z^gamma}(0, chi) computed straight from the oracle representation:
// gamma! times the chi-polynomial sitting at z^gamma.
inline FracSeries jet_oracle(const Series& b, std::size_t n, const MultiIndex& gamma) {
  const std::size_t m = b.arity() - n;
  oracle::Poly out;
  mpq_class fact = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned k = 2; k <= gamma[i]; ++k) fact *= k;
  }
  for (const auto& [e, c] : oracle::from_series(b)) {
    bool match = true;
    for (std::size_t i = 0; i < n; ++i) match = match && e[i] == gamma[i];
    if (!match) continue;
    std::vector<unsigned> rest(e.begin() + static_cast<long>(n), e.end());
    oracle::accumulate(out, rest, {c.first * fact, c.second * fact});
  }
  return FracSeries(oracle::to_series(out, m, Precision::exact()));
}

struct RandomProlongation {
  std::size_t n, m, d;
  unsigned k;
  Series a;
  std::vector<Series> b;
};

// n, m, d <= 2; ord_z A = k <= 3 exactly; degrees <= 6.
inline RandomProlongation random_prolongation(std::uint64_t seed) {
  oracle::Generator gen(seed);
  RandomProlongation r;
  r.n = static_cast<std::size_t>(gen.small(1, 2));
  r.m = static_cast<std::size_t>(gen.small(1, 2));
  r.d = static_cast<std::size_t>(gen.small(1, 2));
  r.k = static_cast<unsigned>(gen.small(0, 3));
  const std::size_t arity = r.n + r.m;
  Series::Terms terms;
  const long count = gen.small(1, 4);
  for (long t = 0; t < count; ++t) {
    MultiIndex e(arity);
    unsigned zdeg = t == 0 ? r.k : r.k + static_cast<unsigned>(gen.small(0, 1));
    for (unsigned s = 0; s < zdeg; ++s) {
      const auto i = static_cast<std::size_t>(gen.small(0, static_cast<long>(r.n) - 1));
      e.set(i, e[i] + 1);
    }
    const unsigned chideg = static_cast<unsigned>(gen.small(0, std::max<long>(0, 6 - static_cast<long>(zdeg))));
    for (unsigned s = 0; s < chideg && s < 2; ++s) {
      const auto i = r.n + static_cast<std::size_t>(gen.small(0, static_cast<long>(r.m) - 1));
      e.set(i, e[i] + 1);
    }
    terms[e] += gen.scalar();
  }
  r.a = Series::from_terms(arity, Precision::exact(), terms);
  // Cancellation may have removed every z-degree k term; put one back.
  bool has_k = false;
  for (const auto& [e, c] : r.a.terms()) has_k = has_k || e.degree_in(0, r.n) == r.k;
  if (!has_k) r.a += Series::polynomial_variable(arity, 0).pow(r.k);
  for (std::size_t c = 0; c < r.d; ++c) r.b.push_back(gen.polynomial(arity, 6, 5, false));
  return r;
}

inline ProlongationInstance make_instance(const RandomProlongation& r, unsigned order) {
  ProlongationInstance inst;
  inst.n = r.n;
  inst.a = r.a;
  inst.d = r.d;
  inst.v = forward_expand(r.a, r.b, r.n, order);
  return inst;
}

struct RandomMatrix {
  SeriesMatrix matrix;
  std::vector<std::vector<oracle::Poly>> dense;
  /// Five evaluation points in C^2.
  std::vector<std::array<Scalar, 2>> points;
};

// Up to 4x4 over two variables, built as a product so deficient ranks occur.
inline RandomMatrix random_matrix(std::uint64_t seed) {
  oracle::Generator gen(seed);
  const auto rows = static_cast<std::size_t>(gen.small(1, 4));
  const auto cols = static_cast<std::size_t>(gen.small(1, 4));
  const auto inner = static_cast<std::size_t>(gen.small(1, 4));
  std::vector<std::vector<Series>> a(rows), b(inner);
  for (auto& row : a)
    for (std::size_t k = 0; k < inner; ++k) row.push_back(gen.polynomial(2, 2, 2));
  for (auto& row : b)
    for (std::size_t k = 0; k < cols; ++k) row.push_back(gen.polynomial(2, 2, 2));
  std::vector<std::vector<Series>> m(rows, std::vector<Series>(cols, Series(2, Precision::exact())));
  std::vector<std::vector<oracle::Poly>> dense(rows, std::vector<oracle::Poly>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t k = 0; k < inner; ++k) m[r][c] += a[r][k] * b[k][c];
      dense[r][c] = oracle::from_series(m[r][c]);
    }
  }
  RandomMatrix out{SeriesMatrix::from_rows(m), std::move(dense), {}};
  for (int trial = 0; trial < 5; ++trial) out.points.push_back({gen.scalar(), gen.scalar()});
  return out;
}

inline std::size_t evaluated_rank(const SeriesMatrix& m, const std::array<Scalar, 2>& p) {
  std::vector<std::vector<Scalar>> values(m.rows(), std::vector<Scalar>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) values[r][c] = evaluate(m.at(r, c), p);
  return scalar_rank(values);
}

}  // namespace fixtures
