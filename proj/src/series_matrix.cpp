#include <crformal/error.hpp>
#include <crformal/series_matrix.hpp>

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <unordered_map>

namespace crformal {

namespace {

constexpr std::size_t kMinorBudget = 200000;

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

struct Elimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

Elimination eliminate(std::vector<std::vector<Scalar>> m) {
  Elimination out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> row_id(rows);
  for (std::size_t i = 0; i < rows; ++i) row_id[i] = i;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(row_id[p], row_id[r]);
    const Scalar inv = Scalar(1) / m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const Scalar f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivot_rows.push_back(row_id[r]);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  std::sort(out.pivot_rows.begin(), out.pivot_rows.end());
  return out;
}

struct MinorSearch {
  bool found = false;
  bool exhausted = true;  // every minor of the size was inspected
  std::vector<std::size_t> rows, cols;
  Series det;
};

MinorSearch find_nonzero_minor(const SeriesMatrix& m, std::size_t k, std::size_t& budget,
                               const std::vector<std::size_t>* hint_rows = nullptr,
                               const std::vector<std::size_t>* hint_cols = nullptr) {
  MinorSearch s;
  if (k == 0 || k > m.rows() || k > m.cols()) return s;
  if (hint_rows && hint_cols && hint_rows->size() == k && budget) {
    --budget;
    Series d = determinant(m.submatrix(*hint_rows, *hint_cols));
    if (!d.is_zero()) return MinorSearch{true, true, *hint_rows, *hint_cols, d};
  }
  auto rc = first_combination(k);
  do {
    auto cc = first_combination(k);
    do {
      if (budget == 0) {
        s.exhausted = false;
        return s;
      }
      --budget;
      Series d = determinant(m.submatrix(rc, cc));
      if (!d.is_zero()) return MinorSearch{true, true, rc, cc, d};
    } while (next_combination(cc, m.cols()));
  } while (next_combination(rc, m.rows()));
  return s;
}

Scalar random_point_coordinate(std::mt19937_64& rng) {
  const long re = static_cast<long>(rng() % 19) - 9;
  const long im = static_cast<long>(rng() % 19) - 9;
  const long den = static_cast<long>(rng() % 7) + 1;
  return Scalar::gaussian(re, im, den);
}

}  // namespace

SeriesMatrix::SeriesMatrix(std::size_t rows, std::size_t cols, std::size_t arity)
    : rows_(rows), cols_(cols), arity_(arity), cells_(rows * cols, Series(arity, Precision::exact())) {}

SeriesMatrix SeriesMatrix::from_rows(const std::vector<std::vector<Series>>& rows) {
  if (rows.empty() || rows[0].empty()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix needs at least one row and column");
  }
  SeriesMatrix m(rows.size(), rows[0].size(), rows[0][0].arity());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

SeriesMatrix SeriesMatrix::jacobian(const FormalMap& f) {
  if (f.size() == 0) throw Error(ErrorCode::DimensionMismatch, "jacobian of an empty map");
  const std::size_t k = f.components[0].arity();
  SeriesMatrix m(f.size(), k, k);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) m.set(i, j, partial_derivative(f.components[i], j));
  }
  return m;
}

void SeriesMatrix::set(std::size_t r, std::size_t c, Series value) {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::IndexOutOfRange, "matrix index");
  if (value.arity() != arity_) throw Error(ErrorCode::ArityMismatch, "matrix entry arity");
  cells_[r * cols_ + c] = std::move(value);
}

SeriesMatrix SeriesMatrix::submatrix(const std::vector<std::size_t>& rows,
                                     const std::vector<std::size_t>& cols) const {
  SeriesMatrix m(rows.size(), cols.size(), arity_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) m.cells_[i * cols.size() + j] = at(rows[i], cols[j]);
  }
  return m;
}

bool SeriesMatrix::is_exact() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Series& s) { return s.is_exact(); });
}

Series determinant(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "determinant of a " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()) + " matrix");
  }
  const std::size_t n = m.rows();
  if (n > 20) throw Error(ErrorCode::InvalidArgument, "determinant: matrix too large");
  // minors[mask] = det of rows 0..k-1 against the columns in mask (|mask| = k).
  std::unordered_map<std::uint32_t, Series> minors{{0u, Series::polynomial_constant(m.arity(), 1)}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::unordered_map<std::uint32_t, Series> next;
    for (const auto& [mask, sub] : minors) {
      if (sub.is_zero() && sub.is_exact()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1u << j)) continue;
        const Series& entry = m.at(k - 1, j);
        if (entry.is_zero() && entry.is_exact()) continue;
        const std::uint32_t grown = mask | (1u << j);
        // Position of column j among the columns of the grown set.
        const int t = std::popcount(mask & ((1u << j) - 1u));
        Series term = entry * sub;
        if ((static_cast<int>(k - 1) + t) % 2) term = -term;
        auto it = next.find(grown);
        if (it == next.end()) {
          next.emplace(grown, std::move(term));
        } else {
          it->second += term;
        }
      }
    }
    minors = std::move(next);
  }
  const std::uint32_t full = n == 0 ? 0u : static_cast<std::uint32_t>((1ull << n) - 1);
  auto it = minors.find(full);
  if (it != minors.end()) return it->second;
  // Every expansion term vanished identically: the precision is the min over entries.
  Precision p = Precision::exact();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) p = min(p, m.at(r, c).precision());
  }
  return Series(m.arity(), p);
}

std::size_t scalar_rank(std::vector<std::vector<Scalar>> m) { return eliminate(std::move(m)).rank; }

RankResult generic_rank(const SeriesMatrix& m, std::uint64_t seed) {
  RankResult out;
  const std::size_t full = std::min(m.rows(), m.cols());
  Precision entries = Precision::exact();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) entries = min(entries, m.at(r, c).precision());
  }

  // Candidate from random evaluation of the known terms.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  Elimination best;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Scalar> point(m.arity());
    for (auto& x : point) x = random_point_coordinate(rng);
    std::vector<std::vector<Scalar>> values(m.rows(), std::vector<Scalar>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) values[r][c] = evaluate(m.at(r, c), point);
    }
    Elimination e = eliminate(std::move(values));
    if (e.rank > best.rank || trial == 0) best = std::move(e);
  }
  out.evaluation_rank = best.rank;

  std::size_t budget = kMinorBudget;
  MinorSearch witness;
  std::size_t r = best.rank;
  // Downward: certify a nonzero minor of the largest possible size.
  while (r > 0) {
    const bool use_hint = r == best.rank;
    witness = find_nonzero_minor(m, r, budget, use_hint ? &best.pivot_rows : nullptr,
                                 use_hint ? &best.pivot_cols : nullptr);
    if (witness.found) break;
    --r;
  }
  // Upward: the evaluation may have been unlucky.
  bool upper_exhausted = true;
  while (r < full) {
    MinorSearch bigger = find_nonzero_minor(m, r + 1, budget);
    if (!bigger.found) {
      upper_exhausted = bigger.exhausted;
      break;
    }
    witness = std::move(bigger);
    ++r;
  }

  out.rank = r;
  if (r == 0) {
    out.lower = Verdict::certified_true(Precision::exact(), "rank >= 0 holds trivially");
  } else {
    const auto lead = witness.det.leading_term();
    out.witness_rows = witness.rows;
    out.witness_cols = witness.cols;
    out.witness_monomial = lead->first;
    out.witness_coefficient = lead->second;
    std::ostringstream w;
    w << "minor rows " << join(witness.rows) << " cols " << join(witness.cols) << " has coefficient "
      << lead->second.to_string() << " at " << lead->first.to_string();
    out.lower = Verdict::certified_true(witness.det.precision(), w.str());
    out.lower.monomial = lead->first;
  }

  if (r == full) {
    out.upper = Verdict::certified_true(Precision::exact(), "rank equals min(rows, cols)");
  } else if (!upper_exhausted) {
    out.upper = Verdict::unknown(entries, "minor budget exhausted before all minors were checked");
  } else if (entries.is_exact()) {
    out.upper = Verdict::certified_true(
        Precision::exact(), "every " + std::to_string(r + 1) + "x" + std::to_string(r + 1) +
                                " minor of the polynomial matrix vanishes identically");
  } else {
    out.upper = Verdict::unknown(entries, "all " + std::to_string(r + 1) + "x" + std::to_string(r + 1) +
                                              " minors vanish up to " + entries.to_string() +
                                              " only");
  }
  return out;
}

std::vector<FracSeries> solve_triangular(const SeriesMatrix& lower, const std::vector<FracSeries>& rhs) {
  const std::size_t n = lower.rows();
  if (lower.cols() != n) throw Error(ErrorCode::NonSquare, "triangular system must be square");
  if (rhs.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!lower.at(i, j).is_zero()) {
        throw Error(ErrorCode::InvalidArgument, "coefficient matrix is not lower triangular");
      }
    }
  }
  std::vector<FracSeries> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Series& diag = lower.at(i, i);
    if (diag.is_zero()) {
      throw Error(ErrorCode::NotSolvableAtTruncation,
                  "diagonal entry " + std::to_string(i) + " is zero at " + diag.precision().to_string());
    }
    FracSeries acc = rhs[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (lower.at(i, j).is_zero() && lower.at(i, j).is_exact()) continue;
      acc = acc - FracSeries(lower.at(i, j)) * x[j];
    }
    x.push_back(acc / FracSeries(diag));
  }
  return x;
}

namespace {

std::vector<Series> clear_denominators(const std::vector<FracSeries>& v) {
  std::vector<Series> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    Series s = v[k].numerator();
    for (std::size_t l = 0; l < v.size(); ++l) {
      if (l != k && !v[l].factors().empty()) s = mul_tracking_valuation(s, v[l].denominator());
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Verdict span_membership(const std::vector<FracSeries>& v, const std::vector<std::vector<FracSeries>>& gens,
                        std::uint64_t seed) {
  const std::size_t d = v.size();
  for (const auto& g : gens) {
    if (g.size() != d) throw Error(ErrorCode::DimensionMismatch, "span: generator length differs");
  }
  if (d == 0) return Verdict::certified_true(Precision::exact(), "empty vector");
  if (gens.empty()) {
    for (const auto& x : v) {
      if (!x.is_zero()) return Verdict::certified_false(x.numerator().precision(), "nonzero vector, empty span");
    }
    Precision p = Precision::exact();
    for (const auto& x : v) p = min(p, x.numerator().precision());
    if (p.is_exact()) return Verdict::certified_true(p, "zero vector");
    return Verdict::unknown(p, "vector vanishes only up to truncation");
  }

  const std::size_t arity = v[0].arity();
  SeriesMatrix g(d, gens.size(), arity);
  SeriesMatrix gv(d, gens.size() + 1, arity);
  for (std::size_t c = 0; c < gens.size(); ++c) {
    const auto col = clear_denominators(gens[c]);
    for (std::size_t r = 0; r < d; ++r) {
      g.set(r, c, col[r]);
      gv.set(r, c, col[r]);
    }
  }
  const auto vcol = clear_denominators(v);
  for (std::size_t r = 0; r < d; ++r) gv.set(r, gens.size(), vcol[r]);

  const RankResult rg = generic_rank(g, seed);
  const RankResult rgv = generic_rank(gv, seed);
  if (rgv.rank > rg.rank) {
    if (rg.upper.is_true()) {
      return Verdict::certified_false(rgv.lower.degree_used,
                                      "appending the vector raises the rank to " +
                                          std::to_string(rgv.rank) + ": " + rgv.lower.witness,
                                      rgv.witness_monomial);
    }
    return Verdict::unknown(rg.upper.degree_used,
                            "rank grows at truncation but the generators' rank is not certified");
  }
  if (rgv.upper.is_true()) {
    return Verdict::certified_true(min(rg.lower.degree_used, rgv.upper.degree_used),
                                   "rank stays " + std::to_string(rg.rank));
  }
  return Verdict::unknown(rgv.upper.degree_used, "rank of the extended matrix is not certified");
}

}  // namespace crformal
