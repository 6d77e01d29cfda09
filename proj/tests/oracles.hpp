#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately naive: dense maps keyed by std::vector, complex numbers as
// raw (re, im) pairs of mpq_class, no shared code with the library beyond
// the Series/Scalar types used to import and export values.

#include <crformal/series.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Cplx = std::pair<mpq_class, mpq_class>;
using Poly = std::map<std::vector<unsigned>, Cplx>;

inline Cplx cmul(const Cplx& a, const Cplx& b) {
  return {a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first};
}

inline void accumulate(Poly& p, const std::vector<unsigned>& e, const Cplx& c) {
  auto& slot = p[e];
  slot.first += c.first;
  slot.second += c.second;
  if (slot.first == 0 && slot.second == 0) p.erase(e);
}

inline unsigned total(const std::vector<unsigned>& e) {
  unsigned d = 0;
  for (unsigned v : e) d += v;
  return d;
}

inline Poly from_series(const crformal::Series& s) {
  Poly p;
  for (const auto& [e, c] : s.terms()) accumulate(p, e.to_vector(), {c.re(), c.im()});
  return p;
}

/// Exact result compared against a truncated library result at `degree`.
inline crformal::Series to_series(const Poly& p, std::size_t arity, crformal::Precision prec) {
  crformal::Series::Terms t;
  for (const auto& [e, c] : p) {
    t.emplace(crformal::MultiIndex(std::span<const unsigned>(e)), crformal::Scalar(c.first, c.second));
  }
  return crformal::Series::from_terms(arity, prec, t);
}

inline Poly mul(const Poly& a, const Poly& b, int max_degree) {
  Poly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (max_degree >= 0 && static_cast<int>(total(e)) > max_degree) continue;
      accumulate(r, e, cmul(ca, cb));
    }
  }
  return r;
}

inline Poly add(Poly a, const Poly& b) {
  for (const auto& [e, c] : b) accumulate(a, e, c);
  return a;
}

inline Poly constant(std::size_t arity, const Cplx& c) {
  Poly p;
  accumulate(p, std::vector<unsigned>(arity, 0), c);
  return p;
}

/// f(g_1..g_m) by Horner-free expansion of every monomial, truncated.
inline Poly compose(const Poly& f, const std::vector<Poly>& g, std::size_t arity, int max_degree) {
  Poly r;
  for (const auto& [e, c] : f) {
    Poly term = constant(arity, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term = mul(term, g[i], max_degree);
    }
    r = add(r, term);
  }
  return r;
}

/// Leibniz expansion over all permutations.
inline Poly determinant(const std::vector<std::vector<Poly>>& m, std::size_t arity) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Poly total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Poly term = constant(arity, {inversions % 2 ? -1 : 1, 0});
    for (std::size_t i = 0; i < n && !term.empty(); ++i) term = mul(term, m[i][perm[i]], -1);
    total = add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Largest k such that some k x k minor is a nonzero polynomial.
inline std::size_t brute_force_rank(const std::vector<std::vector<Poly>>& m, std::size_t arity) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t best = 0;
  for (std::uint32_t rmask = 1; rmask < (1u << rows); ++rmask) {
    for (std::uint32_t cmask = 1; cmask < (1u << cols); ++cmask) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(rmask));
      if (k != static_cast<std::size_t>(__builtin_popcount(cmask)) || k <= best) continue;
      std::vector<std::vector<Poly>> sub;
      for (std::size_t r = 0; r < rows; ++r) {
        if (!(rmask >> r & 1u)) continue;
        sub.emplace_back();
        for (std::size_t c = 0; c < cols; ++c) {
          if (cmask >> c & 1u) sub.back().push_back(m[r][c]);
        }
      }
      if (!determinant(sub, arity).empty()) best = k;
    }
  }
  return best;
}

/// Seeded random sparse polynomial with small Gaussian-rational coefficients.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  long small(long lo, long hi) {
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  crformal::Scalar scalar() {
    return crformal::Scalar::gaussian(small(-4, 4), small(-3, 3), small(1, 3));
  }

  crformal::Series polynomial(std::size_t arity, unsigned max_degree, unsigned terms,
                              bool pointed = false) {
    crformal::Series::Terms t;
    for (unsigned k = 0; k < terms; ++k) {
      std::vector<unsigned> e(arity, 0);
      const unsigned d = static_cast<unsigned>(small(pointed ? 1 : 0, max_degree));
      for (unsigned j = 0; j < d; ++j) e[static_cast<std::size_t>(small(0, static_cast<long>(arity) - 1))]++;
      t[crformal::MultiIndex(std::span<const unsigned>(e))] += scalar();
    }
    return crformal::Series::from_terms(arity, crformal::Precision::exact(), t);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
