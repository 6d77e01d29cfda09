#include <crformal/error.hpp>
#include <crformal/prolongation.hpp>
#include <crformal/series_matrix.hpp>

#include <algorithm>

namespace crformal {

namespace {
Scalar factorial_of(const MultiIndex& e) {
  Scalar f(1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (unsigned k = 2; k <= e[i]; ++k) f *= Scalar(static_cast<long>(k));
  }
  return f;
}

}  // namespace

Series z_derivative_at_zero(const Series& f, std::size_t n, const MultiIndex& gamma) {
  return block_coefficient(f, Block{0, n}, gamma) * factorial_of(gamma);
}

MultiIndex minimal_ordered_nonzero(const Series& a, std::size_t n) {
  std::optional<MultiIndex> best;
  for (const auto& [e, c] : a.terms()) {
    const MultiIndex alpha = e.slice(0, n);
    if (!best || alpha < *best) best = alpha;
  }
  if (!best) throw Error(ErrorCode::NoWitness, "A vanishes up to " + a.precision().to_string());
  return *best;
}

std::map<MultiIndex, std::vector<Series>> forward_expand(const Series& a, const std::vector<Series>& b,
                                                         std::size_t n, unsigned order) {
  std::map<MultiIndex, std::vector<Series>> v;
  std::vector<Series> products;
  for (const auto& bi : b) {
    if (bi.arity() != a.arity()) throw Error(ErrorCode::ArityMismatch, "A and b must share variables");
    products.push_back(a * bi);
  }
  for (const MultiIndex& beta : indices_up_to(n, order)) {
    auto& row = v[beta];
    for (const auto& p : products) row.push_back(z_derivative_at_zero(p, n, beta));
  }
  return v;
}

ProlongationSolution prolongation_solve_all(const ProlongationInstance& inst, unsigned max_length) {
  const std::size_t n = inst.n;
  const std::size_t d = inst.d;
  if (n == 0 || inst.a.arity() < n) throw Error(ErrorCode::InvalidArgument, "prolongation needs n >= 1");
  const std::size_t m = inst.m();

  ProlongationSolution sol;
  sol.alpha0 = minimal_ordered_nonzero(inst.a, n);
  const MultiIndex& alpha0 = sol.alpha0;
  const unsigned k = alpha0.degree();

  // a_mu(chi) = A_{z^mu}(0, chi), cached.
  std::map<MultiIndex, Series> a_cache;
  auto a_at = [&](const MultiIndex& mu) -> const Series& {
    auto it = a_cache.find(mu);
    if (it == a_cache.end()) {
      Series val = inst.a.precision().covers(mu.degree()) ? z_derivative_at_zero(inst.a, n, mu)
                                                          : Series(m, inst.a.precision().lowered(mu.degree()));
      it = a_cache.emplace(mu, std::move(val)).first;
    }
    return it->second;
  };
  auto v_at = [&](const MultiIndex& beta) -> const std::vector<Series>& {
    auto it = inst.v.find(beta);
    if (it == inst.v.end() || it->second.size() != d) {
      throw Error(ErrorCode::MissingJet, "v_beta missing for beta = " + beta.to_string());
    }
    sol.max_jet_order_used = std::max(sol.max_jet_order_used, beta.degree());
    return it->second;
  };

  // Known part of equation beta: v_beta - sum over solved gamma (|gamma| < level).
  auto reduced_rhs = [&](const MultiIndex& beta, unsigned level) {
    const auto& vb = v_at(beta);
    std::vector<FracSeries> rhs;
    for (std::size_t i = 0; i < d; ++i) rhs.emplace_back(vb[i]);
    for (const auto& [gamma, bg] : sol.jets) {
      if (gamma.degree() >= level || !gamma.divides(beta)) continue;
      const MultiIndex mu = beta - gamma;
      if (mu.degree() < k) continue;
      const Series& coeff = a_at(mu);
      if (coeff.is_zero() && coeff.is_exact()) continue;
      const FracSeries c(coeff * Scalar(static_cast<long>(multi_binomial(beta, gamma))));
      for (std::size_t i = 0; i < d; ++i) rhs[i] = rhs[i] - c * bg[i];
    }
    return rhs;
  };

  for (unsigned level = 0; level <= max_length; ++level) {
    const std::vector<MultiIndex> gammas = indices_of_degree(n, level);
    const std::size_t count = gammas.size();
    SeriesMatrix lower(count, count, m);
    std::vector<std::vector<FracSeries>> rhs(d);
    for (std::size_t j = 0; j < count; ++j) {
      const MultiIndex beta = alpha0 + gammas[j];
      for (std::size_t i = 0; i < count; ++i) {
        if (!gammas[i].divides(beta)) continue;
        const MultiIndex mu = beta - gammas[i];
        if (i > j && !a_at(mu).is_zero()) {
          // Graded-lex minimality of alpha0 forces these to vanish.
          throw Error(ErrorCode::InvalidArgument, "prolongation system is not triangular at gamma = " +
                                                      gammas[i].to_string());
        }
        if (i <= j) lower.set(j, i, a_at(mu) * Scalar(static_cast<long>(multi_binomial(beta, gammas[i]))));
      }
      const auto r = reduced_rhs(beta, level);
      for (std::size_t c = 0; c < d; ++c) rhs[c].push_back(r[c]);
    }
    std::vector<std::vector<FracSeries>> solved(d);
    for (std::size_t c = 0; c < d; ++c) solved[c] = solve_triangular(lower, rhs[c]);
    for (std::size_t j = 0; j < count; ++j) {
      auto& slot = sol.jets[gammas[j]];
      for (std::size_t c = 0; c < d; ++c) slot.push_back(solved[c][j]);
    }
  }

  // Residuals of the equations not used above.
  for (const MultiIndex& beta : indices_up_to(n, max_length + k)) {
    if (alpha0.divides(beta) && (beta - alpha0).degree() <= max_length) continue;
    const auto r = reduced_rhs(beta, max_length + 1);
    for (std::size_t c = 0; c < d; ++c) {
      if (!r[c].is_zero()) {
        throw Error(ErrorCode::InconsistentData,
                    "jets are inconsistent: equation beta = " + beta.to_string() + ", component " +
                        std::to_string(c) + " leaves residual " + r[c].to_string());
      }
    }
  }
  return sol;
}

std::vector<FracSeries> prolongation_solve(const ProlongationInstance& inst, const MultiIndex& alpha) {
  if (alpha.size() != inst.n) throw Error(ErrorCode::ArityMismatch, "alpha must have length n");
  const ProlongationSolution sol = prolongation_solve_all(inst, alpha.degree());
  return sol.jets.at(alpha);
}

}  // namespace crformal
