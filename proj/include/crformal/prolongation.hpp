#pragma once

#include <crformal/frac_series.hpp>
#include <crformal/series.hpp>

#include <map>
#include <vector>

namespace crformal {

/// Jets v_beta(chi) = d^beta/dz^beta (A(z,chi) b(z,chi)) |_{z=0} of an
/// unknown b: (C^n x C^m, 0) -> C^d, with A scalar.
struct ProlongationInstance {
  /// Size of the z-block; A and b live in (z, chi).
  std::size_t n = 0;
  Series a;
  std::size_t d = 1;
  /// beta (length n) -> d series in chi.
  std::map<MultiIndex, std::vector<Series>> v;

  std::size_t m() const { return a.arity() - n; }
};

/// Graded-lex minimal alpha with A_{z^alpha}(0, chi) != 0.
/// Throws NoWitness when A vanishes at truncation.
MultiIndex minimal_ordered_nonzero(const Series& a, std::size_t n);

/// d^gamma/dz^gamma f |_{z=0} as a series in chi.
Series z_derivative_at_zero(const Series& f, std::size_t n, const MultiIndex& gamma);

/// All v_beta with |beta| <= order, computed from the product A*b.
std::map<MultiIndex, std::vector<Series>> forward_expand(const Series& a, const std::vector<Series>& b,
                                                         std::size_t n, unsigned order);

struct ProlongationSolution {
  MultiIndex alpha0;
  /// gamma -> b_{z^gamma}(0, chi) for every |gamma| <= the requested length.
  std::map<MultiIndex, std::vector<FracSeries>> jets;
  /// Largest |beta| whose v_beta was read.
  unsigned max_jet_order_used = 0;
};

/// Solves level by level (|gamma| = 0, 1, ..., max_length). Each level is a
/// lower-triangular system in ascending lex order with diagonal
/// binom(alpha0+gamma, gamma) A_{z^alpha0}(0, chi). Unused equations with
/// |beta| <= max_length + |alpha0| are checked (InconsistentData); absent
/// jets raise MissingJet.
ProlongationSolution prolongation_solve_all(const ProlongationInstance& inst, unsigned max_length);

/// b_{z^alpha}(0, chi).
std::vector<FracSeries> prolongation_solve(const ProlongationInstance& inst, const MultiIndex& alpha);

}  // namespace crformal
