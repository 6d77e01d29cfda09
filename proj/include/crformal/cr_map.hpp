#pragma once

#include <crformal/hypersurface.hpp>
#include <crformal/series.hpp>
#include <crformal/verdict.hpp>

#include <string>
#include <vector>

namespace crformal {

/// Formal holomorphic map H = (F, G): (C^{n+1}, 0) -> (C^{n+1}, 0) in
/// variables (z_1..z_n, w).
class CRMap {
 public:
  /// Throws NotPointed when a component has a constant term.
  CRMap(std::size_t n, std::vector<Series> f, Series g);

  static CRMap identity(std::size_t n);

  std::size_t n() const { return n_; }
  const std::vector<Series>& f() const { return f_; }
  const Series& g() const { return g_; }
  Precision precision() const;
  std::size_t w_index() const { return n_; }

  FormalMap components() const;

  /// "z", "w" for n = 1; "z1".., "w" otherwise.
  static std::vector<std::string> variable_names(std::size_t n);
  std::string to_string() const;

 private:
  std::size_t n_;
  std::vector<Series> f_;
  Series g_;
};

/// outer o inner.
CRMap compose(const CRMap& outer, const CRMap& inner);

/// G(z, Q(z,chi,tau)) = Q'(F(z,Q), Fbar(chi,tau), Gbar(chi,tau)) up to the
/// effective degree. A mismatch is reported with its monomial in (z,chi,tau).
Verdict sends_into(const CRMap& h, const NormalHypersurface& m, const NormalHypersurface& target);

/// G_w(0) != 0.
Verdict is_cr_transversal(const CRMap& h);
/// G = 0 (truncation-limited unless G is exact).
Verdict is_transversally_flat(const CRMap& h);
/// F_z(z, 0) has generic rank n.
Verdict is_not_totally_degenerate(const CRMap& h);

/// Determinant of the full Jacobian in (z, w).
Series jacobian(const CRMap& h);
Verdict is_jac_nonzero(const CRMap& h);

struct TransversalOrder {
  bool infinite = false;
  /// Largest k with w^k | G; meaningful when !infinite.
  unsigned value = 0;
  /// Exact when G is a polynomial.
  Precision degree_used = Precision::exact();
  std::optional<MultiIndex> witness;
  Scalar coefficient;

  /// "k", "inf" or "inf@D".
  std::string label() const;
};

/// Throws TrordUndefined when G(z, 0) is not identically zero.
TransversalOrder transversal_order(const CRMap& h);

/// With k = trord H finite: G_{w^k}(z, 0) is a real nonzero constant.
Verdict normal_component_reality_check(const CRMap& h, const NormalHypersurface& m,
                                       const NormalHypersurface& target);

/// (m' - 1) trord H <= m - 1 for infinite-type M, M' and a transversally
/// nonflat H sending M into M'. Preconditions are checked; uncertified
/// preconditions give UnknownAtTruncation.
Verdict trord_bound_check(const CRMap& h, const NormalHypersurface& m,
                          const NormalHypersurface& target);

/// Qtilde(z,chi,0) = G_w(0)^{m-1} Qtilde(F(z,0), Fbar(chi,0), 0) for a
/// CR-transversal self-map of an m-infinite-type M (m recomputed from M).
Verdict basid_check(const CRMap& h, const NormalHypersurface& m);

/// det dH(0) != 0.
Verdict is_automorphism(const CRMap& h);

}  // namespace crformal
