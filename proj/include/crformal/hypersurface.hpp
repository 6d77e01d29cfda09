#pragma once

#include <crformal/series.hpp>
#include <crformal/verdict.hpp>

#include <optional>
#include <string>
#include <vector>

namespace crformal {

/// How "Im w = phi" is complexified: w - tau = factor * phi(z, chi, (w+tau)/2)
/// with factor 2i (TwoI) or i (I).
enum class Convention { TwoI, I };

const char* convention_name(Convention c) noexcept;
Scalar convention_factor(Convention c);
/// Accepts "2i" and "i".
std::optional<Convention> parse_convention(const std::string& text);

/// Real hypersurface w = Q(z, chi, tau) in normal coordinates.
///
/// Q lives in 2n+1 variables ordered (z_1..z_n, chi_1..chi_n, tau).
class NormalHypersurface {
 public:
  NormalHypersurface(std::size_t n, Series q, Convention convention = Convention::TwoI);

  std::size_t n() const { return n_; }
  const Series& q() const { return q_; }
  Precision precision() const { return q_.precision(); }
  Convention convention() const { return convention_; }

  Block z_block() const { return Block{0, n_}; }
  Block chi_block() const { return Block{n_, n_}; }
  std::size_t tau_index() const { return 2 * n_; }

  /// "z", "chi", "tau" for n = 1; "z1".., "chi1".., "tau" otherwise.
  static std::vector<std::string> variable_names(std::size_t n);
  std::string to_string() const;

 private:
  std::size_t n_;
  Series q_;
  Convention convention_;
};

/// Normality Q(0,chi,tau) = Q(z,0,tau) = tau and reality
/// Q(z, chi, Qbar(chi, z, w)) = w, both up to the known degree.
Verdict validate(const NormalHypersurface& m);

/// Hypersurface Im w = phi(z, zbar, Re w), phi given in (z, chi, s).
/// Exact phi needs `degree` unless phi does not involve s.
NormalHypersurface from_graph(const Series& phi, std::size_t n, Convention convention,
                              std::optional<int> degree = std::nullopt);

/// Inverse of from_graph: phi with Q - tau = factor * phi(z, chi, (Q+tau)/2).
/// Exact Q depending on tau needs `degree`.
Series extract_graph(const NormalHypersurface& m, std::optional<int> degree = std::nullopt);

struct TypeClassification {
  enum class Kind { FiniteType, InfiniteType, Unknown };
  Kind kind = Kind::Unknown;
  /// Infinite-type exponent (m >= 1), 0 otherwise.
  unsigned m = 0;
  /// Monomial of Q (full arity) witnessing the answer.
  std::optional<MultiIndex> witness;
  Scalar coefficient;
  Precision degree_used = Precision::exact();
  std::string note;

  /// "finite", "infinite(m)" or "unknown".
  std::string label() const;
};

TypeClassification classify_type(const NormalHypersurface& m);

/// Class C: the chi-gradients of Q_{z^alpha}(0, chi, 0), |alpha| <= k, reach
/// rank n for some k <= k_max. k_max defaults to D-1 (or deg Q if exact).
Verdict is_class_C(const NormalHypersurface& m, std::optional<unsigned> k_max = std::nullopt);

/// Same rank test on the coefficients of Qtilde(z, chi, 0) where
/// Q = tau + tau^m Qtilde. Throws TypeMismatch unless M has infinite type m.
Verdict is_class_Cm(const NormalHypersurface& m, unsigned type_m,
                    std::optional<unsigned> k_max = std::nullopt);

/// The (chi, tau)-gradients of Q_{z^alpha}(0, chi, tau), |alpha| <= k, reach
/// rank n + 1.
Verdict is_holomorphically_nondegenerate(const NormalHypersurface& m,
                                         std::optional<unsigned> k_max = std::nullopt);

/// Generic rank of the chi-gradients of (A_{z^alpha}(0, chi))_{|alpha| <= k}
/// reaches `target` for some k <= k_max. z is the first n variables of A.
/// Never certified false: a deficient rank is Unknown.
Verdict coefficient_family_rank(const Series& a, std::size_t n, std::size_t target, unsigned k_max);

/// The exceptional hypersurface {w = 0} of an infinite-type M.
/// Throws TypeMismatch for finite type.
std::string exceptional_hypersurface(const NormalHypersurface& m);

}  // namespace crformal
