#pragma once

#include <crformal/cr_map.hpp>
#include <crformal/hypersurface.hpp>

#include <optional>

namespace crformal {

/// Im w = sum |z_j|^2 (exact).
NormalHypersurface heisenberg(std::size_t n, Convention convention = Convention::TwoI);
/// Im w = scale * sum |z_j|^2 for a real scale (exact).
NormalHypersurface heisenberg_scaled(std::size_t n, const Scalar& scale,
                                     Convention convention = Convention::TwoI);

/// Im w = sum |psi_j(z)|^2; psi components are series in z (arity n).
NormalHypersurface m_psi(const FormalMap& psi, Convention convention = Convention::TwoI,
                         std::optional<int> degree = std::nullopt);

/// Theta_{b,c}(X, s): the solution u of
/// sum_k C(c,2k+1) (-1)^k s^{2k(d-1)} u^{2k+1} = c X sum_k C(b,k) s^{2k(d-1)} u^{2k},
/// d = 2b - c + 1. Requires 2b > c.
Series theta(unsigned b, unsigned c, int degree);

/// The hypersurface t = s^d Theta_{b,c}(|z|^2, s) (w = s + i t), of
/// d-infinite type.
NormalHypersurface blowup_hypersurface(unsigned b, unsigned c, int degree,
                                       Convention convention = Convention::TwoI);

/// (sqrt(c) z w^b, w^c); throws FieldRestriction unless c is a perfect square.
CRMap blowup_map(unsigned b, unsigned c);
/// (z w^b, w^c): maps M_{b,c} into heisenberg_scaled(1, c).
CRMap blowup_map_unscaled(unsigned b, unsigned c);

/// w = wbar exp(i |z|^2 / k): Q = tau exp(i z chi / k).
NormalHypersurface exp_model(unsigned k, int degree, Convention convention = Convention::TwoI);
/// (z, w^k).
CRMap tk_map(unsigned k);
/// (sqrt(k) z, w^k); throws FieldRestriction unless k is a perfect square.
CRMap hk_map(unsigned k);

/// Im w = |z w|^2 with the Heisenberg target and the candidate map (z, zw).
struct RemarkInstance {
  NormalHypersurface m;
  NormalHypersurface target;
  CRMap h;
  /// (zw, w), which does send m into the target under the 2i convention.
  CRMap h_swapped;
};

/// Q solves w - tau = factor * z chi w tau, i.e. Q = tau / (1 - factor z chi tau).
RemarkInstance remark_instance(int degree, Convention convention = Convention::TwoI);

/// Integer square root when `value` is a perfect square.
std::optional<unsigned> exact_sqrt(unsigned value);

}  // namespace crformal
