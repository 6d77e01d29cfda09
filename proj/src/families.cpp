#include <crformal/error.hpp>
#include <crformal/families.hpp>

namespace crformal {

namespace {

long binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  long r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * static_cast<long>(n - k + j) / static_cast<long>(j);
  return r;
}

Series zchi_sum(std::size_t n) {
  Series s(2 * n + 1, Precision::exact());
  for (std::size_t j = 0; j < n; ++j) {
    s += Series::polynomial_variable(2 * n + 1, j) * Series::polynomial_variable(2 * n + 1, n + j);
  }
  return s;
}

}  // namespace

std::optional<unsigned> exact_sqrt(unsigned value) {
  unsigned r = 0;
  while ((r + 1) * (r + 1) <= value) ++r;
  if (r * r == value) return r;
  return std::nullopt;
}

NormalHypersurface heisenberg(std::size_t n, Convention convention) {
  return heisenberg_scaled(n, Scalar(1), convention);
}

NormalHypersurface heisenberg_scaled(std::size_t n, const Scalar& scale, Convention convention) {
  if (!scale.is_real()) throw Error(ErrorCode::InvalidArgument, "Heisenberg scale must be real");
  const Series q = Series::polynomial_variable(2 * n + 1, 2 * n) + zchi_sum(n) * (convention_factor(convention) * scale);
  return NormalHypersurface(n, q, convention);
}

NormalHypersurface m_psi(const FormalMap& psi, Convention convention, std::optional<int> degree) {
  if (psi.size() == 0) throw Error(ErrorCode::InvalidArgument, "psi needs at least one component");
  if (!psi.is_pointed()) throw Error(ErrorCode::NotPointed, "psi must vanish at 0");
  const std::size_t n = psi.components[0].arity();
  std::vector<std::size_t> z_slots(n), chi_slots(n);
  for (std::size_t j = 0; j < n; ++j) {
    z_slots[j] = j;
    chi_slots[j] = n + j;
  }
  Series phi(2 * n + 1, Precision::exact());
  for (const auto& p : psi.components) {
    if (p.arity() != n) throw Error(ErrorCode::ArityMismatch, "psi components must share arity n");
    phi += embed(p, 2 * n + 1, z_slots) * embed(conjugate(p), 2 * n + 1, chi_slots);
  }
  return from_graph(phi, n, convention, degree);
}

Series theta(unsigned b, unsigned c, int degree) {
  if (b == 0 || c == 0 || 2 * b <= c) {
    throw Error(ErrorCode::InvalidArgument, "Theta_{b,c} needs positive b, c with 2b > c");
  }
  const unsigned d = 2 * b - c + 1;
  // Variables (X, s, u).
  const Series x = Series::polynomial_variable(3, 0);
  const Series s = Series::polynomial_variable(3, 1);
  const Series u = Series::polynomial_variable(3, 2);
  Series rhs(3, Precision::exact());
  for (unsigned k = 0; k <= b; ++k) {
    rhs += x * s.pow(2 * k * (d - 1)) * u.pow(2 * k) * Scalar(binomial(b, k));
  }
  for (unsigned k = 1; 2 * k + 1 <= c; ++k) {
    const long sign = k % 2 ? -1 : 1;
    rhs -= s.pow(2 * k * (d - 1)) * u.pow(2 * k + 1) *
           Scalar::rational(sign * binomial(c, 2 * k + 1), static_cast<long>(c));
  }
  return solve_implicit(rhs, degree);
}

NormalHypersurface blowup_hypersurface(unsigned b, unsigned c, int degree, Convention convention) {
  const Series th = theta(b, c, degree);
  const unsigned d = 2 * b - c + 1;
  const Series z = Series::polynomial_variable(3, 0);
  const Series chi = Series::polynomial_variable(3, 1);
  const Series s = Series::polynomial_variable(3, 2);
  const Series phi = compose(th, FormalMap{{z * chi, s}}) * s.pow(d);
  try {
    return from_graph(phi.truncate(degree), 1, convention, degree);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConstructionFailed, "M_{" + std::to_string(b) + "," + std::to_string(c) +
                                                   "}: " + e.what());
  }
}

CRMap blowup_map(unsigned b, unsigned c) {
  const auto root = exact_sqrt(c);
  if (!root) {
    throw Error(ErrorCode::FieldRestriction,
                "sqrt(" + std::to_string(c) +
                    ") is not a Gaussian rational; use the unscaled map with the scaled Heisenberg target");
  }
  const Series z = Series::polynomial_variable(2, 0), w = Series::polynomial_variable(2, 1);
  return CRMap(1, {z * w.pow(b) * Scalar(static_cast<long>(*root))}, w.pow(c));
}

CRMap blowup_map_unscaled(unsigned b, unsigned c) {
  const Series z = Series::polynomial_variable(2, 0), w = Series::polynomial_variable(2, 1);
  return CRMap(1, {z * w.pow(b)}, w.pow(c));
}

NormalHypersurface exp_model(unsigned k, int degree, Convention convention) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "exp model needs k >= 1");
  const Series z = Series::polynomial_variable(3, 0), chi = Series::polynomial_variable(3, 1);
  const Series tau = Series::polynomial_variable(3, 2);
  const Series e = exp_series(z * chi * Scalar::gaussian(0, 1, static_cast<long>(k)), degree);
  return NormalHypersurface(1, (tau * e).truncate(degree), convention);
}

CRMap tk_map(unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "T_k needs k >= 1");
  const Series z = Series::polynomial_variable(2, 0), w = Series::polynomial_variable(2, 1);
  return CRMap(1, {z}, w.pow(k));
}

CRMap hk_map(unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "H_k needs k >= 1");
  const auto root = exact_sqrt(k);
  if (!root) {
    throw Error(ErrorCode::FieldRestriction, "sqrt(" + std::to_string(k) + ") is not a Gaussian rational");
  }
  const Series z = Series::polynomial_variable(2, 0), w = Series::polynomial_variable(2, 1);
  return CRMap(1, {z * Scalar(static_cast<long>(*root))}, w.pow(k));
}

RemarkInstance remark_instance(int degree, Convention convention) {
  const Series z = Series::polynomial_variable(3, 0), chi = Series::polynomial_variable(3, 1);
  const Series tau = Series::polynomial_variable(3, 2);
  const Series denom = Series::polynomial_constant(3, 1) - z * chi * tau * convention_factor(convention);
  const Series q = tau * invert_unit(denom, degree);
  const Series hz = Series::polynomial_variable(2, 0), hw = Series::polynomial_variable(2, 1);
  return RemarkInstance{NormalHypersurface(1, q.truncate(degree), convention), heisenberg(1, convention),
                        CRMap(1, {hz}, hz * hw), CRMap(1, {hz * hw}, hw)};
}

}  // namespace crformal
