#include <crformal/cr_map.hpp>
#include <crformal/error.hpp>
#include <crformal/series_matrix.hpp>

#include <sstream>

namespace crformal {

CRMap::CRMap(std::size_t n, std::vector<Series> f, Series g) : n_(n), f_(std::move(f)), g_(std::move(g)) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "map needs n >= 1");
  if (f_.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "map needs " + std::to_string(n) + " tangential components");
  }
  auto check = [&](const Series& s, const std::string& name) {
    if (s.arity() != n + 1) throw Error(ErrorCode::ArityMismatch, name + " must be a series in (z, w)");
    if (!s.constant_term().is_zero()) throw Error(ErrorCode::NotPointed, name + " has a nonzero constant term");
  };
  for (std::size_t j = 0; j < n; ++j) check(f_[j], "F" + std::to_string(j + 1));
  check(g_, "G");
}

CRMap CRMap::identity(std::size_t n) {
  std::vector<Series> f;
  for (std::size_t j = 0; j < n; ++j) f.push_back(Series::polynomial_variable(n + 1, j));
  return CRMap(n, std::move(f), Series::polynomial_variable(n + 1, n));
}

Precision CRMap::precision() const {
  Precision p = g_.precision();
  for (const auto& s : f_) p = min(p, s.precision());
  return p;
}

FormalMap CRMap::components() const {
  FormalMap m{f_};
  m.components.push_back(g_);
  return m;
}

std::vector<std::string> CRMap::variable_names(std::size_t n) {
  if (n == 1) return {"z", "w"};
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  names.push_back("w");
  return names;
}

std::string CRMap::to_string() const {
  const auto names = variable_names(n_);
  std::string s = "(";
  for (const auto& c : f_) s += c.to_string(names) + ", ";
  return s + g_.to_string(names) + ")";
}

CRMap compose(const CRMap& outer, const CRMap& inner) {
  if (outer.n() != inner.n()) throw Error(ErrorCode::DimensionMismatch, "compose: maps differ in dimension");
  const FormalMap sub = inner.components();
  std::vector<Series> f;
  for (const auto& c : outer.f()) f.push_back(compose(c, sub));
  return CRMap(outer.n(), std::move(f), compose(outer.g(), sub));
}

namespace {

std::string monomial_text(const MultiIndex& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

void require_dimensions(const CRMap& h, const NormalHypersurface& m) {
  if (h.n() != m.n()) {
    throw Error(ErrorCode::DimensionMismatch, "map has n = " + std::to_string(h.n()) +
                                                  " but hypersurface has n = " + std::to_string(m.n()));
  }
}

/// Precondition verdict for checks that need a finite, certified trord.
struct TrordGate {
  std::optional<TransversalOrder> order;
  std::optional<Verdict> failure;
};

TrordGate finite_trord(const CRMap& h) {
  TrordGate gate;
  try {
    TransversalOrder t = transversal_order(h);
    if (t.infinite) {
      gate.failure = Verdict::unknown(t.degree_used, "H is transversally flat at truncation");
    } else {
      gate.order = t;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TrordUndefined) throw;
    gate.failure = Verdict::unknown(h.precision(), e.what());
  }
  return gate;
}

}  // namespace

Verdict sends_into(const CRMap& h, const NormalHypersurface& m, const NormalHypersurface& target) {
  require_dimensions(h, m);
  require_dimensions(h, target);
  const std::size_t n = h.n();
  const std::size_t a = 2 * n + 1;  // (z, chi, tau)

  FormalMap z_q;
  for (std::size_t j = 0; j < n; ++j) z_q.components.push_back(Series::polynomial_variable(a, j));
  z_q.components.push_back(m.q());

  std::vector<std::size_t> chi_tau(n + 1);
  for (std::size_t j = 0; j <= n; ++j) chi_tau[j] = n + j;

  const Series lhs = compose(h.g(), z_q);
  FormalMap args;
  for (const auto& f : h.f()) args.components.push_back(compose(f, z_q));
  for (const auto& f : h.f()) args.components.push_back(embed(conjugate(f), a, chi_tau));
  args.components.push_back(embed(conjugate(h.g()), a, chi_tau));
  const Series rhs = compose(target.q(), args);

  const Series diff = lhs - rhs;
  if (auto lead = diff.leading_term()) {
    const auto names = NormalHypersurface::variable_names(n);
    const MultiIndex& e = lead->first;
    std::ostringstream w;
    w << "coefficient of " << monomial_text(e, names) << ": G(z,Q) has " << lhs.coefficient(e).to_string()
      << ", Q'(F(z,Q),Fbar,Gbar) has " << rhs.coefficient(e).to_string();
    return Verdict::certified_false(diff.precision(), w.str(), e);
  }
  return Verdict::certified_true(diff.precision(), "both sides agree");
}

Verdict is_cr_transversal(const CRMap& h) {
  const Series& g = h.g();
  if (!g.precision().covers(1)) return Verdict::unknown(g.precision(), "G is not known to degree 1");
  const Scalar gw = g.coefficient(MultiIndex::unit(h.n() + 1, h.w_index()));
  if (gw.is_zero()) {
    return Verdict::certified_false(Precision::exact(), "G_w(0) = 0", MultiIndex::unit(h.n() + 1, h.w_index()));
  }
  return Verdict::certified_true(Precision::exact(), "G_w(0) = " + gw.to_string());
}

Verdict is_transversally_flat(const CRMap& h) {
  const Series& g = h.g();
  if (auto lead = g.leading_term()) {
    return Verdict::certified_false(Precision::exact(),
                                    "G has coefficient " + lead->second.to_string() + " at " +
                                        monomial_text(lead->first, CRMap::variable_names(h.n())),
                                    lead->first);
  }
  if (g.is_exact()) return Verdict::certified_true(Precision::exact(), "G = 0");
  return Verdict::certified_true(g.precision(), "G vanishes up to " + g.precision().to_string() +
                                                    " (truncation-limited)");
}

Verdict is_not_totally_degenerate(const CRMap& h) {
  const std::size_t n = h.n();
  SeriesMatrix fz(n, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Series f0 = restrict_to_zero(h.f()[i], Block{n, 1});  // F_i(z, 0)
    for (std::size_t j = 0; j < n; ++j) fz.set(i, j, partial_derivative(f0, j));
  }
  const RankResult r = generic_rank(fz);
  if (r.rank == n) {
    Verdict v = Verdict::certified_true(r.lower.degree_used, "F_z(z,0): " + r.lower.witness);
    v.monomial = r.witness_monomial;
    return v;
  }
  if (r.upper.is_true()) {
    return Verdict::certified_false(r.upper.degree_used,
                                    "F_z(z,0) has generic rank " + std::to_string(r.rank) + " < " + std::to_string(n));
  }
  return Verdict::unknown(r.upper.degree_used, "F_z(z,0) reaches rank " + std::to_string(r.rank) +
                                                   " only; " + r.upper.witness);
}

Series jacobian(const CRMap& h) { return determinant(SeriesMatrix::jacobian(h.components())); }

Verdict is_jac_nonzero(const CRMap& h) {
  const Series jac = jacobian(h);
  if (auto lead = jac.leading_term()) {
    Verdict v = Verdict::certified_true(jac.precision(), "Jac H has coefficient " + lead->second.to_string() +
                                                             " at " +
                                                             monomial_text(lead->first, CRMap::variable_names(h.n())));
    v.monomial = lead->first;
    return v;
  }
  if (jac.is_exact()) return Verdict::certified_false(Precision::exact(), "Jac H = 0");
  return Verdict::unknown(jac.precision(), "Jac H vanishes up to " + jac.precision().to_string());
}

std::string TransversalOrder::label() const {
  if (!infinite) return std::to_string(value);
  return degree_used.is_exact() ? "inf" : "inf@" + std::to_string(degree_used.degree());
}

TransversalOrder transversal_order(const CRMap& h) {
  const Series& g = h.g();
  TransversalOrder t;
  t.degree_used = g.precision();
  if (g.is_zero()) {
    t.infinite = true;
    return t;
  }
  const MultiIndex* best = nullptr;
  for (const auto& [e, c] : g.terms()) {
    if (!best || e[h.w_index()] < (*best)[h.w_index()]) best = &e;
  }
  t.value = (*best)[h.w_index()];
  t.witness = *best;
  t.coefficient = g.terms().at(*best);
  if (t.value == 0) {
    throw Error(ErrorCode::TrordUndefined,
                "G(z,0) is not zero (coefficient " + t.coefficient.to_string() + " at " +
                    monomial_text(*best, CRMap::variable_names(h.n())) + "); H does not fix {w = 0}");
  }
  return t;
}

Verdict normal_component_reality_check(const CRMap& h, const NormalHypersurface& m,
                                       const NormalHypersurface& target) {
  require_dimensions(h, m);
  require_dimensions(h, target);
  const TrordGate gate = finite_trord(h);
  if (gate.failure) return *gate.failure;
  const unsigned k = gate.order->value;
  const std::size_t n = h.n();
  if (!h.g().precision().covers(k)) return Verdict::unknown(h.g().precision(), "G_{w^k} is beyond the truncation");
  const Series coeff = block_coefficient(h.g(), Block{n, 1}, MultiIndex({k}));  // [w^k] G as a series in z
  const Scalar c0 = coeff.constant_term();
  Scalar kfact(1);
  for (unsigned j = 2; j <= k; ++j) kfact *= Scalar(static_cast<long>(j));
  const Scalar value = c0 * kfact;
  for (const auto& [e, c] : coeff.terms()) {
    if (e.is_zero()) continue;
    return Verdict::certified_false(coeff.precision(),
                                    "G_{w^" + std::to_string(k) + "}(z,0) is not constant: coefficient " +
                                        c.to_string() + " at z-exponent " + e.to_string());
  }
  if (value.is_zero()) {
    return Verdict::certified_false(coeff.precision(), "G_{w^" + std::to_string(k) + "}(0) = 0");
  }
  if (!value.is_real()) {
    return Verdict::certified_false(coeff.precision(),
                                    "G_{w^" + std::to_string(k) + "}(0) = " + value.to_string() + " is not real");
  }
  return Verdict::certified_true(coeff.precision(), "k = " + std::to_string(k) + ", G_{w^k}(0) = " +
                                                        value.to_string() + " (coefficient of w^k: " +
                                                        c0.to_string() + ")");
}

Verdict trord_bound_check(const CRMap& h, const NormalHypersurface& m, const NormalHypersurface& target) {
  const TypeClassification tm = classify_type(m);
  const TypeClassification tt = classify_type(target);
  using Kind = TypeClassification::Kind;
  if (tm.kind != Kind::InfiniteType || tt.kind != Kind::InfiniteType) {
    return Verdict::unknown(min(m.precision(), target.precision()),
                            "types not certified infinite: M is " + tm.label() + ", M' is " + tt.label());
  }
  const Verdict sends = sends_into(h, m, target);
  if (!sends.is_true()) return Verdict::unknown(sends.degree_used, "H does not send M into M': " + sends.witness);
  const TrordGate gate = finite_trord(h);
  if (gate.failure) return *gate.failure;
  const unsigned k = gate.order->value;
  const long lhs = static_cast<long>(tt.m - 1) * k;
  const long rhs = static_cast<long>(tm.m) - 1;
  const Precision p = min(sends.degree_used, min(tm.degree_used, tt.degree_used));
  std::ostringstream w;
  w << "(m'-1)*trord = (" << tt.m << "-1)*" << k << " = " << lhs << ", m-1 = " << rhs;
  if (lhs <= rhs) return Verdict::certified_true(p, w.str() + ": bound holds");
  return Verdict::certified_false(p, w.str() + ": BOUND VIOLATED");
}

Verdict basid_check(const CRMap& h, const NormalHypersurface& m) {
  require_dimensions(h, m);
  const std::size_t n = h.n();
  const TypeClassification t = classify_type(m);
  if (t.kind != TypeClassification::Kind::InfiniteType) {
    return Verdict::unknown(m.precision(), "M is not certified of infinite type (" + t.label() + ")");
  }
  const Verdict transversal = is_cr_transversal(h);
  if (!transversal.is_true()) return Verdict::unknown(m.precision(), "H is not certified CR-transversal");
  const Verdict sends = sends_into(h, m, m);
  if (!sends.is_true()) return Verdict::unknown(sends.degree_used, "H does not send M into itself: " + sends.witness);

  const Series p = m.q() - Series::polynomial_variable(2 * n + 1, 2 * n);
  const Series qtilde = block_coefficient(p, Block{2 * n, 1}, MultiIndex({t.m}));  // (z, chi)

  std::vector<std::size_t> z_slots(n), chi_slots(n);
  for (std::size_t j = 0; j < n; ++j) {
    z_slots[j] = j;
    chi_slots[j] = n + j;
  }
  FormalMap args;
  for (const auto& f : h.f()) {
    const Series f0 = restrict_to_zero(f, Block{n, 1});
    args.components.push_back(embed(f0, 2 * n, z_slots));
  }
  for (const auto& f : h.f()) {
    const Series f0 = restrict_to_zero(f, Block{n, 1});
    args.components.push_back(embed(conjugate(f0), 2 * n, chi_slots));
  }
  const Scalar gw = h.g().coefficient(MultiIndex::unit(n + 1, n));
  const Series rhs = compose(qtilde, args) * gw.pow(t.m - 1);
  const Series diff = qtilde - rhs;
  if (auto lead = diff.leading_term()) {
    const auto names = NormalHypersurface::variable_names(n);
    return Verdict::certified_false(diff.precision(),
                                    "Qtilde(z,chi,0) and G_w(0)^(m-1) Qtilde(F,Fbar,0) differ at exponent " +
                                        lead->first.to_string() + ": " + qtilde.coefficient(lead->first).to_string() +
                                        " vs " + rhs.coefficient(lead->first).to_string(),
                                    lead->first);
  }
  return Verdict::certified_true(min(diff.precision(), sends.degree_used),
                                 "m = " + std::to_string(t.m) + ", G_w(0) = " + gw.to_string());
}

Verdict is_automorphism(const CRMap& h) {
  const std::size_t n = h.n();
  const FormalMap comps = h.components();
  std::vector<std::vector<Scalar>> linear(n + 1, std::vector<Scalar>(n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    if (!comps.components[i].precision().covers(1)) {
      return Verdict::unknown(comps.components[i].precision(), "linear part not known");
    }
    for (std::size_t j = 0; j <= n; ++j) linear[i][j] = comps.components[i].coefficient(MultiIndex::unit(n + 1, j));
  }
  const std::size_t r = scalar_rank(linear);
  if (r == n + 1) return Verdict::certified_true(Precision::exact(), "dH(0) is invertible");
  return Verdict::certified_false(Precision::exact(), "dH(0) has rank " + std::to_string(r) + " < " + std::to_string(n + 1));
}

}  // namespace crformal
