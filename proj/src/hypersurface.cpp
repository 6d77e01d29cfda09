#include <crformal/error.hpp>
#include <crformal/hypersurface.hpp>
#include <crformal/series_matrix.hpp>

#include <sstream>

namespace crformal {

const char* convention_name(Convention c) noexcept { return c == Convention::TwoI ? "2i" : "i"; }

Scalar convention_factor(Convention c) {
  return c == Convention::TwoI ? Scalar::gaussian(0, 2) : Scalar::i();
}

std::optional<Convention> parse_convention(const std::string& text) {
  if (text == "2i") return Convention::TwoI;
  if (text == "i") return Convention::I;
  return std::nullopt;
}

NormalHypersurface::NormalHypersurface(std::size_t n, Series q, Convention convention)
    : n_(n), q_(std::move(q)), convention_(convention) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "hypersurface needs n >= 1");
  if (q_.arity() != 2 * n + 1) {
    throw Error(ErrorCode::ArityMismatch, "Q must have 2n+1 = " + std::to_string(2 * n + 1) +
                                              " variables, got " + std::to_string(q_.arity()));
  }
}

std::vector<std::string> NormalHypersurface::variable_names(std::size_t n) {
  std::vector<std::string> names;
  if (n == 1) return {"z", "chi", "tau"};
  for (std::size_t j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  for (std::size_t j = 1; j <= n; ++j) names.push_back("chi" + std::to_string(j));
  names.push_back("tau");
  return names;
}

std::string NormalHypersurface::to_string() const {
  const auto names = variable_names(n_);
  std::string s = q_.to_string(names);
  if (!q_.is_exact()) s += " + O(" + std::to_string(q_.precision().degree() + 1) + ")";
  return s;
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

/// Substitution (z, chi, last) -> (z, chi, replacement) in arity of `last`.
FormalMap keep_blocks_replace_last(std::size_t n, std::size_t arity, Series last) {
  FormalMap g;
  for (std::size_t j = 0; j < 2 * n; ++j) g.components.push_back(Series::polynomial_variable(arity, j));
  g.components.push_back(std::move(last));
  return g;
}

bool depends_on(const Series& f, std::size_t var) {
  for (const auto& [e, c] : f.terms()) {
    if (e[var]) return true;
  }
  return false;
}

Series conjugate_swapped(const Series& f, std::size_t n) {
  return conjugate(swap_blocks(f, Block{0, n}, Block{n, n}));
}

}  // namespace

Verdict validate(const NormalHypersurface& m) {
  const std::size_t n = m.n();
  const Series& q = m.q();
  const Precision p = q.precision();
  const auto names = NormalHypersurface::variable_names(n);

  // Normality, one block at a time.
  for (int pass = 0; pass < 2; ++pass) {
    const Block zeroed = pass == 0 ? m.z_block() : m.chi_block();
    Series tau = Series::polynomial_variable(n + 1, n);
    Series diff = restrict_to_zero(q, zeroed) - tau;
    if (auto lead = diff.leading_term()) {
      const MultiIndex full = lead->first.insert(zeroed.first, MultiIndex(n));
      std::ostringstream w;
      w << (pass == 0 ? "Q(0,chi,tau)" : "Q(z,0,tau)") << " differs from tau at "
        << monomial_text(full, names) << " (coefficient " << lead->second.to_string() << ")";
      return Verdict::certified_false(p, w.str(), full);
    }
  }

  // Reality: Q(z, chi, Qbar(chi, z, w)) = w.
  const Series qbar = conjugate_swapped(q, n);
  const Series lhs = compose(q, keep_blocks_replace_last(n, 2 * n + 1, qbar));
  const Series diff = lhs - Series::polynomial_variable(2 * n + 1, 2 * n);
  if (auto lead = diff.leading_term()) {
    auto wnames = names;
    wnames.back() = "w";
    std::ostringstream w;
    w << "Q(z,chi,Qbar(chi,z,w)) - w has coefficient " << lead->second.to_string() << " at "
      << monomial_text(lead->first, wnames);
    return Verdict::certified_false(lhs.precision(), w.str(), lead->first);
  }
  return Verdict::certified_true(lhs.precision(), "normality and reality hold");
}

NormalHypersurface from_graph(const Series& phi, std::size_t n, Convention convention,
                              std::optional<int> degree) {
  if (phi.arity() != 2 * n + 1) {
    throw Error(ErrorCode::ArityMismatch, "phi must have 2n+1 variables (z, chi, s)");
  }
  if (!restrict_to_zero(phi, Block{0, n}).is_zero() || !restrict_to_zero(phi, Block{n, n}).is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "phi must vanish when z = 0 or chi = 0");
  }
  if (!(conjugate_swapped(phi, n) == phi)) {
    throw Error(ErrorCode::InvalidArgument, "phi is not real: conj(phi(chi, z, s)) != phi(z, chi, s)");
  }
  const Scalar factor = convention_factor(convention);
  const std::size_t tau = 2 * n;
  Series q;
  if (!depends_on(phi, tau)) {
    q = Series::polynomial_variable(2 * n + 1, tau) + phi * factor;
    if (degree) q = q.truncate(*degree);
  } else {
    // u = w - tau solves u = factor * phi(z, chi, tau + u/2).
    const std::size_t a = 2 * n + 2;
    Series s = Series::polynomial_variable(a, tau) +
               Series::polynomial_variable(a, tau + 1) * Scalar::rational(1, 2);
    const Series rhs = compose(phi, keep_blocks_replace_last(n, a, s)) * factor;
    const Series u = solve_implicit(rhs, degree);
    q = Series::polynomial_variable(2 * n + 1, tau) + u;
  }
  NormalHypersurface m(n, q, convention);
  const Verdict v = validate(m);
  if (v.is_false()) {
    throw Error(ErrorCode::ConstructionFailed, "graph construction produced an invalid hypersurface: " +
                                                   v.witness);
  }
  return m;
}

Series extract_graph(const NormalHypersurface& m, std::optional<int> degree) {
  const std::size_t n = m.n();
  const std::size_t tau = 2 * n;
  const Scalar inv_factor = Scalar(1) / convention_factor(m.convention());
  const Series p = m.q() - Series::polynomial_variable(2 * n + 1, tau);
  if (!depends_on(p, tau)) return degree ? (p * inv_factor).truncate(*degree) : p * inv_factor;
  // tau* = s + u with (Q(z,chi,tau*) + tau*)/2 = s, i.e. u = -P(z,chi,s+u)/2.
  const std::size_t a = 2 * n + 2;
  const Series shifted = Series::polynomial_variable(a, tau) + Series::polynomial_variable(a, tau + 1);
  const Series rhs = compose(p, keep_blocks_replace_last(n, a, shifted)) * Scalar::rational(-1, 2);
  const Series u = solve_implicit(rhs, degree);
  return u * (Scalar(-2) * inv_factor);
}

std::string TypeClassification::label() const {
  switch (kind) {
    case Kind::FiniteType:
      return "finite";
    case Kind::InfiniteType:
      return "infinite(" + std::to_string(m) + ")";
    case Kind::Unknown:
      return "unknown";
  }
  return "?";
}

TypeClassification classify_type(const NormalHypersurface& m) {
  const std::size_t n = m.n();
  const Series& q = m.q();
  const auto names = NormalHypersurface::variable_names(n);
  TypeClassification out;

  const Series at_zero = restrict_to_zero(q, Block{2 * n, 1});
  if (auto lead = at_zero.leading_term()) {
    out.kind = TypeClassification::Kind::FiniteType;
    out.witness = lead->first.insert(2 * n, MultiIndex(1));
    out.coefficient = lead->second;
    out.note = "Q(z,chi,0) has coefficient " + lead->second.to_string() + " at " +
               monomial_text(*out.witness, names);
    return out;
  }

  out.degree_used = q.precision();
  const Series p = q - Series::polynomial_variable(2 * n + 1, 2 * n);
  if (p.is_zero()) {
    out.kind = TypeClassification::Kind::Unknown;
    out.note = "Q - tau vanishes up to " + q.precision().to_string() + "; the exponent m is undefined";
    return out;
  }
  // Smallest tau-power, witnessed by its lowest term.
  const MultiIndex* best = nullptr;
  for (const auto& [e, c] : p.terms()) {
    if (!best || e[2 * n] < (*best)[2 * n]) best = &e;
  }
  out.kind = TypeClassification::Kind::InfiniteType;
  out.m = (*best)[2 * n];
  out.witness = *best;
  out.coefficient = p.terms().at(*best);
  out.note = "Q(z,chi,0) vanishes up to " + q.precision().to_string() + "; Q - tau has coefficient " +
             out.coefficient.to_string() + " at " + monomial_text(*best, names);
  return out;
}

namespace {

unsigned default_k_max(const Series& f, unsigned reserved) {
  if (f.is_exact()) return std::max(1u, f.max_degree());
  const int k = f.precision().degree() - static_cast<int>(reserved) - 1;
  return k < 0 ? 0u : static_cast<unsigned>(k);
}

/// Rows grad_x coeff_alpha(x) for |alpha| <= k (alpha in `z_count`
/// variables, alpha degree >= `min_alpha`), rank tested against `target`.
Verdict gradient_rank_test(const Series& source, Block z, unsigned min_alpha, unsigned k_max,
                           std::size_t target, const std::string& what) {
  std::vector<std::vector<Series>> rows;
  const std::size_t vars = source.arity() - z.count;
  for (unsigned k = min_alpha; k <= k_max; ++k) {
    for (const MultiIndex& alpha : indices_of_degree(z.count, k)) {
      if (!source.precision().covers(k)) break;
      const Series c = block_coefficient(source, z, alpha);
      std::vector<Series> row;
      for (std::size_t j = 0; j < vars; ++j) row.push_back(partial_derivative(c, j));
      rows.push_back(std::move(row));
    }
    if (k == 0 || rows.empty()) continue;
    const RankResult r = generic_rank(SeriesMatrix::from_rows(rows));
    if (r.rank >= target) {
      Verdict v = Verdict::certified_true(r.lower.degree_used, what + " has rank " + std::to_string(target) +
                                                                   " at jet order k=" + std::to_string(k) +
                                                                   ": " + r.lower.witness);
      v.monomial = r.witness_monomial;
      return v;
    }
  }
  return Verdict::unknown(source.precision(), what + " did not reach rank " + std::to_string(target) +
                                                   " for jet orders up to " + std::to_string(k_max));
}

}  // namespace

Verdict is_class_C(const NormalHypersurface& m, std::optional<unsigned> k_max) {
  const std::size_t n = m.n();
  const Series at_zero = restrict_to_zero(m.q(), Block{2 * n, 1});  // Q(z, chi, 0)
  return gradient_rank_test(at_zero, Block{0, n}, 0, k_max.value_or(default_k_max(m.q(), 0)), n,
                            "chi-gradient family of Q_{z^alpha}(0,chi,0)");
}

Verdict is_class_Cm(const NormalHypersurface& m, unsigned type_m, std::optional<unsigned> k_max) {
  const TypeClassification t = classify_type(m);
  if (t.kind != TypeClassification::Kind::InfiniteType || t.m != type_m) {
    throw Error(ErrorCode::TypeMismatch, "class C_" + std::to_string(type_m) + " asked for a hypersurface of type " +
                                             t.label());
  }
  const std::size_t n = m.n();
  const Series p = m.q() - Series::polynomial_variable(2 * n + 1, 2 * n);
  const Series qtilde = block_coefficient(p, Block{2 * n, 1}, MultiIndex({type_m}));  // Qtilde(z, chi, 0)
  return gradient_rank_test(qtilde, Block{0, n}, 0, k_max.value_or(default_k_max(m.q(), type_m)), n,
                            "chi-gradient family of Qtilde_{z^alpha}(chi)");
}

Verdict is_holomorphically_nondegenerate(const NormalHypersurface& m, std::optional<unsigned> k_max) {
  const std::size_t n = m.n();
  return gradient_rank_test(m.q(), Block{0, n}, 0, k_max.value_or(default_k_max(m.q(), 0)), n + 1,
                            "(chi,tau)-gradient family of Q_{z^alpha}(0,chi,tau)");
}

Verdict coefficient_family_rank(const Series& a, std::size_t n, std::size_t target, unsigned k_max) {
  if (a.arity() < n) throw Error(ErrorCode::ArityMismatch, "z-block larger than the series");
  return gradient_rank_test(a, Block{0, n}, 0, k_max, target, "chi-gradient family of A_{z^alpha}(0,chi)");
}

std::string exceptional_hypersurface(const NormalHypersurface& m) {
  const TypeClassification t = classify_type(m);
  if (t.kind == TypeClassification::Kind::FiniteType) {
    throw Error(ErrorCode::TypeMismatch, "finite-type hypersurfaces have no exceptional hypersurface");
  }
  return "w = 0";
}

}  // namespace crformal
