#include <crformal/error.hpp>
#include <crformal/series.hpp>

#include <algorithm>
#include <sstream>

namespace crformal {

std::string Precision::to_string() const {
  return exact_ ? std::string("exact") : "D=" + std::to_string(degree_);
}

namespace {

void require_same_arity(const Series& a, const Series& b, const char* what) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::ArityMismatch, std::string(what) + ": arity " + std::to_string(a.arity()) +
                                              " vs " + std::to_string(b.arity()));
  }
}

/// Cauchy product truncated to `p`, which must not exceed what the operands
/// support.
Series multiply(const Series& a, const Series& b, Precision p) {
  Series::Terms acc;
  if (!a.is_zero() && !b.is_zero()) {
    for (const auto& [ea, ca] : a.terms()) {
      if (!p.covers(ea.degree())) break;
      for (const auto& [eb, cb] : b.terms()) {
        if (!p.covers(ea.degree() + eb.degree())) break;
        auto [it, inserted] = acc.try_emplace(ea + eb, ca);
        if (inserted) {
          it->second *= cb;
        } else {
          it->second += ca * cb;
        }
      }
    }
  }
  return Series::from_terms(a.arity(), p, acc);
}

int required_degree(const Series& f, std::optional<int> degree, const char* what) {
  if (f.is_exact()) {
    if (!degree) {
      throw Error(ErrorCode::DegreeRequired,
                  std::string(what) + " of a polynomial needs an explicit truncation degree");
    }
    return *degree;
  }
  return degree ? std::min(*degree, f.precision().degree()) : f.precision().degree();
}

/// Same terms, re-declared at truncation `degree` (the caller guarantees the
/// missing coefficients are irrelevant at that degree).
Series with_precision(const Series& f, Precision p) {
  return Series::from_terms(f.arity(), p, f.terms());
}

}  // namespace

Series::Series(std::size_t arity, Precision precision) : arity_(arity), precision_(precision) {
  if (arity > MultiIndex::kMaxVariables) {
    throw Error(ErrorCode::IndexOutOfRange, "too many variables");
  }
}

Series Series::constant(std::size_t arity, const Scalar& c, Precision precision) {
  Series s(arity, precision);
  s.add_term(MultiIndex(arity), c);
  s.drop_above_precision();
  return s;
}

Series Series::variable(std::size_t arity, std::size_t index, Precision precision) {
  if (index >= arity) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Series s(arity, precision);
  s.add_term(MultiIndex::unit(arity, index), Scalar(1));
  s.drop_above_precision();
  return s;
}

Series Series::monomial(const MultiIndex& exps, const Scalar& c, Precision precision) {
  Series s(exps.size(), precision);
  s.add_term(exps, c);
  s.drop_above_precision();
  return s;
}

Series Series::from_terms(std::size_t arity, Precision precision, const Terms& terms) {
  Series s(arity, precision);
  for (const auto& [e, c] : terms) {
    if (e.size() != arity) throw Error(ErrorCode::ArityMismatch, "term arity differs from series arity");
    if (c.is_zero() || !precision.covers(e.degree())) continue;
    s.terms_.emplace_hint(s.terms_.end(), e, c);
  }
  return s;
}

void Series::add_term(const MultiIndex& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Series::drop_above_precision() {
  if (precision_.is_exact()) return;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = precision_.covers(it->first.degree()) ? std::next(it) : terms_.erase(it);
  }
}

Scalar Series::coefficient(const MultiIndex& exps) const {
  if (exps.size() != arity_) throw Error(ErrorCode::ArityMismatch, "coefficient index arity");
  if (!precision_.covers(exps.degree())) {
    throw Error(ErrorCode::IndexOutOfRange,
                "coefficient of degree " + std::to_string(exps.degree()) + " is beyond " +
                    precision_.to_string());
  }
  auto it = terms_.find(exps);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar Series::constant_term() const {
  auto it = terms_.find(MultiIndex(arity_));
  return it == terms_.end() ? Scalar() : it->second;
}

unsigned Series::max_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

std::optional<std::pair<MultiIndex, Scalar>> Series::leading_term() const {
  if (terms_.empty()) return std::nullopt;
  return *terms_.begin();
}

Series Series::truncate(int degree) const {
  const Precision p = min(precision_, Precision::upto(degree));
  return from_terms(arity_, p, terms_);
}

Series Series::as_exact() const { return from_terms(arity_, Precision::exact(), terms_); }

Series& Series::operator+=(const Series& o) {
  require_same_arity(*this, o, "add");
  precision_ = min(precision_, o.precision_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  drop_above_precision();
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same_arity(*this, o, "sub");
  precision_ = min(precision_, o.precision_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  drop_above_precision();
  return *this;
}

Series& Series::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Series Series::operator-() const {
  Series r(*this);
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  require_same_arity(a, b, "mul");
  return multiply(a, b, min(a.precision(), b.precision()));
}

Series Series::pow(unsigned e) const {
  Series result = constant(arity_, Scalar(1), precision_);
  Series base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Series& a, const Series& b) {
  return a.arity_ == b.arity_ && a.precision_ == b.precision_ && a.terms_ == b.terms_;
}

std::string Series::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    // Pull a leading minus out of real or purely imaginary coefficients.
    bool negative = false;
    Scalar shown = c;
    if (!c.is_compound()) {
      const mpq_class& part = c.is_real() ? c.re() : c.im();
      if (sgn(part) < 0) {
        negative = true;
        shown = -c;
      }
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) mono << '*';
      any = true;
      mono << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) mono << '^' << e[i];
    }
    if (!any) {
      os << shown.to_string();
    } else if (shown.is_one()) {
      os << mono.str();
    } else {
      os << shown.to_string() << '*' << mono.str();
    }
  }
  return os.str();
}

std::string Series::to_string() const { return to_string(std::span<const std::string>()); }

bool FormalMap::is_pointed() const {
  return std::all_of(components.begin(), components.end(),
                     [](const Series& s) { return s.constant_term().is_zero(); });
}

namespace {

unsigned valuation_bound(const Series& s) {
  // Lower bound for the true order; large for exact zero.
  if (auto o = ord(s)) return *o;
  if (s.is_exact()) return 1u << 20;
  return static_cast<unsigned>(s.precision().degree() + 1);
}

}  // namespace

Series mul_tracking_valuation(const Series& a, const Series& b) {
  require_same_arity(a, b, "mul");
  if ((a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero())) {
    return Series(a.arity(), Precision::exact());
  }
  const Precision pa = a.precision().raised(valuation_bound(b));
  const Precision pb = b.precision().raised(valuation_bound(a));
  return multiply(a, b, min(pa, pb));
}

Series compose(const Series& f, const FormalMap& g) {
  if (g.size() != f.arity()) {
    throw Error(ErrorCode::ArityMismatch, "compose: outer series has " + std::to_string(f.arity()) +
                                              " variables but " + std::to_string(g.size()) +
                                              " components were supplied");
  }
  if (g.size() == 0) {
    throw Error(ErrorCode::ArityMismatch, "compose: empty substitution");
  }
  const std::size_t k = g.components.front().arity();
  Precision p = f.precision();
  for (const auto& c : g.components) {
    if (c.arity() != k) throw Error(ErrorCode::ArityMismatch, "compose: components differ in arity");
    p = min(p, c.precision());
  }
  if (!g.is_pointed()) {
    throw Error(ErrorCode::NotPointed, "compose: substituted map has a nonzero constant term");
  }

  // powers[i][e] = g_i^e truncated to p, built lazily.
  std::vector<std::vector<Series>> powers(g.size());
  auto power = [&](std::size_t i, unsigned e) -> const Series& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Series::constant(k, Scalar(1), Precision::exact()));
    while (cache.size() <= e) {
      cache.push_back(multiply(cache.back(), g.components[i], p));
    }
    return cache[e];
  };

  Series::Terms acc;
  for (const auto& [e, c] : f.terms()) {
    if (!p.covers(e.degree())) break;
    Series prod = Series::constant(k, c, p);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      prod = multiply(prod, power(i, e[i]), p);
      if (prod.is_zero()) break;
    }
    for (const auto& [pe, pc] : prod.terms()) {
      auto [it, inserted] = acc.try_emplace(pe, pc);
      if (!inserted) it->second += pc;
    }
  }
  return Series::from_terms(k, p, acc);
}

Series partial_derivative(const Series& f, std::size_t var) {
  if (var >= f.arity()) throw Error(ErrorCode::IndexOutOfRange, "derivative variable out of range");
  Series::Terms out;
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    MultiIndex d(e);
    d.set(var, e[var] - 1);
    out.emplace(d, c * Scalar(static_cast<long>(e[var])));
  }
  return Series::from_terms(f.arity(), f.precision().lowered(1), out);
}

std::optional<unsigned> ord(const Series& f) {
  auto lead = f.leading_term();
  if (!lead) return std::nullopt;
  return lead->first.degree();
}

std::optional<unsigned> ord_in_block(const Series& f, Block block) {
  std::optional<unsigned> best;
  for (const auto& [e, c] : f.terms()) {
    const unsigned d = e.degree_in(block.first, block.count);
    if (!best || d < *best) best = d;
  }
  return best;
}

Series conjugate(const Series& f) {
  Series::Terms out;
  for (const auto& [e, c] : f.terms()) out.emplace(e, c.conj());
  return Series::from_terms(f.arity(), f.precision(), out);
}

Series block_coefficient(const Series& f, Block block, const MultiIndex& alpha) {
  if (alpha.size() != block.count || block.first + block.count > f.arity()) {
    throw Error(ErrorCode::ArityMismatch, "block coefficient: index does not match block");
  }
  if (!f.precision().covers(alpha.degree())) {
    throw Error(ErrorCode::IndexOutOfRange, "block coefficient: |alpha| = " +
                                                std::to_string(alpha.degree()) + " exceeds " +
                                                f.precision().to_string());
  }
  Series::Terms out;
  for (const auto& [e, c] : f.terms()) {
    if (e.slice(block.first, block.count) == alpha) out.emplace(e.erase(block.first, block.count), c);
  }
  return Series::from_terms(f.arity() - block.count, f.precision().lowered(alpha.degree()), out);
}

Series restrict_to_zero(const Series& f, Block block) {
  if (block.first + block.count > f.arity()) {
    throw Error(ErrorCode::IndexOutOfRange, "restrict: block out of range");
  }
  Series::Terms out;
  for (const auto& [e, c] : f.terms()) {
    if (e.degree_in(block.first, block.count) == 0) out.emplace(e.erase(block.first, block.count), c);
  }
  return Series::from_terms(f.arity() - block.count, f.precision(), out);
}

Series embed(const Series& f, std::size_t new_arity, std::span<const std::size_t> targets) {
  if (targets.size() != f.arity()) throw Error(ErrorCode::ArityMismatch, "embed: target count");
  Series::Terms out;
  for (const auto& [e, c] : f.terms()) {
    MultiIndex r(new_arity);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (targets[j] >= new_arity) throw Error(ErrorCode::IndexOutOfRange, "embed: target index");
      r.set(targets[j], r[targets[j]] + e[j]);
    }
    auto [it, inserted] = out.try_emplace(r, c);
    if (!inserted) it->second += c;
  }
  return Series::from_terms(new_arity, f.precision(), out);
}

Series swap_blocks(const Series& f, Block a, Block b) {
  if (a.count != b.count) throw Error(ErrorCode::InvalidArgument, "swap: blocks differ in size");
  Series::Terms out;
  for (const auto& [e, c] : f.terms()) {
    MultiIndex r(e);
    for (std::size_t i = 0; i < a.count; ++i) {
      r.set(a.first + i, e[b.first + i]);
      r.set(b.first + i, e[a.first + i]);
    }
    out.emplace(r, c);
  }
  return Series::from_terms(f.arity(), f.precision(), out);
}

Series invert_unit(const Series& f, std::optional<int> degree) {
  const Scalar f0 = f.constant_term();
  if (f0.is_zero()) throw Error(ErrorCode::NotAUnit, "invert_unit: constant term is zero");
  const int D = required_degree(f, degree, "invert_unit");
  const Scalar inv0 = Scalar(1) / f0;
  const std::size_t k = f.arity();
  // f = f0 (1 + h) with h pointed; 1/(1+h) by r <- 1 - h r, one degree per pass.
  Series h = (f * inv0).truncate(D) - Series::constant(k, Scalar(1), Precision::exact());
  Series r = Series::constant(k, Scalar(1), Precision::upto(std::min(D, 0)));
  for (int d = 1; d <= D; ++d) {
    const Precision p = Precision::upto(d);
    r = Series::constant(k, Scalar(1), p) - multiply(h, with_precision(r, p), p);
  }
  return with_precision(r * inv0, Precision::upto(D));
}

Series exp_series(const Series& f, std::optional<int> degree) {
  if (!f.constant_term().is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "exp_series: argument must vanish at the origin");
  }
  const int D = required_degree(f, degree, "exp_series");
  const Precision p = Precision::upto(D);
  const Series g = f.truncate(D);
  Series term = Series::constant(f.arity(), Scalar(1), p);
  Series sum = term;
  for (int j = 1; j <= D; ++j) {
    term = multiply(term, g, p) * Scalar::rational(1, j);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

Series solve_implicit(const Series& rhs, std::optional<int> degree) {
  if (rhs.arity() < 1) throw Error(ErrorCode::ArityMismatch, "solve_implicit: rhs needs an unknown");
  const std::size_t k = rhs.arity() - 1;
  if (!rhs.constant_term().is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "solve_implicit: rhs(0,0) must vanish");
  }
  if (rhs.precision().covers(1)) {
    const Scalar lin = rhs.coefficient(MultiIndex::unit(rhs.arity(), k));
    if (!lin.is_zero()) {
      throw Error(ErrorCode::ImplicitRewriteRequired,
                  "solve_implicit: d rhs/du (0,0) = " + lin.to_string() +
                      " is nonzero; divide through by (1 - d rhs/du (0,0)) first");
    }
  }
  const int D = required_degree(rhs, degree, "solve_implicit");

  FormalMap args;
  for (std::size_t j = 0; j < k; ++j) args.components.push_back(Series::polynomial_variable(k, j));
  args.components.push_back(Series(k, Precision::exact()));

  // Each pass fixes one more degree of u: the error gains at least one order
  // because d rhs/du vanishes at the origin.
  Series u(k, Precision::upto(0));
  for (int d = 1; d <= D; ++d) {
    args.components.back() = with_precision(u, Precision::upto(d));
    u = compose(rhs.truncate(d), args);
  }
  return with_precision(u, Precision::upto(D));
}

Scalar evaluate(const Series& f, std::span<const Scalar> point) {
  if (point.size() != f.arity()) throw Error(ErrorCode::ArityMismatch, "evaluate: point dimension");
  std::vector<std::vector<Scalar>> powers(point.size(), std::vector<Scalar>{Scalar(1)});
  Scalar total;
  for (const auto& [e, c] : f.terms()) {
    Scalar term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
      if (e[i]) term *= pw[e[i]];
    }
    total += term;
  }
  return total;
}

}  // namespace crformal
