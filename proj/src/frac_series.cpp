#include <crformal/error.hpp>
#include <crformal/frac_series.hpp>

#include <algorithm>

namespace crformal {

std::optional<Series> divide_series(const Series& g, const Series& f, std::optional<int> degree) {
  if (g.arity() != f.arity()) throw Error(ErrorCode::ArityMismatch, "divide: arity mismatch");
  const auto lead = f.leading_term();
  if (!lead) throw Error(ErrorCode::DivisionUncertifiable, "divide: divisor is zero at truncation");
  const auto& [mu, c] = *lead;
  const unsigned k = mu.degree();

  Precision p = min(g.precision(), f.precision());
  if (degree) p = min(p, Precision::upto(*degree + static_cast<int>(k)));
  const Precision qp = p.lowered(k);
  const unsigned poly_bound = g.max_degree();

  Series rem = Series::from_terms(g.arity(), p, g.terms());
  Series::Terms quotient;
  const Series fp = Series::from_terms(f.arity(), p, f.terms());
  while (auto lt = rem.leading_term()) {
    const auto& [e, a] = *lt;
    if (!mu.divides(e)) return std::nullopt;
    const MultiIndex t = e - mu;
    if (p.is_exact() && t.degree() + k > poly_bound) {
      throw Error(ErrorCode::DegreeRequired,
                  "divide: the quotient of these polynomials is not a polynomial; give a degree");
    }
    const Scalar q = a / c;
    quotient.emplace(t, q);
    rem -= Series::monomial(t, q, Precision::exact()) * fp;
  }
  return Series::from_terms(g.arity(), qp, quotient);
}

FracSeries::FracSeries(Series numerator) : num_(std::move(numerator)) {}

FracSeries FracSeries::quotient(Series numerator, const Series& denominator) {
  if (numerator.arity() != denominator.arity()) {
    throw Error(ErrorCode::ArityMismatch, "fraction: arity mismatch");
  }
  if (denominator.is_zero()) {
    throw Error(ErrorCode::DivisionUncertifiable, "fraction: denominator is zero at truncation");
  }
  FracSeries r(std::move(numerator));
  r.multiply_denominator(denominator, 1);
  return r;
}

void FracSeries::absorb_factor(Series base, unsigned exponent) {
  if (exponent == 0) return;
  for (auto& f : factors_) {
    if (f.base == base) {
      f.exponent += exponent;
      return;
    }
  }
  factors_.push_back(Factor{std::move(base), exponent});
}

void FracSeries::multiply_denominator(const Series& base, unsigned exponent) {
  const auto lead = base.leading_term();
  const auto& [mu, c] = *lead;
  num_ *= Scalar(1) / c.pow(exponent);
  if (!base.is_exact() || mu.is_zero()) {
    Series normalized = base * (Scalar(1) / c);
    if (normalized.is_exact() && normalized.term_count() == 1 && mu.is_zero()) return;  // constant 1
    absorb_factor(std::move(normalized), exponent);
    return;
  }
  // Largest monomial dividing every term.
  MultiIndex g = mu;
  for (const auto& [e, v] : base.terms()) {
    for (std::size_t i = 0; i < g.size(); ++i) g.set(i, std::min(g[i], e[i]));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i]) absorb_factor(Series::polynomial_variable(base.arity(), i), g[i] * exponent);
  }
  Series::Terms rest;
  for (const auto& [e, v] : base.terms()) rest.emplace(e - g, v / c);
  if (rest.size() > 1) absorb_factor(Series::from_terms(base.arity(), Precision::exact(), rest), exponent);
}

Series FracSeries::denominator() const {
  Series d = Series::polynomial_constant(arity(), 1);
  for (const auto& f : factors_) d = mul_tracking_valuation(d, f.base.pow(f.exponent));
  return d;
}

unsigned FracSeries::denominator_order() const {
  unsigned k = 0;
  for (const auto& f : factors_) k += f.exponent * ord(f.base).value_or(0);
  return k;
}

Precision FracSeries::certified_precision() const {
  Precision p = num_.precision();
  for (const auto& f : factors_) p = min(p, f.base.precision());
  return p.lowered(denominator_order());
}

std::optional<Series> FracSeries::to_series(std::optional<int> degree) const {
  if (factors_.empty()) {
    return degree ? num_.truncate(*degree) : num_;
  }
  return divide_series(num_, denominator(), degree);
}

FracSeries FracSeries::operator-() const {
  FracSeries r(*this);
  r.num_ = -r.num_;
  return r;
}

namespace {

using Factors = std::vector<FracSeries::Factor>;

unsigned exponent_of(const Factors& fs, const Series& base) {
  for (const auto& f : fs) {
    if (f.base == base) return f.exponent;
  }
  return 0;
}

Factors lcm(const Factors& a, const Factors& b) {
  Factors out = a;
  for (const auto& f : b) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.base == f.base; });
    if (it == out.end()) {
      out.push_back(f);
    } else {
      it->exponent = std::max(it->exponent, f.exponent);
    }
  }
  return out;
}

/// x's numerator multiplied by common/x.denominator.
Series lift(const FracSeries& x, const Factors& common) {
  Series n = x.numerator();
  for (const auto& f : common) {
    const unsigned missing = f.exponent - exponent_of(x.factors(), f.base);
    if (missing) n = mul_tracking_valuation(n, f.base.pow(missing));
  }
  return n;
}

}  // namespace

FracSeries operator+(const FracSeries& a, const FracSeries& b) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::ArityMismatch, "fraction add: arity");
  if (a.factors_.empty() && b.factors_.empty()) return FracSeries(a.num_ + b.num_);
  FracSeries r;
  r.factors_ = lcm(a.factors_, b.factors_);
  r.num_ = lift(a, r.factors_) + lift(b, r.factors_);
  return r;
}

FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }

FracSeries operator*(const FracSeries& a, const FracSeries& b) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::ArityMismatch, "fraction mul: arity");
  FracSeries r(mul_tracking_valuation(a.num_, b.num_));
  r.factors_ = a.factors_;
  for (const auto& f : b.factors_) r.absorb_factor(f.base, f.exponent);
  return r;
}

FracSeries operator/(const FracSeries& a, const FracSeries& b) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::ArityMismatch, "fraction div: arity");
  if (b.num_.is_zero()) {
    throw Error(ErrorCode::DivisionUncertifiable,
                "division by a fraction that is zero at " + b.num_.precision().to_string());
  }
  FracSeries r(mul_tracking_valuation(a.num_, b.denominator()));
  r.factors_ = a.factors_;
  r.multiply_denominator(b.num_, 1);
  return r;
}

bool operator==(const FracSeries& a, const FracSeries& b) {
  if (a.arity() != b.arity()) return false;
  const Factors common = lcm(a.factors_, b.factors_);
  const Series la = lift(a, common);
  const Series lb = lift(b, common);
  const Precision p = min(la.precision(), lb.precision());
  if (p.is_exact()) return la == lb;
  return la.truncate(p.degree()) == lb.truncate(p.degree());
}

std::string FracSeries::to_string(std::span<const std::string> names) const {
  const std::string n = num_.to_string(names);
  if (factors_.empty()) return n;
  std::string d;
  for (const auto& f : factors_) {
    if (!d.empty()) d += "*";
    d += "(" + f.base.to_string(names) + ")";
    if (f.exponent > 1) d += "^" + std::to_string(f.exponent);
  }
  return "(" + n + ")/" + d;
}

}  // namespace crformal
