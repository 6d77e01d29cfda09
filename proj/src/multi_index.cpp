#include <crformal/error.hpp>
#include <crformal/multi_index.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace crformal {

namespace {

void check_size(std::size_t size) {
  if (size > MultiIndex::kMaxVariables) {
    throw Error(ErrorCode::IndexOutOfRange,
                "at most " + std::to_string(MultiIndex::kMaxVariables) + " variables are supported");
  }
}

void check_exponent(unsigned long value) {
  if (value > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::DegreeOverflow, "exponent exceeds 65535");
  }
}

}  // namespace

MultiIndex::MultiIndex(std::size_t size) {
  check_size(size);
  size_ = static_cast<std::uint8_t>(size);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> exps)
    : MultiIndex(std::span<const unsigned>(exps.begin(), exps.size())) {}

MultiIndex::MultiIndex(std::span<const unsigned> exps) : MultiIndex(exps.size()) {
  for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

MultiIndex MultiIndex::unit(std::size_t size, std::size_t index) {
  MultiIndex m(size);
  m.set(index, 1);
  return m;
}

void MultiIndex::set(std::size_t i, unsigned value) {
  if (i >= size_) throw Error(ErrorCode::IndexOutOfRange, "multi-index position out of range");
  check_exponent(value);
  degree_ = degree_ - exps_[i] + value;
  exps_[i] = static_cast<std::uint16_t>(value);
}

unsigned MultiIndex::degree_in(std::size_t first, std::size_t count) const {
  unsigned d = 0;
  for (std::size_t i = first; i < first + count; ++i) d += exps_[i];
  return d;
}

bool MultiIndex::divides(const MultiIndex& other) const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < size_; ++i) {
    const unsigned long v = static_cast<unsigned long>(exps_[i]) + o.exps_[i];
    check_exponent(v);
    r.exps_[i] = static_cast<std::uint16_t>(v);
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < size_; ++i) {
    if (o.exps_[i] > exps_[i]) {
      throw Error(ErrorCode::InvalidArgument, "multi-index difference would be negative");
    }
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - o.exps_[i]);
  }
  r.degree_ = degree_ - o.degree_;
  return r;
}

MultiIndex MultiIndex::slice(std::size_t first, std::size_t count) const {
  MultiIndex r(count);
  for (std::size_t i = 0; i < count; ++i) r.set(i, exps_[first + i]);
  return r;
}

MultiIndex MultiIndex::erase(std::size_t first, std::size_t count) const {
  MultiIndex r(size_ - count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i >= first && i < first + count) continue;
    r.set(k++, exps_[i]);
  }
  return r;
}

MultiIndex MultiIndex::insert(std::size_t at, const MultiIndex& inner) const {
  MultiIndex r(size_ + inner.size_);
  std::size_t k = 0;
  for (std::size_t i = 0; i < at; ++i) r.set(k++, exps_[i]);
  for (std::size_t i = 0; i < inner.size_; ++i) r.set(k++, inner.exps_[i]);
  for (std::size_t i = at; i < size_; ++i) r.set(k++, exps_[i]);
  return r;
}

std::vector<unsigned> MultiIndex::to_vector() const {
  return std::vector<unsigned>(exps_.begin(), exps_.begin() + size_);
}

unsigned long long MultiIndex::factorial() const {
  unsigned long long f = 1;
  for (std::size_t i = 0; i < size_; ++i) {
    for (unsigned k = 2; k <= exps_[i]; ++k) f *= k;
  }
  return f;
}

bool operator==(const MultiIndex& a, const MultiIndex& b) {
  return a.size_ == b.size_ && a.degree_ == b.degree_ &&
         std::equal(a.exps_.begin(), a.exps_.begin() + a.size_, b.exps_.begin());
}

bool operator<(const MultiIndex& a, const MultiIndex& b) { return graded_lex_less(a, b); }

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return lex_less(a, b);
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) os << ',';
    os << exps_[i];
  }
  os << ')';
  return os.str();
}

namespace {

void fill_degree(std::size_t pos, unsigned remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur.set(pos, remaining);
    out.push_back(cur);
    cur.set(pos, 0);
    return;
  }
  // Ascending lex: smaller entries at the front come first.
  for (unsigned v = 0; v <= remaining; ++v) {
    cur.set(pos, v);
    fill_degree(pos + 1, remaining - v, cur, out);
  }
  cur.set(pos, 0);
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(std::size_t size, unsigned degree) {
  std::vector<MultiIndex> out;
  if (size == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  MultiIndex cur(size);
  fill_degree(0, degree, cur, out);
  return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t size, unsigned max_degree) {
  std::vector<MultiIndex> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    auto level = indices_of_degree(size, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

unsigned long long multi_binomial(const MultiIndex& a, const MultiIndex& b) {
  unsigned long long r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const unsigned n = a[i];
    const unsigned k = b[i];
    if (k > n) return 0;
    unsigned long long c = 1;
    for (unsigned j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    r *= c;
  }
  return r;
}

}  // namespace crformal
