#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace crformal {

/// Exponent vector in N^k, k <= kMaxVariables.
///
/// The default ordering (operator<) is graded lexicographic: total degree
/// first, ties broken by pure lex (the first differing entry decides, smaller
/// entry is smaller). Pure lex is available through lex_less().
class MultiIndex {
 public:
  static constexpr std::size_t kMaxVariables = 16;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t size);
  MultiIndex(std::initializer_list<unsigned> exps);
  explicit MultiIndex(std::span<const unsigned> exps);

  static MultiIndex unit(std::size_t size, std::size_t index);

  std::size_t size() const { return size_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned value);
  unsigned degree() const { return degree_; }
  bool is_zero() const { return degree_ == 0; }

  /// Sum of the entries in [first, first+count).
  unsigned degree_in(std::size_t first, std::size_t count) const;

  /// Componentwise <=.
  bool divides(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& o) const;
  /// Requires divides(o) in reverse, i.e. o <= *this componentwise.
  MultiIndex operator-(const MultiIndex& o) const;

  /// Entries [first, first+count) as a new index.
  MultiIndex slice(std::size_t first, std::size_t count) const;
  /// Drop the entries [first, first+count).
  MultiIndex erase(std::size_t first, std::size_t count) const;
  /// Insert `inner` at position `at`.
  MultiIndex insert(std::size_t at, const MultiIndex& inner) const;

  std::vector<unsigned> to_vector() const;

  /// Product of factorials of the entries.
  unsigned long long factorial() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b);
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

  /// "(1,0,2)".
  std::string to_string() const;

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint8_t size_ = 0;
  std::uint32_t degree_ = 0;
};

bool lex_less(const MultiIndex& a, const MultiIndex& b);
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of the given size with total degree exactly `degree`,
/// ascending in graded-lex (= lex within a degree) order.
std::vector<MultiIndex> indices_of_degree(std::size_t size, unsigned degree);
/// All multi-indices of total degree <= max_degree, graded-lex ascending.
std::vector<MultiIndex> indices_up_to(std::size_t size, unsigned max_degree);

/// prod_i binom(a_i, b_i); requires b <= a componentwise.
unsigned long long multi_binomial(const MultiIndex& a, const MultiIndex& b);

}  // namespace crformal
