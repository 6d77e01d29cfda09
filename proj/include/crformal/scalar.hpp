#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace crformal {

/// Exact Gaussian rational re + im*i with arbitrary-precision parts.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  /// num/den with den != 0.
  static Scalar rational(long num, long den = 1);
  static Scalar gaussian(long re_num, long im_num, long den = 1);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws Error(InvalidArgument) on division by zero.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Scalar pow(unsigned e) const;

  /// Canonical text: "3/2", "-i", "2*i", "(1+1/2*i)".
  std::string to_string() const;
  /// True when to_string() needs parentheses inside a product.
  bool is_compound() const { return sgn(re_) != 0 && sgn(im_) != 0; }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace crformal
