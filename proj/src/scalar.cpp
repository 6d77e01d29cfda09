#include <crformal/error.hpp>
#include <crformal/scalar.hpp>

#include <sstream>

namespace crformal {

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q, mpq_class(0));
}

Scalar Scalar::gaussian(long re_num, long im_num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  mpq_class re(re_num, den), im(im_num, den);
  re.canonicalize();
  im.canonicalize();
  return Scalar(re, im);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero scalar");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar result(1);
  Scalar base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) {
    os << re_;
    return os.str();
  }
  auto imag_part = [](const mpq_class& v, bool leading) {
    std::ostringstream s;
    if (v == 1) {
      s << (leading ? "i" : "+i");
    } else if (v == -1) {
      s << "-i";
    } else {
      if (!leading && sgn(v) > 0) s << '+';
      s << v << "*i";
    }
    return s.str();
  };
  if (!has_re) return imag_part(im_, true);
  os << '(' << re_ << imag_part(im_, false) << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace crformal
