#include "leg/exact/ffelement.hpp"

namespace leg {

FFElement::FFElement(const RatFunc& a, const RatFunc& b, const ZPoly& modulus) : a_(a), b_(b), f_(modulus) {
  if (f_.is_zero() && !b_.is_zero()) throw std::domain_error("mu-component without an extension modulus");
}

FFElement FFElement::lifted(const ZPoly& f) const {
  if (has_extension() && f_ != f) throw std::domain_error("incompatible extension moduli");
  return FFElement(a_, b_, f);
}

ZPoly FFElement::common_modulus(const FFElement& x, const FFElement& y) {
  if (!x.has_extension()) return y.f_;
  if (!y.has_extension()) return x.f_;
  if (x.f_ != y.f_) throw std::domain_error("incompatible extension moduli");
  return x.f_;
}

FFElement operator+(const FFElement& x, const FFElement& y) {
  return FFElement(x.a_ + y.a_, x.b_ + y.b_, FFElement::common_modulus(x, y));
}

FFElement operator-(const FFElement& x, const FFElement& y) {
  return FFElement(x.a_ - y.a_, x.b_ - y.b_, FFElement::common_modulus(x, y));
}

FFElement operator*(const FFElement& x, const FFElement& y) {
  ZPoly f = FFElement::common_modulus(x, y);
  if (x.in_base()) return FFElement(x.a_ * y.a_, x.a_ * y.b_, f);
  if (y.in_base()) return FFElement(x.a_ * y.a_, x.b_ * y.a_, f);
  RatFunc a = x.a_ * y.a_ + x.b_ * y.b_ * RatFunc(f);
  RatFunc b = x.a_ * y.b_ + x.b_ * y.a_;
  return FFElement(a, b, f);
}

FFElement operator/(const FFElement& x, const FFElement& y) { return x * y.inv(); }

RatFunc FFElement::norm() const {
  if (b_.is_zero()) return a_ * a_;
  return a_ * a_ - b_ * b_ * RatFunc(f_);
}

RatFunc FFElement::trace() const { return a_ * RatFunc(2); }

FFElement FFElement::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (in_base()) return FFElement(a_.inv(), RatFunc(), f_);
  RatFunc n = norm().inv();
  return FFElement(a_ * n, -b_ * n, f_);
}

FFElement FFElement::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  FFElement r(RatFunc(1), RatFunc(), f_), b(*this);
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FFElement FFElement::derivative() const {
  if (b_.is_zero()) return FFElement(a_.derivative(), RatFunc(), f_);
  // D(b mu) = b' mu + b f'/(2 mu) = (b' + b f'/(2 f)) mu
  RatFunc fr(f_);
  RatFunc nb = b_.derivative() + b_ * RatFunc(f_.derivative()) / (RatFunc(2) * fr);
  return FFElement(a_.derivative(), nb, f_);
}

std::string FFElement::str(char var, const std::string& root) const {
  if (b_.is_zero()) return a_.str(var);
  std::string bs = "(" + b_.str(var) + ")*" + root;
  if (a_.is_zero()) return bs;
  return a_.str(var) + " + " + bs;
}

}  // namespace leg
