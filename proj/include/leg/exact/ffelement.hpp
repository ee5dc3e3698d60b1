#pragma once

// Elements a + b*mu of Q(l)(mu), mu^2 = f(l).  A zero modulus means the
// element lives in Q(l) itself.

#include <string>

#include "leg/exact/ratfunc.hpp"

namespace leg {

class FFElement {
 public:
  FFElement() = default;
  FFElement(long c) : a_(c) {}
  FFElement(int c) : a_(c) {}
  FFElement(const RatFunc& a) : a_(a) {}
  FFElement(const RatFunc& a, const RatFunc& b, const ZPoly& modulus);

  static FFElement mu(const ZPoly& f) { return FFElement(RatFunc(), RatFunc(1), f); }
  static FFElement lambda(const ZPoly& f = {}) { return FFElement(RatFunc::lambda(), RatFunc(), f); }

  const RatFunc& a() const { return a_; }
  const RatFunc& b() const { return b_; }
  const ZPoly& modulus() const { return f_; }
  bool has_extension() const { return !f_.is_zero(); }
  bool in_base() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  // Same value viewed in Q(l)(sqrt f).
  FFElement lifted(const ZPoly& f) const;

  FFElement operator-() const { return FFElement(-a_, -b_, f_); }
  friend FFElement operator+(const FFElement& x, const FFElement& y);
  friend FFElement operator-(const FFElement& x, const FFElement& y);
  friend FFElement operator*(const FFElement& x, const FFElement& y);
  friend FFElement operator/(const FFElement& x, const FFElement& y);
  FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
  FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
  FFElement& operator*=(const FFElement& o) { return *this = *this * o; }
  FFElement& operator/=(const FFElement& o) { return *this = *this / o; }
  // Equality of values (the modulus of an element of Q(l) is ignored).
  friend bool operator==(const FFElement& x, const FFElement& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const FFElement& x, const FFElement& y) { return !(x == y); }

  FFElement conj() const { return FFElement(a_, -b_, f_); }
  RatFunc norm() const;   // a^2 - b^2 f
  RatFunc trace() const;  // 2a
  FFElement inv() const;
  FFElement pow(int e) const;
  // d/dl with D mu = f'/(2 mu).
  FFElement derivative() const;

  std::string str(char var = 'l', const std::string& root = "mu") const;

 private:
  static ZPoly common_modulus(const FFElement& x, const FFElement& y);
  RatFunc a_, b_;
  ZPoly f_;
};

}  // namespace leg
