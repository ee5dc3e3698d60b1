#pragma once

// Rational functions in one variable over Q.  Stored as num/den in Z[l] with
// gcd(num, den) = 1 (polynomial and integer content) and lc(den) > 0.

#include <string>

#include "leg/exact/poly.hpp"

namespace leg {

class RatFunc {
 public:
  RatFunc() : den_(Z(1)) {}
  RatFunc(long c) : RatFunc(Q(c)) {}
  RatFunc(int c) : RatFunc(Q(c)) {}
  RatFunc(const Q& c);
  RatFunc(const ZPoly& p) : num_(p), den_(Z(1)) { normalize(); }
  RatFunc(const QPoly& p);
  RatFunc(const ZPoly& n, const ZPoly& d);
  RatFunc(const QPoly& n, const QPoly& d);

  static RatFunc lambda() { return RatFunc(ZPoly::x()); }
  static RatFunc parse(const std::string& s, char var = 'l');  // "p" or "p / q"

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }
  Q constant_value() const;  // requires is_constant()
  QPoly as_poly() const;     // requires is_polynomial()

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inv() const;
  RatFunc pow(int e) const;
  RatFunc derivative() const;
  // Substitution l -> p(l) for a polynomial p.
  RatFunc compose(const QPoly& p) const;

  // Order at the place given by an irreducible polynomial, and at infinity.
  int ord_at(const ZPoly& pi) const;
  int ord_inf() const;
  int height() const { return std::max(num_.degree(), den_.degree()); }

  template <class S>
  S eval(const S& x) const {
    return num_.eval(x) / den_.eval(x);
  }

  std::string str(char var = 'l') const;

 private:
  void normalize();
  ZPoly num_, den_;
};

}  // namespace leg
