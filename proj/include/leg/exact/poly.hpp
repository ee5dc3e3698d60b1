#pragma once

// Dense univariate polynomials over exact rings.  Coefficients are stored in
// ascending degree; the zero polynomial has no coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace leg {

using Z = mpz_class;
using Q = mpq_class;

template <class R>
class DensePoly {
 public:
  using coeff_type = R;

  DensePoly() = default;
  DensePoly(const R& c) {
    if (!(c == R(0))) c_.push_back(c);
  }
  DensePoly(long c) : DensePoly(R(c)) {}
  DensePoly(int c) : DensePoly(R(c)) {}
  explicit DensePoly(std::vector<R> c) : c_(std::move(c)) { trim(); }
  DensePoly(std::initializer_list<R> c) : c_(c) { trim(); }

  static DensePoly x() { return DensePoly(std::vector<R>{R(0), R(1)}); }
  static DensePoly monomial(const R& c, int d) {
    if (c == R(0)) return {};
    std::vector<R> v(d + 1, R(0));
    v[d] = c;
    return DensePoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coeffs() const { return c_; }
  std::vector<R>& raw() { return c_; }

  R coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return R(0);
    return c_[i];
  }
  const R& operator[](int i) const { return c_.at(i); }
  const R& lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  void trim() {
    while (!c_.empty() && c_.back() == R(0)) c_.pop_back();
  }

  DensePoly& operator+=(const DensePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  DensePoly& operator-=(const DensePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  DensePoly& operator*=(const DensePoly& o) {
    *this = *this * o;
    return *this;
  }
  DensePoly operator-() const {
    DensePoly r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
  }

  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == R(0)) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return DensePoly(std::move(r));
  }
  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

  DensePoly scaled(const R& s) const {
    if (s == R(0)) return {};
    DensePoly r(*this);
    for (auto& a : r.c_) a *= s;
    return r;
  }

  DensePoly shifted(int k) const {
    if (is_zero()) return {};
    std::vector<R> v(k, R(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return DensePoly(std::move(v));
  }

  // x^d p(1/x); d defaults to deg p.
  DensePoly reversed(int d = -1) const {
    if (d < 0) d = degree();
    std::vector<R> v(d + 1, R(0));
    for (int i = 0; i <= degree(); ++i) v[d - i] = c_[i];
    return DensePoly(std::move(v));
  }

  DensePoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * R(static_cast<long>(i));
    return DensePoly(std::move(v));
  }

  template <class S>
  S eval(const S& x) const {
    S acc = S(0);
    for (int i = degree(); i >= 0; --i) acc = acc * x + S(c_[i]);
    return acc;
  }

  DensePoly compose(const DensePoly& g) const {
    DensePoly acc;
    for (int i = degree(); i >= 0; --i) acc = acc * g + DensePoly(c_[i]);
    return acc;
  }

  DensePoly pow(unsigned e) const {
    DensePoly r(R(1)), b(*this);
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

 private:
  std::vector<R> c_;
};

using ZPoly = DensePoly<Z>;
using QPoly = DensePoly<Q>;
using ExactPoly = QPoly;

// Conversions and integer content.
ZPoly to_zpoly(const QPoly& p);  // requires integral coefficients
QPoly to_qpoly(const ZPoly& p);
Z content(const ZPoly& p);  // nonnegative gcd of coefficients
// Rational c with p/c primitive in Z[x] and lc(p/c) > 0 (c carries the sign).
Q content(const QPoly& p);
ZPoly primitive_part(const ZPoly& p);  // lc > 0
ZPoly primitive_part(const QPoly& p);  // lc > 0
QPoly monic(const QPoly& p);

// Division.
std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);
// Exact division in Z[x]; throws std::domain_error if b does not divide a.
ZPoly exact_div(const ZPoly& a, const ZPoly& b);
bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient = nullptr);
ZPoly exact_div_scalar(const ZPoly& a, const Z& s);

// GCD over Q[x], returned as a primitive integer polynomial with positive
// leading coefficient (gcd(0,0) = 0).
ZPoly gcd(const ZPoly& a, const ZPoly& b);
QPoly gcd(const QPoly& a, const QPoly& b);

// Multiplicity of the (nonconstant) factor f in a, and a / f^k.
int multiplicity(const ZPoly& f, const ZPoly& a, ZPoly* cofactor = nullptr);

struct SquarefreeFactor {
  ZPoly factor;  // primitive, lc > 0, squarefree
  int multiplicity;
};
// Yun's algorithm; the product of factor^multiplicity equals p up to a rational constant.
std::vector<SquarefreeFactor> squarefree_decompose(const QPoly& p);
std::vector<SquarefreeFactor> squarefree_decompose(const ZPoly& p);

// Irreducible factorization over Q (Zassenhaus).  Factors primitive with lc > 0,
// sorted by (degree, coefficients).
struct Factorization {
  Q unit;  // rational constant
  std::vector<SquarefreeFactor> factors;
};
Factorization factor(const QPoly& p);
Factorization factor(const ZPoly& p);
bool is_irreducible(const ZPoly& p);

// Eisenstein criterion at prime p.
bool eisenstein(const ZPoly& f, const Z& p);

// Exact square root in Q[x]; returns false if p is not a square.
bool poly_sqrt(const QPoly& p, QPoly& root);

int max_coeff_bits(const ZPoly& p);

// Rendering and parsing.  Variables are single letters; coefficients exact.
std::string to_string(const ZPoly& p, char var = 'l');
std::string to_string(const QPoly& p, char var = 'l');
// Parses sums/products/powers of integers, rationals "a/b" and the variable.
QPoly parse_poly(const std::string& s, char var = 'l');

// Canonical total order used for map keys (degree, then coefficients).
bool poly_less(const ZPoly& a, const ZPoly& b);

}  // namespace leg
