#include "leg/exact/ratfunc.hpp"

namespace leg {

namespace {

// Splits c*p with p in Q[x] into an integer polynomial and a positive integer denominator.
ZPoly clear_denominators(const QPoly& p, Z& den) {
  den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Z> v(p.coeffs().size());
  for (size_t i = 0; i < v.size(); ++i) {
    Q t = p.coeffs()[i] * den;
    v[i] = t.get_num();
  }
  return ZPoly(std::move(v));
}

}  // namespace

RatFunc::RatFunc(const Q& c) : num_(c.get_num()), den_(c.get_den()) {}

RatFunc::RatFunc(const QPoly& p) {
  Z d;
  num_ = clear_denominators(p, d);
  den_ = ZPoly(d);
  normalize();
}

RatFunc::RatFunc(const ZPoly& n, const ZPoly& d) : num_(n), den_(d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

RatFunc::RatFunc(const QPoly& n, const QPoly& d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  Z dn, dd;
  ZPoly nz = clear_denominators(n, dn);
  ZPoly dz = clear_denominators(d, dd);
  num_ = nz.scaled(dd);
  den_ = dz.scaled(dn);
  normalize();
}

RatFunc RatFunc::parse(const std::string& s, char var) {
  // Split on a top-level '/' followed by a parenthesized or non-numeric denominator.
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      size_t j = i + 1;
      while (j < s.size() && s[j] == ' ') ++j;
      if (j < s.size() && s[j] == '(') {
        return RatFunc(parse_poly(s.substr(0, i), var), parse_poly(s.substr(i + 1), var));
      }
    }
  }
  return RatFunc(parse_poly(s, var));
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = ZPoly(Z(1));
    return;
  }
  if (den_.degree() > 0 && num_.degree() >= 0) {
    ZPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  Z c = content(num_);
  Z cd = content(den_);
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (den_.lc() < 0) c = -c;
  if (c != 1) {
    num_ = exact_div_scalar(num_, c);
    den_ = exact_div_scalar(den_, c);
  }
}

Q RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  if (num_.is_zero()) return Q(0);
  Q r(num_.lc(), den_.lc());
  r.canonicalize();
  return r;
}

QPoly RatFunc::as_poly() const {
  if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial");
  return to_qpoly(num_).scaled(Q(1) / Q(den_.lc()));
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

RatFunc RatFunc::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  if (r.num_.is_zero()) r.den_ = ZPoly(Z(1));
  return r;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::compose(const QPoly& p) const {
  return RatFunc(to_qpoly(num_).compose(p), to_qpoly(den_).compose(p));
}

int RatFunc::ord_at(const ZPoly& pi) const {
  if (is_zero()) throw std::domain_error("valuation of zero undefined");
  return multiplicity(pi, num_) - multiplicity(pi, den_);
}

int RatFunc::ord_inf() const {
  if (is_zero()) throw std::domain_error("valuation of zero undefined");
  return den_.degree() - num_.degree();
}

std::string RatFunc::str(char var) const {
  if (den_ == ZPoly(Z(1))) return to_string(num_, var);
  std::string n = to_string(num_, var), d = to_string(den_, var);
  if (num_.coeffs().size() > 1 && std::count_if(num_.coeffs().begin(), num_.coeffs().end(), [](const Z& c) { return c != 0; }) > 1)
    n = "(" + n + ")";
  return n + "/(" + d + ")";
}

}  // namespace leg
