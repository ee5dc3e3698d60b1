#include "leg/exact/poly.hpp"

#include <cctype>
#include <sstream>

#include "modp.hpp"

namespace leg {

ZPoly to_zpoly(const QPoly& p) {
  std::vector<Z> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (c.get_den() != 1) throw std::domain_error("polynomial has non-integral coefficients");
    v.push_back(c.get_num());
  }
  return ZPoly(std::move(v));
}

QPoly to_qpoly(const ZPoly& p) {
  std::vector<Q> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return QPoly(std::move(v));
}

Z content(const ZPoly& p) {
  Z g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Q content(const QPoly& p) {
  if (p.is_zero()) return Q(0);
  Z num = 0, den = 1;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Q r(num, den);
  r.canonicalize();
  if (p.lc() < 0) r = -r;
  return r;
}

ZPoly primitive_part(const ZPoly& p) {
  if (p.is_zero()) return p;
  Z c = content(p);
  if (p.lc() < 0) c = -c;
  if (c == 1) return p;
  return exact_div_scalar(p, c);
}

ZPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return {};
  Q c = content(p);
  std::vector<Z> v;
  v.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) {
    Q t = a / c;
    v.push_back(t.get_num());
  }
  return ZPoly(std::move(v));
}

QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  Q inv = 1 / p.lc();
  return p.scaled(inv);
}

std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly(), a};
  std::vector<Q> r = a.coeffs();
  std::vector<Q> q(a.degree() - b.degree() + 1);
  const int db = b.degree();
  Q inv = 1 / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Q c = r[i] * inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs()[j];
  }
  r.resize(db);
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

ZPoly exact_div_scalar(const ZPoly& a, const Z& s) {
  std::vector<Z> v(a.coeffs().size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!mpz_divisible_p(a.coeffs()[i].get_mpz_t(), s.get_mpz_t()))
      throw std::domain_error("inexact scalar division");
    mpz_divexact(v[i].get_mpz_t(), a.coeffs()[i].get_mpz_t(), s.get_mpz_t());
  }
  return ZPoly(std::move(v));
}

bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) {
    if (quotient) *quotient = ZPoly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<Z> r = a.coeffs();
  std::vector<Z> q(a.degree() - b.degree() + 1);
  const int db = b.degree();
  const Z& lb = b.lc();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), lb.get_mpz_t())) return false;
    Z c;
    mpz_divexact(c.get_mpz_t(), r[i].get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), b.coeffs()[j].get_mpz_t());
    q[i - db] = std::move(c);
  }
  for (int i = 0; i < db; ++i)
    if (r[i] != 0) return false;
  if (quotient) *quotient = ZPoly(std::move(q));
  return true;
}

ZPoly exact_div(const ZPoly& a, const ZPoly& b) {
  ZPoly q;
  if (!divides(b, a, &q)) throw std::domain_error("inexact polynomial division");
  return q;
}

namespace {

Z sym_mod(const Z& x, const Z& m) {
  Z r = x % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.is_zero()) return primitive_part(b0);
  if (b0.is_zero()) return primitive_part(a0);
  ZPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() == 0 || b.degree() == 0) return ZPoly(Z(1));
  if (a == b) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  {
    ZPoly q;
    if (divides(b, a, &q)) return b;
  }
  Z g;
  mpz_gcd(g.get_mpz_t(), a.lc().get_mpz_t(), b.lc().get_mpz_t());
  int best = b.degree() + 1;
  std::vector<Z> acc;
  Z M = 0;
  std::vector<Z> prev;
  for (size_t i = 0;; ++i) {
    modp::Field F{modp::nth_prime(i)};
    const unsigned long p = static_cast<unsigned long>(F.p);
    if (mpz_divisible_ui_p(a.lc().get_mpz_t(), p) || mpz_divisible_ui_p(b.lc().get_mpz_t(), p)) continue;
    modp::PolyP gp = modp::gcd(modp::reduce(a, F), modp::reduce(b, F), F);
    const int d = modp::deg(gp);
    if (d == 0) return ZPoly(Z(1));
    if (d > best) continue;
    Z gz = g % p;
    if (gz < 0) gz += p;
    gp = modp::scale(gp, gz.get_ui(), F);
    if (d < best) {
      best = d;
      acc.assign(d + 1, Z(0));
      for (int k = 0; k <= d; ++k) acc[k] = static_cast<unsigned long>(gp[k]);
      M = p;
      prev.clear();
      continue;
    }
    // CRT: x = acc + M * ((gp - acc) * M^{-1} mod p)
    Z Minv;
    Z pz(p);
    mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), pz.get_mpz_t());
    for (int k = 0; k <= d; ++k) {
      Z t = (Z(static_cast<unsigned long>(gp[k])) - acc[k]) % pz;
      if (t < 0) t += pz;
      t = (t * Minv) % pz;
      acc[k] += M * t;
    }
    M *= pz;
    std::vector<Z> cand(d + 1);
    for (int k = 0; k <= d; ++k) cand[k] = sym_mod(acc[k], M);
    if (cand == prev) {
      ZPoly h = primitive_part(ZPoly(cand));
      if (divides(h, a) && divides(h, b)) return h;
    }
    prev = std::move(cand);
  }
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  return to_qpoly(gcd(primitive_part(a), primitive_part(b)));
}

int multiplicity(const ZPoly& f, const ZPoly& a, ZPoly* cofactor) {
  if (f.degree() < 1) throw std::domain_error("multiplicity of a constant factor");
  if (a.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
  int k = 0;
  ZPoly cur = a, q;
  while (divides(f, cur, &q)) {
    cur = std::move(q);
    ++k;
  }
  if (cofactor) *cofactor = std::move(cur);
  return k;
}

std::vector<SquarefreeFactor> squarefree_decompose(const ZPoly& p0) {
  if (p0.is_zero()) throw std::domain_error("squarefree decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  ZPoly a = primitive_part(p0);
  if (a.degree() < 1) return out;
  ZPoly da = a.derivative();
  ZPoly c = gcd(a, da);
  ZPoly w = exact_div(a, c);
  ZPoly y = exact_div(da, c);
  ZPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    ZPoly g = gcd(w, z);
    if (g.degree() > 0) out.push_back({g, i});
    w = exact_div(w, g);
    y = exact_div(z, g);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

std::vector<SquarefreeFactor> squarefree_decompose(const QPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree decomposition of the zero polynomial");
  return squarefree_decompose(primitive_part(p));
}

bool eisenstein(const ZPoly& f, const Z& p) {
  if (f.degree() < 1) return false;
  if (mpz_divisible_p(f.lc().get_mpz_t(), p.get_mpz_t())) return false;
  for (int i = 0; i < f.degree(); ++i)
    if (!mpz_divisible_p(f.coeffs()[i].get_mpz_t(), p.get_mpz_t())) return false;
  Z p2 = p * p;
  return !mpz_divisible_p(f.coeffs()[0].get_mpz_t(), p2.get_mpz_t());
}

bool poly_sqrt(const QPoly& p, QPoly& root) {
  if (p.is_zero()) {
    root = QPoly();
    return true;
  }
  if (p.degree() % 2) return false;
  const Q& lead = p.lc();
  if (lead < 0) return false;
  Z rn, rd;
  if (!mpz_perfect_square_p(lead.get_num_mpz_t()) || !mpz_perfect_square_p(lead.get_den_mpz_t())) return false;
  mpz_sqrt(rn.get_mpz_t(), lead.get_num_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), lead.get_den_mpz_t());
  const int n = p.degree() / 2;
  std::vector<Q> s(n + 1);
  s[n] = Q(rn, rd);
  s[n].canonicalize();
  Q two_lead = 2 * s[n];
  for (int k = 1; k <= n; ++k) {
    // coefficient of x^{2n-k}
    Q acc = p.coeff(2 * n - k);
    for (int i = n - k + 1; i < n; ++i) {
      int j = 2 * n - k - i;
      if (j >= n - k + 1 && j <= n - 1) acc -= s[i] * s[j];
    }
    s[n - k] = acc / two_lead;
  }
  QPoly r(std::move(s));
  if (r * r != p) return false;
  root = r;
  return true;
}

int max_coeff_bits(const ZPoly& p) {
  size_t b = 0;
  for (const auto& c : p.coeffs()) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return static_cast<int>(b);
}

namespace {

template <class R>
std::string render(const DensePoly<R>& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    R c = p.coeffs()[i];
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1);
    if (i == 0) {
      os << c.get_str();
    } else {
      if (!unit) os << c.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

class Parser {
 public:
  Parser(const std::string& s, char var) : s_(s), var_(var) {}
  QPoly parse() {
    QPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  const std::string& s_;
  char var_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse polynomial '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  QPoly expr() {
    QPoly r = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }
  QPoly term() {
    QPoly r = unary();
    for (;;) {
      skip();
      if (peek('*')) {
        ++pos_;
        r = r * unary();
      } else if (peek('/')) {
        ++pos_;
        QPoly d = unary();
        if (d.degree() != 0) fail("division by a non-constant");
        r = r.scaled(1 / d.lc());
      } else if (pos_ < s_.size() && (s_[pos_] == var_ || s_[pos_] == '(' || std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
        r = r * power();
      } else {
        return r;
      }
    }
  }
  QPoly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }
  QPoly power() {
    QPoly b = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      return b.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }
  QPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QPoly r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == var_) {
      ++pos_;
      return QPoly::x();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QPoly(Q(Z(s_.substr(start, pos_ - start))));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

std::string to_string(const ZPoly& p, char var) { return render(p, var); }
std::string to_string(const QPoly& p, char var) { return render(p, var); }

QPoly parse_poly(const std::string& s, char var) { return Parser(s, var).parse(); }

bool poly_less(const ZPoly& a, const ZPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

}  // namespace leg
