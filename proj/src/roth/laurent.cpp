#include "leg/roth/laurent.hpp"

#include <cctype>

namespace leg {

namespace {

template <class K>
class BiParser {
 public:
  explicit BiParser(const std::string& s) : s_(s) {}

  BiPoly<K> parse() {
    BiPoly<K> r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& m) const {
    throw std::invalid_argument("cannot parse '" + s_ + "': " + m);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  int peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : -1;
  }

  static BiPoly<K> constant(const K& c) {
    BiPoly<K> p;
    p.terms[{0, 0}] = c;
    p.clean();
    return p;
  }
  static BiPoly<K> monomial(int i, int j) {
    BiPoly<K> p;
    p.terms[{i, j}] = K(1);
    return p;
  }

  BiPoly<K> expr() {
    BiPoly<K> r = term();
    for (;;) {
      const int c = peek();
      if (c == '+') {
        ++i_;
        r = r + term();
      } else if (c == '-') {
        ++i_;
        r = r + (-term());
      } else {
        return r;
      }
    }
  }

  BiPoly<K> term() {
    BiPoly<K> r = unary();
    for (;;) {
      const int c = peek();
      if (c == '*') {
        ++i_;
        r = r * unary();
      } else if (c == '/') {
        ++i_;
        r = r * invert(unary());
      } else if (c == '(' || (c > 0 && std::isalnum(c))) {
        r = r * unary();
      } else {
        return r;
      }
    }
  }

  BiPoly<K> invert(const BiPoly<K>& p) {
    if (p.terms.size() != 1) fail("division by a sum");
    const auto& [k, c] = *p.terms.begin();
    if (k.first != 0) fail("division by X");
    BiPoly<K> r;
    r.terms[{0, -k.second}] = K(1) / c;
    return r;
  }

  BiPoly<K> unary() {
    const int c = peek();
    if (c == '-') {
      ++i_;
      return -unary();
    }
    if (c == '+') {
      ++i_;
      return unary();
    }
    return power();
  }

  BiPoly<K> power() {
    BiPoly<K> b = atom();
    if (peek() != '^') return b;
    ++i_;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++i_;
    }
    skip();
    const size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("exponent expected");
    const int e = std::stoi(s_.substr(st, i_ - st));
    if (e > 10000) fail("exponent too large");
    BiPoly<K> r = constant(K(1));
    for (int k = 0; k < e; ++k) r = r * b;
    return neg ? invert(r) : r;
  }

  BiPoly<K> atom() {
    const int c = peek();
    if (c == '(') {
      ++i_;
      BiPoly<K> r = expr();
      if (peek() != ')') fail("missing ')'");
      ++i_;
      return r;
    }
    if (c > 0 && std::isdigit(c)) {
      const size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return constant(K(Q(mpz_class(s_.substr(st, i_ - st)))));
    }
    ++i_;
    if (c == 't') return monomial(0, 1);
    if (c == 'X' || c == 'x') return monomial(1, 0);
    if (c == 'w') {
      if constexpr (std::is_same_v<K, QOmega>)
        return constant(QOmega::omega());
      else
        fail("w needs the Q(w) coefficient ring");
    }
    fail(c < 0 ? "unexpected end" : "unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }
};

}  // namespace

template <class K>
BiPoly<K> parse_bipoly(const std::string& s) {
  return BiParser<K>(s).parse();
}

template <class K>
LaurentSeries<K> laurent_expand(const BiPoly<K>& P, const LaurentSeries<K>& seed, long prec) {
  using S = LaurentSeries<K>;
  if (prec < 1) throw std::domain_error("precision must be positive");
  if (!seed.exact()) throw std::domain_error("seed must be an exact leading term");
  const int d = P.degree_x();
  if (d < 1) throw std::domain_error("polynomial does not involve X");
  const BiPoly<K> dP = P.derivative_x();
  const S P0 = P.eval(seed, kExactPrec);
  if (P0.is_exact_zero()) return seed;
  const S D0 = dP.eval(seed, kExactPrec);
  if (!D0.valuation()) throw std::domain_error("unsupported branch: P_X vanishes at the seed");
  const long v1 = *P0.valuation(), delta = *D0.valuation();
  if (v1 <= 2 * delta) throw std::domain_error("unsupported branch: seed is not a simple root at leading order");
  // Hensel: alpha - seed has valuation v1 - delta, and each step maps an
  // error of valuation e to one of valuation >= 2e - delta.
  long e = v1 - delta;
  S X = seed;
  const long neg = std::max(0L, -seed.val_bound());
  while (e < prec) {
    const long target = std::min(2 * e - delta, prec);
    long cap = target + delta + d * neg + 2;
    for (;;) {
      const S Pv = P.eval(X, cap), Dv = dP.eval(X, cap);
      const S Xn = X - S::mul(Pv, Dv.inv(cap), cap);
      if (Xn.prec() >= target) {
        X = Xn.truncated(target).as_exact();
        break;
      }
      if (cap > 8 * (prec + delta + d * neg) + 64) throw std::logic_error("Newton step lost precision");
      cap *= 2;
    }
    e = target;
  }
  return X.truncated(prec);
}

template BiPoly<Q> parse_bipoly<Q>(const std::string&);
template BiPoly<QOmega> parse_bipoly<QOmega>(const std::string&);
template LaurentSeries<Q> laurent_expand<Q>(const BiPoly<Q>&, const LaurentSeries<Q>&, long);
template LaurentSeries<QOmega> laurent_expand<QOmega>(const BiPoly<QOmega>&, const LaurentSeries<QOmega>&, long);

BiPoly<Q> quartic_minpoly() { return parse_bipoly<Q>("X^4 - X - 1/t"); }

LaurentSeries<Q> quartic_alpha(long prec) {
  return laurent_expand(quartic_minpoly(), LaurentSeries<Q>::monomial(Q(-1), 1), prec);
}

std::vector<LaurentSeries<QOmega>> quartic_conjugates(long prec) {
  using S = LaurentSeries<QOmega>;
  const BiPoly<QOmega> P = parse_bipoly<QOmega>("X^4 - X - 1/t");
  const QOmega w = QOmega::omega();
  std::vector<S> out;
  for (const S& seed : {S::monomial(QOmega(-1), 1), S::monomial(QOmega(1), 0), S::monomial(w, 0), S::monomial(w * w, 0)})
    out.push_back(laurent_expand(P, seed, prec));
  return out;
}

}  // namespace leg
