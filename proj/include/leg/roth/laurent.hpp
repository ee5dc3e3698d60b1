#pragma once

// Truncated Laurent series in u = 1/t with exact coefficients.  A series
// knows the first exponent it cannot vouch for (prec); every operation
// propagates it, and reading a coefficient at or past it throws.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leg/roth/qomega.hpp"

namespace leg {

// Asked for more coefficients than the input series carries.
struct SeriesPrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr long kExactPrec = LONG_MAX / 4;

template <class K>
class LaurentSeries {
 public:
  LaurentSeries() = default;
  // Exact series.
  static LaurentSeries monomial(const K& c, long e) {
    LaurentSeries s;
    if (!is_zero(c)) {
      s.lo_ = e;
      s.c_ = {c};
    }
    return s;
  }
  // Exact series of a polynomial in t.
  static LaurentSeries from_poly_t(const QPoly& p) {
    LaurentSeries s;
    for (int i = 0; i <= p.degree(); ++i) s = s + monomial(K(p.coeff(i)), -i);
    return s;
  }
  // p(t)/q(t) to the given precision; remembers that it is rational.
  static LaurentSeries from_rational(const QPoly& p, const QPoly& q, long prec) {
    LaurentSeries s = from_poly_t(p) * from_poly_t(q).inv(prec);
    s.rational_ = std::make_pair(p, q);
    return s.truncated(prec);
  }

  long prec() const { return prec_; }
  bool exact() const { return prec_ >= kExactPrec; }
  const std::optional<std::pair<QPoly, QPoly>>& rational_source() const { return rational_; }

  K coeff(long e) const {
    if (e >= prec_) throw std::logic_error("coefficient read at or beyond the precision bound");
    if (e < lo_ || e >= lo_ + static_cast<long>(c_.size())) return K(0);
    return c_[e - lo_];
  }
  // First nonzero exponent below prec, if any.
  std::optional<long> valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) return lo_ + static_cast<long>(i);
    return std::nullopt;
  }
  bool is_exact_zero() const { return exact() && !valuation(); }
  // Lower bound for the valuation.
  long val_bound() const {
    auto v = valuation();
    return v ? *v : prec_;
  }
  // Stored nonzero terms (exponent, coefficient).
  std::vector<std::pair<long, K>> terms() const {
    std::vector<std::pair<long, K>> out;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) out.emplace_back(lo_ + static_cast<long>(i), c_[i]);
    return out;
  }

  LaurentSeries truncated(long p) const {
    LaurentSeries s = *this;
    s.prec_ = std::min(prec_, p);
    s.rational_ = rational_;
    s.trim();
    return s;
  }

  // The stored terms as an exact series (drops the precision bound).
  LaurentSeries as_exact() const {
    LaurentSeries s = *this;
    s.prec_ = kExactPrec;
    s.rational_.reset();
    return s;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& x : s.c_) x = -x;
    if (rational_) s.rational_ = std::make_pair(-rational_->first, rational_->second);
    return s;
  }
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries s;
    s.prec_ = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return s;
    const long lo = std::min(a.c_.empty() ? b.lo_ : a.lo_, b.c_.empty() ? a.lo_ : b.lo_);
    const long hi = std::min(s.prec_, std::max(a.end(), b.end()));
    s.lo_ = lo;
    if (hi > lo) {
      s.c_.assign(hi - lo, K(0));
      for (size_t i = 0; i < a.c_.size() && a.lo_ + static_cast<long>(i) < hi; ++i) s.c_[a.lo_ - lo + i] += a.c_[i];
      for (size_t i = 0; i < b.c_.size() && b.lo_ + static_cast<long>(i) < hi; ++i) s.c_[b.lo_ - lo + i] += b.c_[i];
    }
    s.trim();
    return s;
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

  // Product, computed only below cap.
  static LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, long cap = kExactPrec) {
    LaurentSeries s;
    const long va = a.val_bound(), vb = b.val_bound();
    long p = kExactPrec;
    if (!a.exact()) p = std::min(p, a.prec_ + vb);
    if (!b.exact()) p = std::min(p, b.prec_ + va);
    if (a.exact() && b.exact() && (a.c_.empty() || b.c_.empty())) p = kExactPrec;
    s.prec_ = std::min(p, cap);
    if (a.c_.empty() || b.c_.empty()) return s;
    s.lo_ = a.lo_ + b.lo_;
    const long hi = std::min(s.prec_, a.end() + b.end() - 1);
    if (hi <= s.lo_) return s;
    s.c_.assign(hi - s.lo_, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      const long ei = a.lo_ + static_cast<long>(i);
      for (size_t j = 0; j < b.c_.size(); ++j) {
        const long e = ei + b.lo_ + static_cast<long>(j);
        if (e >= hi) break;
        if (!is_zero(b.c_[j])) s.c_[e - s.lo_] += a.c_[i] * b.c_[j];
      }
    }
    s.trim();
    return s;
  }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }
  LaurentSeries scaled(const K& k) const {
    LaurentSeries s = *this;
    s.rational_.reset();
    for (auto& x : s.c_) x = x * k;
    s.trim();
    return s;
  }

  // Inverse; exact inputs with infinite inverse are cut at cap.
  LaurentSeries inv(long cap = kExactPrec) const {
    const auto v = valuation();
    if (!v) throw SeriesPrecisionError("inverse of a series with no known nonzero coefficient");
    long p = exact() ? kExactPrec : prec_ - 2 * *v;
    const auto t = terms();
    if (t.size() == 1 && exact()) return monomial(K(1) / t[0].second, -*v);
    p = std::min(p, cap);
    if (p >= kExactPrec) throw std::logic_error("inverse of a polynomial series needs a precision cap");
    LaurentSeries s;
    s.prec_ = p;
    s.lo_ = -*v;
    const long n = p - s.lo_;
    if (n <= 0) return s;
    const K a0inv = K(1) / coeff(*v);
    s.c_.assign(n, K(0));
    s.c_[0] = a0inv;
    for (long k = 1; k < n; ++k) {
      K acc(0);
      const long imax = std::min<long>(k, end() - 1 - *v);
      for (long i = 1; i <= imax; ++i) {
        const K& ai = c_[*v + i - lo_];
        if (!is_zero(ai) && !is_zero(s.c_[k - i])) acc += ai * s.c_[k - i];
      }
      s.c_[k] = -(acc * a0inv);
    }
    s.trim();
    return s;
  }

  // Terms with exponent <= 0, as a polynomial in t.
  QPoly polynomial_part() const
    requires std::is_same_v<K, Q>
  {
    if (prec_ < 1) throw SeriesPrecisionError("polynomial part needs precision >= 1");
    std::vector<Q> v;
    for (long e = std::min(lo_, 0L); e <= 0; ++e) {
      const Q c = coeff(e);
      const long k = -e;
      if (static_cast<long>(v.size()) <= k) v.resize(k + 1, Q(0));
      v[k] = c;
    }
    return QPoly(std::move(v));
  }

  std::string str(int max_terms = 12) const {
    std::string s;
    int n = 0;
    for (const auto& [e, c] : terms()) {
      if (n++ == max_terms) {
        s += " + ...";
        break;
      }
      if (!s.empty()) s += " + ";
      s += "(" + scalar_str(c) + ")";
      if (e != 0) s += e < 0 ? "*t^" + std::to_string(-e) : "/t^" + std::to_string(e);
    }
    if (s.empty()) s = "0";
    if (!exact()) s += " + O(1/t^" + std::to_string(prec_) + ")";
    return s;
  }

 private:
  long lo_ = 0;
  std::vector<K> c_;
  long prec_ = kExactPrec;
  std::optional<std::pair<QPoly, QPoly>> rational_;

  long end() const { return lo_ + static_cast<long>(c_.size()); }
  void trim() {
    if (!exact() && end() > prec_) c_.resize(std::max(0L, prec_ - lo_));
    size_t first = 0;
    while (first < c_.size() && is_zero(c_[first])) ++first;
    if (first == c_.size()) {
      c_.clear();
      return;
    }
    if (first > 0) {
      c_.erase(c_.begin(), c_.begin() + first);
      lo_ += static_cast<long>(first);
    }
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
};

// Polynomial P(t, X) = sum c_ij X^i t^j (j may be negative).
template <class K>
struct BiPoly {
  std::map<std::pair<int, int>, K> terms;  // (deg in X, exponent of t) -> c

  int degree_x() const {
    int d = -1;
    for (const auto& [k, c] : terms) d = std::max(d, k.first);
    return d;
  }
  BiPoly derivative_x() const {
    BiPoly d;
    for (const auto& [k, c] : terms)
      if (k.first > 0) d.terms[{k.first - 1, k.second}] += c * K(k.first);
    d.clean();
    return d;
  }
  void clean() {
    for (auto it = terms.begin(); it != terms.end();) it = is_zero(it->second) ? terms.erase(it) : std::next(it);
  }
  // Coefficient of X^i as an exact series in u = 1/t.
  LaurentSeries<K> coefficient(int i) const {
    LaurentSeries<K> s;
    for (const auto& [k, c] : terms)
      if (k.first == i) s = s + LaurentSeries<K>::monomial(c, -k.second);
    return s;
  }
  // Horner in X with every product cut at cap.
  LaurentSeries<K> eval(const LaurentSeries<K>& x, long cap) const {
    const int d = degree_x();
    if (d < 0) return {};
    LaurentSeries<K> acc = coefficient(d);
    for (int i = d - 1; i >= 0; --i) acc = LaurentSeries<K>::mul(acc, x, cap) + coefficient(i);
    return acc.truncated(cap);
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (const auto& [k, c] : b.terms) a.terms[k] += c;
    a.clean();
    return a;
  }
  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& [k, c] : r.terms) c = -c;
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.terms)
      for (const auto& [kb, cb] : b.terms) r.terms[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    r.clean();
    return r;
  }
};

// Parses sums of products of rationals, t, X (or x), w (= omega, Q(w) only),
// parentheses and integer powers; division only by a single term.
template <class K>
BiPoly<K> parse_bipoly(const std::string& s);

// Root of P(t, X) = 0 in Q((1/t)) or Q(w)((1/t)) starting from seed, by Newton
// iteration, to precision prec.  Throws std::domain_error if the seed does not
// satisfy v(P(seed)) > 2 v(P_X(seed)) (not a simple root at leading order).
template <class K>
LaurentSeries<K> laurent_expand(const BiPoly<K>& P, const LaurentSeries<K>& seed, long prec);

// The quartic alpha^4 - alpha = 1/t and its four branches in Q(w)((1/t)):
// seeds -1/t, 1, w, w^2.
BiPoly<Q> quartic_minpoly();
LaurentSeries<Q> quartic_alpha(long prec);
std::vector<LaurentSeries<QOmega>> quartic_conjugates(long prec);

}  // namespace leg
