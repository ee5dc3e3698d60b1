#include "leg/roth/wang.hpp"

#include <cmath>
#include <map>

namespace leg {

QtPlace QtPlace::finite(const ZPoly& p) {
  if (p.degree() < 1) throw std::domain_error("place needs a nonconstant polynomial");
  const ZPoly q = primitive_part(p);
  if (!is_irreducible(q)) throw std::domain_error("place polynomial must be irreducible: " + to_string(q, 't'));
  return {false, q};
}

QtPlace QtPlace::parse(const std::string& s) {
  if (s == "inf" || s == "infinity") return infinity();
  return finite(primitive_part(parse_poly(s, 't')));
}

int QtPlace::ord(const RatFunc& f) const {
  if (f.is_zero()) throw std::domain_error("valuation of 0");
  return infinite ? f.ord_inf() : f.ord_at(pi);
}

std::string QtPlace::str() const { return infinite ? "inf" : to_string(pi, 't'); }

int WangInstance::S_size() const {
  int s = 0;
  for (const auto& v : S) s += v.degree();
  return s;
}

namespace {

bool in_S(const std::vector<QtPlace>& S, const QtPlace& v) {
  for (const auto& w : S)
    if (w == v) return true;
  return false;
}

bool is_S_unit(const RatFunc& a, const std::vector<QtPlace>& S) {
  for (const ZPoly* p : {&a.num(), &a.den()})
    for (const auto& fac : factor(*p).factors)
      if (!in_S(S, QtPlace{false, fac.factor})) return false;
  return in_S(S, QtPlace::infinity()) || a.ord_inf() == 0;
}

// Coefficient vectors of the elements over a common denominator.
std::vector<std::vector<Q>> coefficient_columns(const std::vector<RatFunc>& g) {
  ZPoly D(Z(1));
  for (const auto& x : g) D = exact_div(D * x.den(), gcd(D, x.den()));
  std::vector<std::vector<Q>> cols;
  for (const auto& x : g) {
    const QPoly p = (x * RatFunc(D)).as_poly();
    cols.emplace_back(p.coeffs().begin(), p.coeffs().end());
  }
  return cols;
}

// Rank of the columns; a kernel vector if they are dependent; pivot columns.
struct Elim {
  int rank = 0;
  std::vector<int> pivots;
  std::optional<std::vector<Q>> kernel;
};

Elim eliminate(const std::vector<std::vector<Q>>& cols) {
  const int nc = static_cast<int>(cols.size());
  size_t nr = 0;
  for (const auto& c : cols) nr = std::max(nr, c.size());
  std::vector<std::vector<Q>> M(nr, std::vector<Q>(nc, Q(0)));
  for (int j = 0; j < nc; ++j)
    for (size_t i = 0; i < cols[j].size(); ++i) M[i][j] = cols[j][i];
  Elim e;
  std::vector<int> pivot_row_of(nc, -1);
  size_t row = 0;
  for (int j = 0; j < nc && row < nr; ++j) {
    size_t p = row;
    while (p < nr && M[p][j] == 0) ++p;
    if (p == nr) continue;
    std::swap(M[p], M[row]);
    const Q inv = 1 / M[row][j];
    for (int k = j; k < nc; ++k) M[row][k] *= inv;
    for (size_t i = 0; i < nr; ++i)
      if (i != row && M[i][j] != 0) {
        const Q c = M[i][j];
        for (int k = j; k < nc; ++k) M[i][k] -= c * M[row][k];
      }
    pivot_row_of[j] = static_cast<int>(row);
    e.pivots.push_back(j);
    ++row;
  }
  e.rank = static_cast<int>(row);
  for (int j = 0; j < nc; ++j) {
    if (pivot_row_of[j] >= 0) continue;
    std::vector<Q> k(nc, Q(0));
    k[j] = 1;
    for (int pj : e.pivots)
      if (pj < j) k[pj] = -M[pivot_row_of[pj]][j];
    e.kernel = k;
    break;
  }
  return e;
}

void monomials(const std::vector<RatFunc>& u, int r, size_t start, const RatFunc& acc, std::vector<RatFunc>& out) {
  if (r == 0) {
    out.push_back(acc);
    return;
  }
  for (size_t i = start; i < u.size(); ++i) monomials(u, r - 1, i, acc * u[i], out);
}

std::vector<RatFunc> spanning_set(const std::vector<RatFunc>& A_star, int r) {
  std::vector<RatFunc> u;
  for (const auto& a : A_star)
    if (!a.is_zero()) u.push_back(a);
  std::vector<RatFunc> out;
  monomials(u, r, 0, RatFunc(1), out);
  return out;
}

std::vector<RatFunc> basis(const std::vector<RatFunc>& span) {
  const Elim e = eliminate(coefficient_columns(span));
  std::vector<RatFunc> b;
  for (int j : e.pivots) b.push_back(span[j]);
  return b;
}

// Wronskian with respect to t, by elimination over Q(t).
RatFunc wronskian(const std::vector<RatFunc>& g) {
  const size_t N = g.size();
  std::vector<std::vector<RatFunc>> W(N, std::vector<RatFunc>(N));
  for (size_t j = 0; j < N; ++j) {
    RatFunc d = g[j];
    for (size_t i = 0; i < N; ++i) {
      W[i][j] = d;
      d = d.derivative();
    }
  }
  RatFunc det(1);
  for (size_t c = 0; c < N; ++c) {
    size_t p = c;
    while (p < N && W[p][c].is_zero()) ++p;
    if (p == N) return RatFunc();
    if (p != c) {
      std::swap(W[p], W[c]);
      det = -det;
    }
    det = det * W[c][c];
    const RatFunc inv = W[c][c].inv();
    for (size_t i = c + 1; i < N; ++i) {
      if (W[i][c].is_zero()) continue;
      const RatFunc k = W[i][c] * inv;
      for (size_t j = c; j < N; ++j) W[i][j] = W[i][j] - k * W[c][j];
    }
  }
  return det;
}

}  // namespace

void WangInstance::validate() const {
  if (f.is_zero()) throw std::domain_error("f must be nonzero");
  if (r < 0) throw std::domain_error("r must be >= 0");
  if (S.empty()) throw std::domain_error("S must be nonempty");
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (S[i] == S[j]) throw std::domain_error("repeated place in S");
  bool has_zero = false, has_unit = false;
  for (const auto& a : A_star) {
    if (a.is_zero()) {
      has_zero = true;
      continue;
    }
    has_unit = true;
    if (!is_S_unit(a, S)) throw std::domain_error("not an S-unit: " + a.str('t'));
  }
  if (!has_zero || !has_unit) throw std::domain_error("A* must contain 0 and at least one S-unit");
  if (choices.size() != S.size()) throw std::domain_error("one choice a*_v per place of S");
  for (const auto& c : choices) {
    bool found = false;
    for (const auto& a : A_star) found = found || a == c;
    if (!found) throw std::domain_error("choice not in A*: " + c.str('t'));
  }
}

int wang_dimension(const std::vector<RatFunc>& A_star, int r) {
  if (r == 0) return 1;
  return eliminate(coefficient_columns(spanning_set(A_star, r))).rank;
}

WangResult wang_lemma_check(const WangInstance& inst) {
  inst.validate();
  WangResult res;
  const std::vector<RatFunc> beta = inst.r == 0 ? std::vector<RatFunc>{RatFunc(1)} : basis(spanning_set(inst.A_star, inst.r));
  const std::vector<RatFunc> b = basis(spanning_set(inst.A_star, inst.r + 1));
  res.n = static_cast<int>(beta.size());
  res.m = static_cast<int>(b.size());
  std::vector<RatFunc> all;
  for (const auto& x : beta) all.push_back(inst.f * x);
  all.insert(all.end(), b.begin(), b.end());
  const Elim e = eliminate(coefficient_columns(all));
  res.hypothesis_held = e.rank == res.n + res.m;
  if (!res.hypothesis_held) {
    RatFunc g;
    for (int i = 0; i < res.n; ++i) g = g + RatFunc((*e.kernel)[i]) * beta[i];
    res.witness = g;
    return res;
  }
  if (res.n + res.m <= 6) res.wronskian_nonzero = !wronskian(all).is_zero();

  const long mn1 = res.m + res.n - 1;
  for (size_t i = 0; i < inst.S.size(); ++i) {
    const RatFunc d = inst.f - inst.choices[i];
    if (d.is_zero()) throw std::logic_error("f lies in A* although the hypothesis holds");
    res.lhs_S += static_cast<long>(inst.S[i].degree()) * std::max(0, inst.S[i].ord(d));
  }
  // places outside S where some f - a* vanishes to order > m + n - 1
  std::map<std::string, std::pair<int, long>> outside;  // place -> (degree, best excess)
  for (const auto& a : inst.A_star) {
    const RatFunc d = inst.f - a;
    if (d.is_zero()) throw std::logic_error("f lies in A* although the hypothesis holds");
    for (const auto& fac : factor(d.num()).factors) {
      const QtPlace v{false, fac.factor};
      if (in_S(inst.S, v)) continue;
      auto& slot = outside[v.str()];
      slot.first = v.degree();
      slot.second = std::max(slot.second, fac.multiplicity - mn1);
    }
    if (!in_S(inst.S, QtPlace::infinity())) {
      auto& slot = outside["inf"];
      slot.first = 1;
      slot.second = std::max(slot.second, d.ord_inf() - mn1);
    }
  }
  for (const auto& [k, v] : outside) res.lhs_outside += v.first * std::max(0L, v.second);
  const long mn = res.m + res.n;
  res.rhs = Q(mn, res.n) * inst.f.height() + Q(mn * (mn - 1), 2 * res.n) * inst.chi();
  res.inequality_holds = Q(res.lhs()) <= res.rhs;
  if (!res.inequality_holds) throw std::logic_error("Wang inequality violated");
  return res;
}

WangInstance random_wang_instance(std::mt19937_64& rng) {
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  const ZPoly t = ZPoly::x();
  std::vector<QtPlace> pool = {QtPlace::infinity()};
  for (int c : {0, 1, -1, 2, -2}) pool.push_back(QtPlace{false, t - ZPoly(Z(c))});
  for (;;) {
    WangInstance w;
    std::shuffle(pool.begin(), pool.end(), rng);
    w.S.assign(pool.begin(), pool.begin() + uni(1, 4));
    std::vector<ZPoly> fin;
    for (const auto& v : w.S)
      if (!v.infinite) fin.push_back(v.pi);
    const bool inf_in_S = fin.size() < w.S.size();
    w.A_star = {RatFunc()};
    const int k = uni(1, 3);
    for (int tries = 0; static_cast<int>(w.A_star.size()) < k + 1 && tries < 20; ++tries) {
      static const Q cs[] = {Q(1), Q(-1), Q(2), Q(1, 2)};
      RatFunc u(cs[uni(0, 3)]);
      int sum = 0;
      for (size_t i = 0; i < fin.size(); ++i) {
        int e = uni(-2, 2);
        if (!inf_in_S && i + 1 == fin.size()) e = -sum;
        sum += e;
        u = u * RatFunc(fin[i]).pow(e);
      }
      bool dup = false;
      for (const auto& a : w.A_star) dup = dup || a == u;
      if (!dup) w.A_star.push_back(u);
    }
    w.r = uni(0, 2);
    // f: either near an element of A* at some place, or a small random fraction
    auto small_poly = [&](int deg) {
      std::vector<Z> c(deg + 1);
      for (auto& x : c) x = uni(-2, 2);
      if (c.back() == 0) c.back() = 1;
      return ZPoly(c);
    };
    if (uni(0, 1) == 0) {
      const RatFunc& a = w.A_star[uni(0, static_cast<int>(w.A_star.size()) - 1)];
      const ZPoly pi = t - ZPoly(Z(uni(-3, 3)));
      w.f = a + RatFunc(pi.pow(uni(1, 4)) * small_poly(uni(0, 1)));
    } else {
      w.f = RatFunc(small_poly(uni(0, 2)), small_poly(uni(0, 1)));
    }
    if (w.f.is_zero()) continue;
    for (const auto& v : w.S) {
      RatFunc best = w.A_star[0];
      int bo = -1 << 30;
      for (const auto& a : w.A_star) {
        const RatFunc d = w.f - a;
        if (d.is_zero()) continue;
        const int o = v.ord(d);
        if (o > bo) {
          bo = o;
          best = a;
        }
      }
      w.choices.push_back(best);
    }
    w.validate();
    return w;
  }
}

RothPropResult roth_prop_check(const RatFunc& f, const std::vector<RatFunc>& A, const std::vector<QtPlace>& S,
                               const Q& eps, const std::vector<RatFunc>& choices) {
  if (!(eps > 0 && eps <= Q(1, 16))) throw std::domain_error("eps must lie in (0, 1/16]");
  if (f.is_zero()) throw std::domain_error("f must be nonzero");
  if (A.empty()) throw std::domain_error("A needs a nonzero element");
  if (choices.size() != S.size()) throw std::domain_error("one choice a_v per place of S");
  RothPropResult r;
  r.l = static_cast<int>(A.size());
  r.h_f = f.height();
  for (const auto& a : A) {
    if (a.is_zero()) throw std::domain_error("A lists its nonzero elements only");
    r.sum_h_a += a.height();
    r.f_in_A = r.f_in_A || a == f;
  }
  for (const auto& v : S) r.chi += v.degree();
  r.chi -= 2;
  const double e = eps.get_d();
  r.alt1_rhs = 6.0 * r.l / e * std::log(1 / e) * r.sum_h_a;
  r.alt1 = r.h_f <= r.alt1_rhs;
  if (!r.f_in_A) {
    for (size_t i = 0; i < S.size(); ++i) {
      const RatFunc d = f - choices[i];
      if (d.is_zero()) throw std::domain_error("choices must lie in A or be 0");
      r.lhs += static_cast<long>(S[i].degree()) * std::max(0, S[i].ord(d));
    }
    r.alt2_rhs = (2 + e) * r.h_f + 3 * std::pow(1 / e, r.l) * (r.chi + 2.0 * r.sum_h_a);
    r.alt2 = r.lhs <= r.alt2_rhs;
  }
  if (!r.alt1 && !r.alt2) throw std::logic_error("neither alternative of the Roth proposition holds");
  return r;
}

}  // namespace leg
