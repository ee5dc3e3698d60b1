// Factorization over Q: squarefree decomposition, then Zassenhaus on each
// squarefree part (modular factorization, Hensel lifting, recombination).

#include <algorithm>
#include <functional>
#include <numeric>

#include "leg/exact/poly.hpp"
#include "modp.hpp"

namespace leg {

namespace {

using modp::Field;
using modp::PolyP;

// Integer polynomials reduced into [0, m).
using ZVec = std::vector<Z>;

void trim(ZVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZVec mod_vec(const ZVec& a, const Z& m) {
  ZVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  }
  trim(r);
  return r;
}

ZVec mul_mod(const ZVec& a, const ZVec& b, const Z& m) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, Z(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return mod_vec(r, m);
}

ZVec add_mod(const ZVec& a, const ZVec& b, const Z& m) {
  ZVec r(std::max(a.size(), b.size()), Z(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return mod_vec(r, m);
}

ZVec sub_mod(const ZVec& a, const ZVec& b, const Z& m) {
  ZVec r(std::max(a.size(), b.size()), Z(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return mod_vec(r, m);
}

// Division by a polynomial whose leading coefficient is a unit mod m.
void divrem_mod(const ZVec& a, const ZVec& b, const Z& m, ZVec& q, ZVec& r) {
  r = mod_vec(a, m);
  const int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(r.size()) - 1 < db) {
    q.clear();
    return;
  }
  Z inv;
  if (!mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("non-invertible leading coefficient in Hensel lifting");
  q.assign(r.size() - db, Z(0));
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    Z c = (r[i] * inv) % m;
    if (c < 0) c += m;
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
      mpz_fdiv_r(r[i - db + j].get_mpz_t(), r[i - db + j].get_mpz_t(), m.get_mpz_t());
    }
  }
  trim(q);
  trim(r);
}

ZVec from_p(const PolyP& a) {
  ZVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
// Returns the lifted g, h, s, t modulo m^2.
void hensel_step(const ZVec& f, ZVec& g, ZVec& h, ZVec& s, ZVec& t, const Z& m) {
  Z m2 = m * m;
  ZVec e = sub_mod(f, mul_mod(g, h, m2), m2);
  ZVec q, r;
  divrem_mod(mul_mod(s, e, m2), h, m2, q, r);
  ZVec gs = add_mod(add_mod(g, mul_mod(t, e, m2), m2), mul_mod(q, g, m2), m2);
  ZVec hs = add_mod(h, r, m2);
  ZVec b = sub_mod(add_mod(mul_mod(s, gs, m2), mul_mod(t, hs, m2), m2), ZVec{Z(1)}, m2);
  ZVec c, d;
  divrem_mod(mul_mod(s, b, m2), hs, m2, c, d);
  ZVec ss = sub_mod(s, d, m2);
  ZVec ts = sub_mod(sub_mod(t, mul_mod(t, b, m2), m2), mul_mod(c, gs, m2), m2);
  g = std::move(gs);
  h = std::move(hs);
  s = std::move(ss);
  t = std::move(ts);
}

// Lifts the modular factorization f = lc * prod(facs) (mod p) to modulus p^(2^k) = M.
// Output: monic lifted factors in the same order.
void multifactor_lift(const ZVec& f, const std::vector<PolyP>& facs, const Field& F, const Z& M,
                      std::vector<ZVec>& out) {
  if (facs.size() == 1) {
    Z inv;
    if (!mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t()))
      throw std::domain_error("leading coefficient not invertible");
    ZVec r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] * inv;
    out.push_back(mod_vec(r, M));
    return;
  }
  const size_t k = facs.size() / 2;
  std::vector<PolyP> left(facs.begin(), facs.begin() + k), right(facs.begin() + k, facs.end());
  PolyP gp{1}, hp{1};
  for (auto& a : left) gp = modp::mul(gp, a, F);
  for (auto& a : right) hp = modp::mul(hp, a, F);
  Z lcp = f.back() % static_cast<unsigned long>(F.p);
  if (lcp < 0) lcp += static_cast<unsigned long>(F.p);
  gp = modp::scale(gp, lcp.get_ui(), F);
  PolyP sp, tp;
  modp::xgcd(gp, hp, sp, tp, F);
  ZVec g = from_p(gp), h = from_p(hp), s = from_p(sp), t = from_p(tp);
  Z m = static_cast<unsigned long>(F.p);
  while (m < M) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  // Restore exact lc in g (f = g h mod M, h monic).
  multifactor_lift(g, left, F, M, out);
  multifactor_lift(h, right, F, M, out);
}

ZPoly symmetric(const ZVec& a, const Z& M) {
  Z half = M / 2;
  ZVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), M.get_mpz_t());
    if (r[i] > half) r[i] -= M;
  }
  return ZPoly(std::move(r));
}

// Irreducible factors of a primitive squarefree polynomial with lc > 0.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const int n = f.degree();
  if (n <= 1) return {f};
  // Choose a good prime with few modular factors.
  std::mt19937_64 rng(0x5eed1234ULL);
  std::vector<PolyP> best;
  Field bestF{0};
  int tried = 0;
  for (size_t i = 0; tried < 5 && i < 400; ++i) {
    Field F{modp::nth_small_prime(i)};
    if (F.p <= static_cast<modp::u64>(n)) continue;
    if (mpz_divisible_ui_p(f.lc().get_mpz_t(), static_cast<unsigned long>(F.p))) continue;
    PolyP fp = modp::reduce(f, F);
    PolyP g = modp::gcd(fp, modp::derivative(fp, F), F);
    if (modp::deg(g) > 0) continue;
    auto facs = modp::factor_squarefree_monic(fp, F, rng);
    ++tried;
    if (bestF.p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      bestF = F;
    }
    if (best.size() == 1) return {f};
  }
  if (bestF.p == 0) throw std::runtime_error("no suitable prime for factorization");
  // Coefficient bound for lc * (monic factor).
  Z norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Z rt;
  mpz_sqrt(rt.get_mpz_t(), norm2.get_mpz_t());
  rt += 1;
  Z bound = abs(f.lc()) * rt;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  Z target = 2 * bound + 1;
  Z M = static_cast<unsigned long>(bestF.p);
  while (M <= target) M *= M;

  std::vector<ZVec> lifted;
  multifactor_lift(ZVec(f.coeffs()), best, bestF, M, lifted);

  std::vector<ZPoly> result;
  ZPoly cur = f;
  std::vector<size_t> idx(lifted.size());
  std::iota(idx.begin(), idx.end(), 0);
  size_t s = 1;
  while (2 * s <= idx.size()) {
    bool found = false;
    std::vector<size_t> sel(s);
    std::iota(sel.begin(), sel.end(), 0);
    for (;;) {
      ZVec prod{cur.lc()};
      for (size_t j : sel) prod = mul_mod(prod, lifted[idx[j]], M);
      ZPoly g = symmetric(prod, M);
      ZPoly q;
      ZPoly lcf = cur.scaled(cur.lc());
      if (!g.is_zero() && divides(g, lcf, &q)) {
        ZPoly pg = primitive_part(g);
        result.push_back(pg);
        cur = primitive_part(exact_div(cur, pg));
        std::vector<size_t> rest;
        for (size_t j = 0; j < idx.size(); ++j)
          if (std::find(sel.begin(), sel.end(), j) == sel.end()) rest.push_back(idx[j]);
        idx = std::move(rest);
        found = true;
        break;
      }
      // next combination
      int k = static_cast<int>(s) - 1;
      while (k >= 0 && sel[k] == idx.size() - s + k) --k;
      if (k < 0) break;
      ++sel[k];
      for (size_t j = k + 1; j < s; ++j) sel[j] = sel[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (cur.degree() > 0) result.push_back(cur);
  return result;
}

}  // namespace

Factorization factor(const ZPoly& p) {
  if (p.is_zero()) throw std::domain_error("factorization of the zero polynomial");
  Factorization out;
  Z c = content(p);
  if (p.lc() < 0) c = -c;
  out.unit = Q(c);
  for (const auto& sf : squarefree_decompose(p)) {
    for (auto& g : zassenhaus(sf.factor)) out.factors.push_back({g, sf.multiplicity});
  }
  // Squarefree factors are only determined up to sign; fix the unit.
  ZPoly prod(Z(1));
  for (auto& fa : out.factors) prod = prod * fa.factor.pow(static_cast<unsigned>(fa.multiplicity));
  Q ratio = Q(p.lc()) / Q(prod.lc());
  out.unit = ratio;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const SquarefreeFactor& a, const SquarefreeFactor& b) { return poly_less(a.factor, b.factor); });
  return out;
}

Factorization factor(const QPoly& p) {
  if (p.is_zero()) throw std::domain_error("factorization of the zero polynomial");
  Factorization f = factor(primitive_part(p));
  f.unit *= content(p);
  return f;
}

bool is_irreducible(const ZPoly& p) {
  if (p.degree() < 1) return false;
  Factorization f = factor(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace leg
