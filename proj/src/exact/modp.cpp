#include "modp.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace leg::modp {

namespace {

bool is_prime_u64(u64 n) {
  mpz_class z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

}  // namespace

u64 nth_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  u64 cand = primes.empty() ? (1ULL << 31) - 1 : primes.back() - 2;
  while (primes.size() <= i) {
    while (!is_prime_u64(cand)) cand -= 2;
    primes.push_back(cand);
    cand -= 2;
  }
  return primes[i];
}

u64 nth_small_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  u64 cand = primes.empty() ? 3 : primes.back() + 2;
  while (primes.size() <= i) {
    while (!is_prime_u64(cand)) cand += 2;
    primes.push_back(cand);
    cand += 2;
  }
  return primes[i];
}

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP reduce(const ZPoly& f, const Field& F) {
  PolyP r(f.coeffs().size());
  mpz_class t;
  for (size_t i = 0; i < r.size(); ++i) {
    t = f.coeffs()[i] % static_cast<unsigned long>(F.p);
    if (t < 0) t += static_cast<unsigned long>(F.p);
    r[i] = t.get_ui();
  }
  trim(r);
  return r;
}

PolyP add(const PolyP& a, const PolyP& b, const Field& F) {
  PolyP r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

PolyP sub(const PolyP& a, const PolyP& b, const Field& F) {
  PolyP r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

PolyP mul(const PolyP& a, const PolyP& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
  }
  trim(r);
  return r;
}

PolyP scale(const PolyP& a, u64 s, const Field& F) {
  PolyP r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

void divrem(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r, const Field& F) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  r = a;
  trim(r);
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  u64 inv = F.inv(b.back());
  for (int i = deg(r); i >= deg(b); --i) {
    u64 c = F.mul(r[i], inv);
    q[i - deg(b)] = c;
    if (!c) continue;
    for (int j = 0; j <= deg(b); ++j) r[i - deg(b) + j] = F.sub(r[i - deg(b) + j], F.mul(c, b[j]));
  }
  trim(r);
  trim(q);
}

PolyP rem(const PolyP& a, const PolyP& b, const Field& F) {
  PolyP q, r;
  divrem(a, b, q, r, F);
  return r;
}

PolyP make_monic(const PolyP& a, const Field& F) {
  if (a.empty()) return a;
  return scale(a, F.inv(a.back()), F);
}

PolyP gcd(PolyP a, PolyP b, const Field& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, F);
}

PolyP xgcd(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t, const Field& F) {
  PolyP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    PolyP q, r;
    divrem(r0, r1, q, r, F);
    PolyP s2 = sub(s0, mul(q, s1, F), F);
    PolyP t2 = sub(t0, mul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return r0;
  }
  u64 inv = F.inv(r0.back());
  s = scale(s0, inv, F);
  t = scale(t0, inv, F);
  return scale(r0, inv, F);
}

PolyP derivative(const PolyP& a, const Field& F) {
  if (a.size() <= 1) return {};
  PolyP r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  trim(r);
  return r;
}

PolyP powmod(const PolyP& base, Z e, const PolyP& m, const Field& F) {
  PolyP r{1}, b = rem(base, m, F);
  r = rem(r, m, F);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, b, F), m, F);
    e >>= 1;
    if (e > 0) b = rem(mul(b, b, F), m, F);
  }
  return r;
}

namespace {

// Equal-degree splitting (Cantor–Zassenhaus), p odd.
void equal_degree(const PolyP& f, int d, const Field& F, std::mt19937_64& rng, std::vector<PolyP>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  Z e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    PolyP a(deg(f));
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (deg(a) < 1) continue;
    PolyP g = gcd(a, f, F);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      PolyP q, r;
      divrem(f, g, q, r, F);
      equal_degree(g, d, F, rng, out);
      equal_degree(make_monic(q, F), d, F, rng, out);
      return;
    }
    PolyP b = powmod(a, e, f, F);
    b = sub(b, PolyP{1}, F);
    g = gcd(b, f, F);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      PolyP q, r;
      divrem(f, g, q, r, F);
      equal_degree(g, d, F, rng, out);
      equal_degree(make_monic(q, F), d, F, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyP> factor_squarefree_monic(const PolyP& f0, const Field& F, std::mt19937_64& rng) {
  std::vector<PolyP> out;
  PolyP f = make_monic(f0, F);
  if (deg(f) <= 0) return out;
  if (F.p == 2) throw std::domain_error("factorization mod 2 not supported");
  PolyP x{0, 1};
  PolyP h = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod(h, Z(static_cast<unsigned long>(F.p)), f, F);
    PolyP g = gcd(sub(h, x, F), f, F);
    if (deg(g) > 0) {
      equal_degree(g, d, F, rng, out);
      PolyP q, r;
      divrem(f, g, q, r, F);
      f = make_monic(q, F);
      h = rem(h, f, F);
    }
  }
  if (deg(f) > 0) out.push_back(f);
  return out;
}

}  // namespace leg::modp
