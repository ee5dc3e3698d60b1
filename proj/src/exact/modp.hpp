#pragma once

// Polynomial arithmetic over Z/p for word-size primes p < 2^31.

#include <cstdint>
#include <random>
#include <vector>

#include "leg/exact/poly.hpp"

namespace leg::modp {

using u64 = std::uint64_t;
using PolyP = std::vector<u64>;

struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

// Primes below 2^31 in decreasing order, generated on demand.
u64 nth_prime(std::size_t i);
// Small primes 3, 5, 7, ... for factorization.
u64 nth_small_prime(std::size_t i);

void trim(PolyP& a);
inline int deg(const PolyP& a) { return static_cast<int>(a.size()) - 1; }

PolyP reduce(const ZPoly& f, const Field& F);
PolyP add(const PolyP& a, const PolyP& b, const Field& F);
PolyP sub(const PolyP& a, const PolyP& b, const Field& F);
PolyP mul(const PolyP& a, const PolyP& b, const Field& F);
PolyP scale(const PolyP& a, u64 s, const Field& F);
void divrem(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r, const Field& F);
PolyP rem(const PolyP& a, const PolyP& b, const Field& F);
PolyP make_monic(const PolyP& a, const Field& F);
PolyP gcd(PolyP a, PolyP b, const Field& F);  // monic
// s*a + t*b = g (monic gcd)
PolyP xgcd(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t, const Field& F);
PolyP derivative(const PolyP& a, const Field& F);
PolyP powmod(const PolyP& base, Z e, const PolyP& m, const Field& F);

// Factorization of a squarefree monic polynomial into monic irreducibles.
std::vector<PolyP> factor_squarefree_monic(const PolyP& f, const Field& F, std::mt19937_64& rng);

}  // namespace leg::modp
