#pragma once

// Complete and incomplete elliptic integrals for complex arguments:
// Carlson's R_F and R_D by duplication, K and E by the arithmetic-geometric
// mean, and K from the hypergeometric series as an independent route.

#include <algorithm>

#include "leg/betti/numeric.hpp"

namespace leg {

template <class C>
C carlson_rf(C x, C y, C z) {
  using R = real_t<C>;
  using std::abs;
  using std::pow;
  using std::sqrt;
  const C x0 = x, y0 = y;
  const C A0 = (x + y + z) / R(3);
  const R Q = pow(R(3) * eps_v<C>(), R(-1) / R(6)) * std::max({abs(A0 - x), abs(A0 - y), abs(A0 - z)});
  C A = A0;
  R scale = 1;
  for (int it = 0; scale * Q >= abs(A); ++it) {
    if (it > 400) throw PrecisionError("R_F duplication did not converge");
    const C sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
    const C l = sx * sy + sx * sz + sy * sz;
    x = (x + l) / R(4);
    y = (y + l) / R(4);
    z = (z + l) / R(4);
    A = (A + l) / R(4);
    scale /= R(4);
  }
  const C X = (A0 - x0) * scale / A, Y = (A0 - y0) * scale / A, Z = -(X + Y);
  const C E2 = X * Y - Z * Z, E3 = X * Y * Z;
  return (R(1) - E2 / R(10) + E3 / R(14) + E2 * E2 / R(24) - R(3) * E2 * E3 / R(44)) / sqrt(A);
}

template <class C>
C carlson_rd(C x, C y, C z) {
  using R = real_t<C>;
  using std::abs;
  using std::pow;
  using std::sqrt;
  const C x0 = x, y0 = y;
  const C A0 = (x + y + R(3) * z) / R(5);
  const R Q = pow(eps_v<C>() / R(4), R(-1) / R(6)) * std::max({abs(A0 - x), abs(A0 - y), abs(A0 - z)});
  C A = A0, sum = C(0);
  R scale = 1;
  for (int it = 0; scale * Q >= abs(A); ++it) {
    if (it > 400) throw PrecisionError("R_D duplication did not converge");
    const C sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
    const C l = sx * sy + sx * sz + sy * sz;
    sum += scale / (sz * (z + l));
    x = (x + l) / R(4);
    y = (y + l) / R(4);
    z = (z + l) / R(4);
    A = (A + l) / R(4);
    scale /= R(4);
  }
  const C X = (A0 - x0) * scale / A, Y = (A0 - y0) * scale / A, Z = -(X + Y) / R(3);
  const C XY = X * Y, Z2 = Z * Z;
  const C E2 = XY - R(6) * Z2, E3 = (R(3) * XY - R(8) * Z2) * Z, E4 = R(3) * (XY - Z2) * Z2, E5 = XY * Z2 * Z;
  const C series = R(1) - R(3) * E2 / R(14) + E3 / R(6) + R(9) * E2 * E2 / R(88) - R(3) * E4 / R(22) -
                   R(9) * E2 * E3 / R(52) + R(3) * E5 / R(26);
  return scale * series / (A * sqrt(A)) + R(3) * sum;
}

template <class C>
struct KE {
  C K, E;
};

// K(m), E(m) with parameter m (K = int dt / sqrt((1-t^2)(1-m t^2))); the
// complement 1 - m is passed separately so that m near 1 keeps its digits.
template <class C>
KE<C> agm_KE(const C& m, const C& one_minus_m) {
  using R = real_t<C>;
  using std::abs;
  using std::sqrt;
  C a(1), b = sqrt(one_minus_m);
  R w = R(1) / R(2);
  C sum = w * m;
  const R tol = eps_v<C>() * R(4);
  for (int it = 0; abs(a - b) > tol * abs(a); ++it) {
    if (it > 200) throw PrecisionError("AGM did not converge");
    const C c = (a - b) / R(2);
    const C a1 = (a + b) / R(2);
    C b1 = sqrt(a * b);
    if (abs(a1 - b1) > abs(a1 + b1)) b1 = -b1;
    a = a1;
    b = b1;
    w *= R(2);
    sum += w * c * c;
  }
  KE<C> out;
  out.K = pi_v<C>() / (R(2) * a);
  out.E = out.K * (R(1) - sum);
  return out;
}

template <class C>
KE<C> carlson_KE(const C& m, const C& one_minus_m) {
  using R = real_t<C>;
  KE<C> out;
  out.K = carlson_rf(C(0), one_minus_m, C(1));
  out.E = out.K - m / R(3) * carlson_rd(C(0), one_minus_m, C(1));
  return out;
}

namespace detail {

// 2F1(1/2, 1/2; 1; z) for |z| < 1.
template <class C>
C hyp_half(const C& z) {
  using R = real_t<C>;
  using std::abs;
  C term(1), sum(1);
  const R tol = eps_v<C>() / R(4);
  for (int n = 0; n < 200000; ++n) {
    const R r = (R(2 * n + 1) / R(2 * n + 2));
    term *= r * r * z;
    sum += term;
    if (abs(term) < tol * abs(sum)) return sum;
  }
  throw PrecisionError("hypergeometric series did not converge");
}

// K(m) from the logarithmic expansion about m = 1, with m1 = 1 - m.
template <class C>
C k_near_one(const C& m1) {
  using R = real_t<C>;
  using std::abs;
  using std::log;
  const C L = log(C(16) / m1) / R(2);  // ln(4 / sqrt(m1))
  C coef(1), sum(0);
  R d = 0;  // ln 4 - d(n) relative part
  const R tol = eps_v<C>() / R(4);
  for (int n = 0; n < 200000; ++n) {
    const C term = coef * (L - d);
    sum += term;
    if (n > 0 && abs(term) < tol * abs(sum)) return sum;
    const R r = R(2 * n + 1) / R(2 * n + 2);
    coef *= r * r * m1;
    d += R(2) / (R(2 * n + 1) * R(2 * n + 2));
  }
  throw PrecisionError("logarithmic series did not converge");
}

}  // namespace detail

// K(m) by the hypergeometric series, continued with the Pfaff transformation
// and the logarithmic expansion about m = 1.  Throws PrecisionError near
// m = exp(+-i pi/3), where none of the four expansions converges quickly.
template <class C>
C hypergeometric_K(const C& m, const C& one_minus_m, double radius = 0.9) {
  using R = real_t<C>;
  using std::abs;
  using std::sqrt;
  const R half_pi = pi_v<C>() / R(2);
  const double am = static_cast<double>(abs(m)), a1 = static_cast<double>(abs(one_minus_m));
  const double ap = am / a1;  // |m / (m - 1)|
  double best = std::min({am, ap, a1, 1.0 / a1});
  if (best > radius) throw PrecisionError("hypergeometric route unavailable near exp(+-i pi/3)");
  if (best == am) return half_pi * detail::hyp_half(m);
  if (best == a1) return detail::k_near_one(one_minus_m);
  // Pfaff: K(m) = (1 - m)^(-1/2) K(m / (m - 1))
  const C mp = -m / one_minus_m, mp1 = C(1) / one_minus_m;
  const C pre = C(1) / sqrt(one_minus_m);
  if (best == ap) return pre * half_pi * detail::hyp_half(mp);
  return pre * detail::k_near_one(mp1);
}

}  // namespace leg
