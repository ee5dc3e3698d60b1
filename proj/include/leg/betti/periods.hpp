#pragma once

// Periods and quasi-periods of y^2 = x(x-1)(x-l) for the differential dx/y:
//   rho1 = 4K(l), rho2 = 4iK(1-l),
//   eta1 = E(l) - (2-l)K(l)/3, eta2 = i((1+l)K(1-l)/3 - E(1-l)),
// principal branches on C minus (-inf,0] and [1,inf).  Then
// rho2 eta1 - rho1 eta2 = 2 pi i and rho' = (2 eta - (1-2l) rho/6) / (l(1-l)).

#include "leg/betti/elliptic.hpp"

namespace leg {

enum class PeriodRoute { AGM, Carlson, Hypergeometric };

template <class C>
struct PeriodFrame {
  C lambda, one_minus_lambda;
  C rho1, rho2, eta1, eta2;
  real_t<C> V;  // Im(rho1 conj(rho2)); rho1 conj(rho2) - rho2 conj(rho1) = 2iV
  C tau;        // rho2 / rho1, Im tau > 0

  C drho1() const { return drho(rho1, eta1); }
  C drho2() const { return drho(rho2, eta2); }
  C legendre_residual() const {
    using R = real_t<C>;
    return rho2 * eta1 - rho1 * eta2 - C(R(0), R(2) * pi_v<C>());
  }

 private:
  C drho(const C& rho, const C& eta) const {
    using R = real_t<C>;
    return (R(2) * eta - (R(2) * one_minus_lambda - R(1)) * rho / R(6)) / (lambda * one_minus_lambda);
  }
};

template <class C>
KE<C> complete_KE(const C& m, const C& one_minus_m, PeriodRoute route) {
  if (route == PeriodRoute::Carlson) return carlson_KE(m, one_minus_m);
  return agm_KE(m, one_minus_m);
}

// Frame at lambda, given lambda and 1 - lambda separately.  The
// hypergeometric route only replaces K; E still comes from the AGM.
template <class C>
PeriodFrame<C> periods(const C& lam, const C& oml, PeriodRoute route = PeriodRoute::AGM) {
  using R = real_t<C>;
  using std::abs;
  using std::conj;
  if (abs(lam) == 0 || abs(oml) == 0) throw std::domain_error("singular fiber at lambda in {0, 1}");
  KE<C> a = complete_KE(lam, oml, route == PeriodRoute::Hypergeometric ? PeriodRoute::AGM : route);
  KE<C> b = complete_KE(oml, lam, route == PeriodRoute::Hypergeometric ? PeriodRoute::AGM : route);
  if (route == PeriodRoute::Hypergeometric) {
    a.K = hypergeometric_K(lam, oml);
    b.K = hypergeometric_K(oml, lam);
  }
  const C I(R(0), R(1));
  PeriodFrame<C> f;
  f.lambda = lam;
  f.one_minus_lambda = oml;
  f.rho1 = R(4) * a.K;
  f.rho2 = R(4) * I * b.K;
  f.eta1 = a.E - (R(1) + oml) * a.K / R(3);
  f.eta2 = I * ((R(2) - oml) * b.K / R(3) - b.E);
  f.V = (f.rho1 * conj(f.rho2)).imag();
  f.tau = f.rho2 / f.rho1;
  if (!(f.V != 0)) throw std::domain_error("degenerate period frame");
  if (route != PeriodRoute::Hypergeometric) {
    const R scale = std::max(R(1), abs(f.rho2 * f.eta1) + abs(f.rho1 * f.eta2));
    if (abs(f.legendre_residual()) > R(1e4) * eps_v<C>() * scale)
      throw PrecisionError("Legendre relation lost at working precision");
  }
  return f;
}

template <class C>
PeriodFrame<C> periods(const C& lam, PeriodRoute route = PeriodRoute::AGM) {
  return periods(lam, C(1) - lam, route);
}

// 4l(1-l) rho'' + 4(1-2l) rho' - rho by central differences with step h.
template <class C>
std::pair<C, C> picard_fuchs_residual(const C& lam, const real_t<C>& h) {
  using R = real_t<C>;
  const PeriodFrame<C> f0 = periods(lam), fp = periods<C>(lam + C(h)), fm = periods<C>(lam - C(h));
  auto res = [&](const C& r0, const C& rp, const C& rm) {
    const C d1 = (rp - rm) / (R(2) * h), d2 = (rp - R(2) * r0 + rm) / (h * h);
    return R(4) * lam * (C(1) - lam) * d2 + R(4) * (C(1) - R(2) * lam) * d1 - r0;
  };
  return {res(f0.rho1, fp.rho1, fm.rho1), res(f0.rho2, fp.rho2, fm.rho2)};
}

}  // namespace leg
