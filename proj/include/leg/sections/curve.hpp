#pragma once

// Weierstrass curves y^2 = x^3 + a x^2 + b x + c over Q(l) or Q(l)(mu), and
// their points (sections) with the chord-tangent law.

#include <optional>
#include <vector>

#include "leg/exact/place.hpp"

namespace leg {

struct SectionPoint {
  bool infinity = true;
  FFElement x, y;

  static SectionPoint O() { return {}; }
  static SectionPoint at(FFElement x, FFElement y) { return {false, std::move(x), std::move(y)}; }
  bool is_O() const { return infinity; }
  friend bool operator==(const SectionPoint& p, const SectionPoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

struct CurveFF {
  FFElement a, b, c;
  FFElement disc;

  static CurveFF make(FFElement a, FFElement b, FFElement c);
  // y^2 = x(x-1)(x-l), optionally over Q(l)(sqrt f).
  static CurveFF legendre(const ZPoly& modulus = {});

  FFElement rhs(const FFElement& x) const { return ((x + a) * x + b) * x + c; }
  bool contains(const SectionPoint& p) const { return p.is_O() || p.y * p.y == rhs(p.x); }
  // Common extension modulus of the coefficients (zero if over Q(l)).
  ZPoly modulus() const;
};

SectionPoint negate(const SectionPoint& p);
SectionPoint add(const CurveFF& E, const SectionPoint& p, const SectionPoint& q);
SectionPoint scalar_mul(const CurveFF& E, long n, const SectionPoint& p);

// h(E) = sum_v max{0, -6v(a), -3v(b), -2v(c)} deg(v).
struct CurveHeight {
  int h = 0;
  std::vector<std::pair<Place, int>> per_place;
};
CurveHeight curve_height(const CurveFF& E);

// h(P) = sum_v max{0, -v(x), -v(y)} deg(v).  Throws for P = O.
int naive_height_point(const CurveFF& E, const SectionPoint& p);
// Upper bound (3/2) h(x) + (1/4) h(E) for h(P) (as a rational).
Q naive_height_upper_bound(const CurveFF& E, const SectionPoint& p);

// (1/2) h(E) - |h(P) - (3/2) hhat(P)|, with hhat given in the Q(l)
// normalization (hhat(sigma) = 1/2 for the default section) and rescaled by
// the degree of the field P lives in.
Q zimmer_check(const CurveFF& E, const SectionPoint& p, const Q& hhat);

struct ShiftCheck {
  int lhs = 0;
  int rhs = 0;
  bool holds() const { return lhs >= rhs; }
};
// lhs = max{0, v(x(P+Q0) - x(Q0))}, rhs = -v(x(P)) - 2h(E) for a 2-torsion Q0.
ShiftCheck near_origin_shift_check(const CurveFF& E, const SectionPoint& p, const SectionPoint& q0, const Place& v);

// x(mP) = phi_m(x(P)) as num/den polynomials in x with coefficients in Q(l).
using XPoly = DensePoly<RatFunc>;
struct MultByM {
  int m = 0;
  XPoly num, den;
  bool num_monic = false;
  bool den_lc_is_m2 = false;
};
MultByM mult_by_m_abscissa(const CurveFF& E, int m);
RatFunc eval_xpoly(const XPoly& p, const RatFunc& x);

}  // namespace leg
