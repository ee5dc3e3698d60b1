#pragma once

// The Manin operator on points of the Legendre curve,
//   Xi(x, y) = 4l(1-l)(D(Dx/y) + Dx/(2(x-l)y)) + 4(1-2l)Dx/y + 2x(x-1)/((x-l)y),
// with D = d/dl, and the multiplicity bounds derived from it.

#include <map>
#include <string>
#include <vector>

#include "leg/sections/abscissa.hpp"

namespace leg {

struct XiResult {
  FFElement value;
  int height = 0;
  std::map<Place, int> per_place_orders;  // nonzero orders only
};

XiResult xi_apply(const FFElement& x, const FFElement& y);
FFElement xi_value(const FFElement& x, const FFElement& y);
bool xi_oddness_check(const FFElement& x, const FFElement& y);

// Xi(x, y) = Upsilon / y^3 with Upsilon = f0 D^2x + f (Dx)^2 + f1 Dx + f2;
// the f's are polynomials in x with coefficients in Z[l].
struct UpsilonForm {
  XPoly f0, f, f1, f2;
};
UpsilonForm upsilon_form();
FFElement upsilon_eval(const UpsilonForm& u, const FFElement& x);
// Upsilon as a polynomial in l for a polynomial abscissa x(l).
ZPoly upsilon_poly(const UpsilonForm& u, const ZPoly& x);

// 2 + max(0, ord_b Xi(sigma)).  Throws if Xi(sigma) = 0 (torsion section).
int multiplicity_bound(const SectionPoint& p, const Place& b);

struct MultiplicityReport {
  int n = 0;
  std::vector<std::pair<ZPoly, int>> table;  // squarefree factor of B_n -> w
  int max_w_away_from_2 = 0;
  int w_at_2 = 0;
  std::vector<ZPoly> flagged;  // factors with w = 4
  bool bounds_hold() const { return max_w_away_from_2 <= 4 && w_at_2 <= 2; }
};
MultiplicityReport multiplicity_report(const AbscissaFraction& a);
std::vector<MultiplicityReport> pole_multiplicity_scan(int n_max);

struct XiHeightRatio {
  int h_xi = 0, four_h_x = 0, excess = 0;
};
XiHeightRatio xi_height_ratio(const FFElement& x, const FFElement& y);

struct SharpnessReport {
  int d = 0;
  ZPoly xi;                  // l^d + 6l + 70
  std::vector<ZPoly> denom;  // xi, xi - 1, xi - l
  ZPoly P;                   // Xi^2 = P / prod denom^3
  Z expected_lc;             // 4(d-1)^4
  bool leading_term_ok = false;
  std::vector<std::pair<int, bool>> eisenstein;  // prime -> criterion holds for the matching factor
  std::vector<int> gcd_degrees;                   // deg gcd(P, denominator factor)
  bool xi_matches = false;                        // Xi from xi_apply squares to P / denom^3
};
SharpnessReport sharpness_family(int d, bool cross_check = true);

// Elements a + b mu + c nu + d mu nu of Q(l)(mu, nu), mu^2 = f, nu^2 = g.
struct BiquadElement {
  RatFunc a, b, c, d;
  ZPoly f, g;
  BiquadElement operator+(const BiquadElement& o) const;
  BiquadElement operator*(const BiquadElement& o) const;
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
  // Characteristic polynomial over Q(l), coefficients ascending.
  std::vector<RatFunc> charpoly() const;
  int height() const { return height_from_charpoly(charpoly()); }
};

struct TwoBetaResult {
  BiquadElement beta;
  int h_beta = 0;
  int max_order = 0;  // 2 + h(beta): bound on the order of a torsion abscissa
};
// beta = 2n mu/(2-l)^2 + 2m nu/(3-l)^2 with mu^2 = 4-2l, nu^2 = 18-6l.
TwoBetaResult two_section_beta(long n, long m);

}  // namespace leg
