#pragma once

// Abscissae x(n sigma) = A_n / B_n of multiples of a section with abscissa in
// Q(l) on the Legendre curve, via the division-polynomial recurrence in
// homogeneous coordinates x = p/q.

#include <optional>
#include <vector>

#include "leg/sections/curve.hpp"

namespace leg {

// A section of y^2 = x(x-1)(x-l) whose abscissa lies in Q(l); y lives in
// Q(l)(mu) with mu^2 = modulus (the non-square part of x^3 - (1+l)x^2 + lx).
struct SectionSpec {
  RatFunc x;
  ZPoly modulus;  // mu^2
  RatFunc y_coeff;  // y = y_coeff * mu
  ZPoly ramified;  // primitive squarefree part of the modulus (l - 2 for the default)

  static SectionSpec from_abscissa(const RatFunc& x);
  static SectionSpec standard() { return from_abscissa(RatFunc(2)); }  // (2, mu), mu^2 = 4 - 2l
  CurveFF curve() const { return CurveFF::legendre(modulus); }
  SectionPoint point() const;
};

struct AbscissaFraction {
  int n = 0;
  ZPoly A, B;  // coprime, lc(B) > 0, integer content shared only through A
  bool torsion = false;  // n sigma = O
  // B = b_n C^2 (odd n) or b_n * ramified * C^2 (even n)
  Q b_n;
  ZPoly C;
  bool shape_ok = false;
  int deg_A() const { return A.degree(); }
  int deg_B() const { return B.degree(); }
  RatFunc x() const { return RatFunc(A, B); }
};

// Fractions for n = 1..n_max (index n-1).  The parallel version distributes
// the per-n assembly over threads; the result is identical to the serial one.
std::vector<AbscissaFraction> abscissa_fractions(int n_max, const SectionSpec& s = SectionSpec::standard());
std::vector<AbscissaFraction> abscissa_fractions_serial(int n_max, const SectionSpec& s = SectionSpec::standard());
AbscissaFraction abscissa_fraction(int n, const SectionSpec& s = SectionSpec::standard());

struct DegreeProfile {
  int deg_A = 0, deg_B = 0;
};
DegreeProfile degree_profile(int n, const SectionSpec& s = SectionSpec::standard());
// Closed forms for the default section: ((n^2-1)/2, (n^2-1)/2) odd, (n^2/2, (n^2-2)/2) even.
DegreeProfile expected_degree_profile(int n);

struct HeightEstimate {
  std::vector<Q> estimates;  // max(deg A_n, deg B_n) / n^2, n = 1..n_max
  Q extrapolated;            // fit c0 + c1/n^2 on n_max and n_max - 2
};
HeightEstimate canonical_height_estimate(int n_max, const SectionSpec& s = SectionSpec::standard());
HeightEstimate canonical_height_estimate(const std::vector<AbscissaFraction>& fr);

}  // namespace leg
