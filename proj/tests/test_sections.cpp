#include <chrono>

#include "doctest.h"
#include "leg/sections/abscissa.hpp"

using namespace leg;

namespace {
ZPoly zp(const char* s) { return to_zpoly(parse_poly(s)); }
RatFunc rf(const char* s) { return RatFunc::parse(s); }
}  // namespace

TEST_CASE("golden abscissa table") {
  auto fr = abscissa_fractions(4);
  CHECK(fr[0].x() == RatFunc(2));
  CHECK(fr[1].x() == rf("-(l-4)^2/(8*(l-2))"));
  CHECK(fr[1].A == zp("-(l-4)^2"));
  CHECK(fr[1].B == zp("8*l-16"));
  CHECK(fr[1].b_n == 8);
  CHECK(fr[1].C == zp("1"));
  CHECK(fr[2].x() == rf("2*(5*l^2-16*l+16)^2/((l^2+8*l-16)^2)"));
  CHECK(fr[2].b_n == 1);
  CHECK(fr[2].C == zp("l^2+8*l-16"));
  CHECK(fr[3].x() == rf("-(l^4-80*l^3+352*l^2-512*l+256)^2/(32*(l-2)*l^2*(3*l^2-16*l+16)^2)"));
  CHECK(fr[3].b_n == 32);
  CHECK(fr[3].C == zp("l*(3*l^2-16*l+16)"));
  for (auto& a : fr) CHECK(a.shape_ok);
}

TEST_CASE("group law agrees with the division-polynomial path") {
  SectionSpec s = SectionSpec::standard();
  CurveFF E = s.curve();
  SectionPoint P = s.point();
  CHECK(E.contains(P));
  auto fr = abscissa_fractions_serial(6);
  for (int n = 1; n <= 6; ++n) {
    SectionPoint Q = scalar_mul(E, n, P);
    CHECK(E.contains(Q));
    CHECK(Q.x == FFElement(fr[n - 1].x()).lifted(s.modulus));
  }
  CHECK(add(E, P, negate(P)).is_O());
  CHECK(scalar_mul(E, -3, P) == negate(scalar_mul(E, 3, P)));
  SectionPoint T = SectionPoint::at(FFElement(0).lifted(s.modulus), FFElement(0).lifted(s.modulus));
  CHECK(add(E, T, T).is_O());
  for (int n = -4; n <= 4; ++n)
    for (int m = -4; m <= 4; ++m)
      if (std::abs(n) + std::abs(m) <= 6)
        CHECK(add(E, scalar_mul(E, n, P), scalar_mul(E, m, P)) == scalar_mul(E, n + m, P));
}

TEST_CASE("parallel and serial scans agree") {
  auto a = abscissa_fractions(12), b = abscissa_fractions_serial(12);
  for (int i = 0; i < 12; ++i) {
    CHECK(a[i].A == b[i].A);
    CHECK(a[i].B == b[i].B);
  }
}

TEST_CASE("degree laws and height estimate") {
  auto t0 = std::chrono::steady_clock::now();
  auto fr = abscissa_fractions(30);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("n <= 30 computed in " << secs << " s");
  for (auto& a : fr) {
    DegreeProfile e = expected_degree_profile(a.n);
    CHECK(a.deg_A() == e.deg_A);
    CHECK(a.deg_B() == e.deg_B);
    CHECK(gcd(a.A, a.B).degree() == 0);
    if (a.n <= 20) CHECK(a.shape_ok);
  }
  HeightEstimate h = canonical_height_estimate(fr);
  CHECK(h.estimates.back() >= Q(48, 100));
  CHECK(h.estimates.back() <= Q(52, 100));
  CHECK(h.extrapolated == Q(1, 2));
}

TEST_CASE("curve heights") {
  CHECK(curve_height(CurveFF::legendre()).h == 6);
  CHECK(curve_height(SectionSpec::standard().curve()).h == 12);
  CurveFF K = CurveFF::make(FFElement(0), FFElement(-1), FFElement(1));
  CHECK(curve_height(K).h == 0);
}

TEST_CASE("naive height and Zimmer slack") {
  SectionSpec s = SectionSpec::standard();
  CurveFF E = s.curve();
  SectionPoint P = s.point();
  CHECK(naive_height_point(E, P) == 1);
  CHECK(Q(naive_height_point(E, P)) <= naive_height_upper_bound(E, P));
  CHECK_THROWS(naive_height_point(E, SectionPoint::O()));
  SectionPoint Q1 = P;
  for (int n = 1; n <= 10; ++n) {
    Q slack = zimmer_check(E, Q1, Q(n * n, 2));
    CHECK(slack >= 0);
    CHECK(Q(naive_height_point(E, Q1)) <= naive_height_upper_bound(E, Q1));
    Q1 = add(E, Q1, P);
  }
  SectionPoint T = SectionPoint::at(FFElement(0).lifted(s.modulus), FFElement(0).lifted(s.modulus));
  CHECK(zimmer_check(E, T, Q(0)) >= 0);
}

TEST_CASE("pole orders of y are 3/2 those of x") {
  SectionSpec s = SectionSpec::standard();
  CurveFF E = s.curve();
  SectionPoint P = s.point(), Q1 = P;
  for (int n = 1; n <= 10; ++n) {
    for (const auto& [v, o] : divisor(Q1.x))
      if (o < 0) CHECK(2 * ord_at(Q1.y, v) == 3 * o);
    Q1 = add(E, Q1, P);
  }
}

TEST_CASE("shift by the 2-torsion point (0,0)") {
  SectionSpec s = SectionSpec::standard();
  CurveFF E = s.curve();
  SectionPoint P = s.point();
  SectionPoint Q0 = SectionPoint::at(FFElement(0).lifted(s.modulus), FFElement(0).lifted(s.modulus));
  SectionPoint P2 = scalar_mul(E, 2, P);
  Place v2 = places_over(Place::finite(zp("l-2")), s.modulus)[0];
  CHECK(near_origin_shift_check(E, P2, Q0, v2).holds());
  auto fr = abscissa_fractions(8);
  SectionPoint Pn = P;
  for (int n = 1; n <= 8; ++n) {
    if (fr[n - 1].B.degree() > 0)
      for (const auto& fa : factor(fr[n - 1].B).factors)
        for (const Place& v : places_over(Place::finite(fa.factor), s.modulus))
          CHECK(near_origin_shift_check(E, Pn, Q0, v).holds());
    Pn = add(E, Pn, P);
  }
}

TEST_CASE("multiplication-by-m maps") {
  CurveFF E = CurveFF::legendre();
  for (int m = 2; m <= 5; ++m) {
    MultByM phi = mult_by_m_abscissa(E, m);
    CHECK(phi.num_monic);
    CHECK(phi.den_lc_is_m2);
  }
  MultByM phi2 = mult_by_m_abscissa(E, 2);
  RatFunc a = E.a.a(), b = E.b.a(), c = E.c.a();
  XPoly n2({b * b - RatFunc(4) * a * c, RatFunc(-8) * c, RatFunc(-2) * b, RatFunc(), RatFunc(1)});
  XPoly d2({RatFunc(4) * c, RatFunc(4) * b, RatFunc(4) * a, RatFunc(4)});
  CHECK(phi2.num == n2);
  CHECK(phi2.den == d2);
  for (const char* xs : {"2", "l+3", "(l^2+1)/(l-5)", "3/(2*l+7)"}) {
    SectionSpec s = SectionSpec::from_abscissa(rf(xs));
    CurveFF Es = s.curve();
    SectionPoint P = s.point();
    REQUIRE(Es.contains(P));
    for (int m = 2; m <= 5; ++m) {
      MultByM phi = mult_by_m_abscissa(E, m);
      RatFunc lhs = eval_xpoly(phi.num, s.x) / eval_xpoly(phi.den, s.x);
      CHECK(FFElement(lhs).lifted(s.modulus) == scalar_mul(Es, m, P).x);
    }
  }
}
