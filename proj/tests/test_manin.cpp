#include <random>

#include "doctest.h"
#include "leg/manin/xi.hpp"

using namespace leg;

namespace {
ZPoly zp(const char* s) { return to_zpoly(parse_poly(s)); }
RatFunc rf(const char* s) { return RatFunc::parse(s); }

Place first_place_over(const ZPoly& pi, const ZPoly& f) { return places_over(Place::finite(pi), f).front(); }
}  // namespace

TEST_CASE("Xi of the two basic sections") {
  SectionSpec s = SectionSpec::standard(), t = SectionSpec::from_abscissa(RatFunc(3));
  CHECK(s.modulus == zp("4-2*l"));
  CHECK(t.modulus == zp("18-6*l"));
  SectionPoint P = s.point(), Q = t.point();
  XiResult a = xi_apply(P.x, P.y), b = xi_apply(Q.x, Q.y);
  CHECK(a.value == FFElement(RatFunc(), rf("2/((2-l)^2)"), s.modulus));
  CHECK(b.value == FFElement(RatFunc(), rf("2/((3-l)^2)"), t.modulus));
  CHECK(a.height == 3);
  const Place r2 = first_place_over(zp("l-2"), s.modulus);
  CHECK(r2.type == Place::Type::Ramified);
  CHECK(a.per_place_orders.at(r2) == -3);
  for (const char* pi : {"l", "l-1", "l-5", "l^2+1"}) CHECK(ord_at(a.value, first_place_over(zp(pi), s.modulus)) == 0);
  CHECK(xi_oddness_check(P.x, P.y));
  CHECK(xi_oddness_check(Q.x, Q.y));
  auto hr = xi_height_ratio(P.x, P.y);
  CHECK(hr.h_xi == 3);
  CHECK(hr.four_h_x == 0);
  CHECK(hr.excess == 3);
}

TEST_CASE("Xi error contract") {
  const FFElement l = FFElement::lambda();
  CHECK_THROWS_WITH(xi_apply(FFElement(0), FFElement(0)), "Xi singular at 2-torsion");
  CHECK_THROWS_WITH(xi_apply(l, FFElement(0)), "Xi undefined: x - l vanishes identically");
  CHECK_THROWS_AS(xi_apply(FFElement(2), FFElement(1)), std::domain_error);
  CHECK_THROWS_AS(xi_height_ratio(FFElement(5), FFElement(1)), std::domain_error);
}

TEST_CASE("Xi is additive along multiples") {
  SectionSpec s = SectionSpec::standard();
  CurveFF E = s.curve();
  SectionPoint P = s.point();
  const FFElement xi1 = xi_value(P.x, P.y);
  for (int n = 2; n <= 6; ++n) {
    SectionPoint Q = scalar_mul(E, n, P);
    CHECK(xi_value(Q.x, Q.y) == FFElement(n) * xi1);
    CHECK(xi_oddness_check(Q.x, Q.y));
  }
  SectionPoint Q = scalar_mul(E, -3, P);
  CHECK(xi_value(Q.x, Q.y) == FFElement(-3) * xi1);
}

TEST_CASE("torsion sections are killed by Xi") {
  // (1 + s, s(1 + s)) with s^2 = 1 - l has order 4
  const ZPoly f = zp("1-l");
  const FFElement s = FFElement::mu(f), one(1);
  SectionPoint T = SectionPoint::at(one + s, s * (one + s));
  CurveFF E = CurveFF::legendre(f);
  CHECK(E.contains(T));
  CHECK(scalar_mul(E, 4, T).is_O());
  CHECK(xi_value(T.x, T.y).is_zero());
  CHECK(upsilon_eval(upsilon_form(), T.x).is_zero());
  CHECK_THROWS_WITH(multiplicity_bound(T, places_over(Place::finite(zp("l")), f).front()), "section is torsion");
  // constant 2-torsion abscissae
  for (long c : {0L, 1L}) CHECK(upsilon_eval(upsilon_form(), FFElement(c)).is_zero());
}

TEST_CASE("Upsilon form") {
  UpsilonForm u = upsilon_form();
  CHECK(u.f0.degree() == 3);
  CHECK(u.f.degree() == 2);
  CHECK(u.f1.degree() == 3);
  CHECK(u.f2.degree() == 4);
  for (const XPoly* p : {&u.f0, &u.f, &u.f1, &u.f2})
    for (const RatFunc& c : p->coeffs()) CHECK(c.is_polynomial());
  SectionPoint P = SectionSpec::standard().point();
  CHECK(upsilon_eval(u, P.x) / P.y.pow(3) == xi_value(P.x, P.y));

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> co(-5, 5);
  int tested = 0;
  while (tested < 10) {
    ZPoly num({Z(co(rng)), Z(co(rng)), Z(co(rng)), Z(tested % 2 ? co(rng) : 0)});
    ZPoly den = tested % 3 == 2 ? ZPoly({Z(co(rng)), Z(1)}) : ZPoly(Z(1));
    if (num.degree() < 1) continue;
    SectionSpec s = SectionSpec::from_abscissa(RatFunc(num, den));
    if (s.modulus.degree() < 1) continue;
    SectionPoint p = s.point();
    CHECK(upsilon_eval(u, p.x) / p.y.pow(3) == xi_value(p.x, p.y));
    CHECK(xi_oddness_check(p.x, p.y));
    ++tested;
  }
}

TEST_CASE("pole multiplicities of B_n") {
  auto scan = pole_multiplicity_scan(20);
  REQUIRE(scan.size() == 20);
  CHECK(scan[0].table.empty());
  for (const auto& r : scan) {
    CHECK(r.bounds_hold());
    CHECK(r.flagged.empty());
  }
  const auto& r4 = scan[3];
  std::map<std::string, int> t;
  for (const auto& [p, w] : r4.table) t[to_string(p)] = w;
  CHECK(t.size() == 3);
  CHECK(t["l"] == 2);
  CHECK(t["3*l^2 - 16*l + 16"] == 2);
  CHECK(t["l - 2"] == 1);
  CHECK(r4.w_at_2 == 1);
}

TEST_CASE("torsion multiplicities stay under the Xi bound") {
  SectionSpec s = SectionSpec::standard();
  SectionPoint P = s.point();
  const ZPoly two = zp("l-2");
  CHECK(multiplicity_bound(P, first_place_over(two, s.modulus)) == 2);
  auto fr = abscissa_fractions(10);
  for (const auto& a : fr) {
    MultiplicityReport r = multiplicity_report(a);
    for (const auto& [p, w] : r.table) {
      if (p == two) continue;
      for (const auto& fac : factor(p).factors) {
        Place b = first_place_over(fac.factor, s.modulus);
        CHECK(w <= 2 * multiplicity_bound(P, b));
      }
    }
  }
}

TEST_CASE("sharpness family") {
  for (int d = 2; d <= 6; ++d) {
    SharpnessReport r = sharpness_family(d);
    CHECK(r.leading_term_ok);
    CHECK(r.P.lc() == r.expected_lc);
    CHECK(r.xi_matches);
    for (const auto& [p, ok] : r.eisenstein) CHECK(ok);
  }
  SharpnessReport r9 = sharpness_family(9, false);
  CHECK(r9.leading_term_ok);
  for (int g : r9.gcd_degrees) CHECK(g == 0);
  const ZPoly F = r9.denom[0] * r9.denom[1] * r9.denom[2];
  auto hr = xi_height_ratio(FFElement(RatFunc(r9.xi), RatFunc(), F), FFElement::mu(F));
  CHECK(hr.four_h_x == 4 * 9 * 2);
  CHECK(hr.h_xi >= 4 * 9 * 2);
  MESSAGE("d = 9: h(Xi) = " << hr.h_xi << ", 4h(x) = " << hr.four_h_x);
}

TEST_CASE("two-section beta") {
  auto r = two_section_beta(1, 1);
  CHECK(r.h_beta == 12);
  CHECK(r.max_order == 14);
  CHECK(two_section_beta(3, 0).h_beta == 6);
  CHECK(two_section_beta(0, 5).h_beta == 6);
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> co(-50, 50);
  for (int i = 0; i < 20; ++i) {
    long n = co(rng), m = co(rng);
    if (n == 0 && m == 0) continue;
    CHECK(two_section_beta(n, m).h_beta <= 12);
  }
  CHECK_THROWS_AS(two_section_beta(0, 0), std::domain_error);
  // beta^2 for m = 0 matches Xi(n sigma)^2 = 4 n^2 (4 - 2l)/(2 - l)^4
  BiquadElement b = two_section_beta(2, 0).beta;
  BiquadElement sq = b * b;
  CHECK(sq.a == rf("16*(4-2*l)/((2-l)^4)"));
  CHECK(sq.b.is_zero());
}
