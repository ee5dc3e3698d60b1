#include "doctest.h"
#include "leg/exact/poly.hpp"

using namespace leg;

namespace {
ZPoly zp(const char* s) { return to_zpoly(parse_poly(s)); }
}

TEST_CASE("parse and print round trip") {
  QPoly p = parse_poly("3*l^2 - 16l + 16");
  CHECK(to_string(p) == "3*l^2 - 16*l + 16");
  CHECK(parse_poly("(l-1)^2") == parse_poly("l^2-2*l+1"));
  CHECK(to_string(parse_poly("l/2 - 1/3")) == "1/2*l - 1/3");
  CHECK_THROWS_AS(parse_poly("l +* 2"), std::invalid_argument);
}

TEST_CASE("gcd over Z") {
  ZPoly a = zp("(l-2)^3*(3*l^2-16*l+16)*(l+7)");
  ZPoly b = zp("(l-2)*(3*l^2-16*l+16)^2*(l^5+l+1)");
  CHECK(gcd(a, b) == zp("(l-2)*(3*l^2-16*l+16)"));
  CHECK(gcd(zp("l^2+1"), zp("l^2-1")) == ZPoly(1));
  CHECK(gcd(zp("6*l+6"), zp("4*l^2-4")) == zp("l+1"));
}

TEST_CASE("squarefree decomposition") {
  ZPoly b4 = zp("32*l^2*(l-2)*(l-4)^2*(3*l-4)^2");
  auto sf = squarefree_decompose(b4);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].multiplicity == 1);
  CHECK(sf[0].factor == zp("l-2"));
  CHECK(sf[1].multiplicity == 2);
  CHECK(sf[1].factor == zp("l*(l-4)*(3*l-4)"));
}

TEST_CASE("factorization") {
  ZPoly f = zp("-12*(l^4+1)*(l^2-2)^3*(2*l+3)*(l^3-l-1)^2");
  Factorization fa = factor(f);
  ZPoly prod(1);
  for (auto& x : fa.factors) prod = prod * x.factor.pow(x.multiplicity);
  CHECK(to_qpoly(prod).scaled(fa.unit) == to_qpoly(f));
  CHECK(fa.factors.size() == 4);
  CHECK(is_irreducible(zp("l^4+1")));
  CHECK(!is_irreducible(zp("l^4+4")));
  // many modular factors: Swinnerton-Dyer type product of quadratics
  ZPoly g = zp("(l^2-2)*(l^2-3)*(l^2-5)*(l^2-7)*(l+11)");
  CHECK(factor(g).factors.size() == 5);
}

TEST_CASE("eisenstein and sqrt") {
  CHECK(eisenstein(zp("l^3+2*l+2"), 2));
  CHECK(!eisenstein(zp("l^3+2*l+4"), 2));
  QPoly r;
  CHECK(poly_sqrt(parse_poly("(3*l^2-16*l+16)^2/4"), r));
  CHECK(r == parse_poly("3/2*l^2-8*l+8"));
  CHECK(!poly_sqrt(parse_poly("l^2+1"), r));
}

TEST_CASE("unary minus binds looser than powers") {
  CHECK(parse_poly("-(l-4)^2") == parse_poly("-(l^2-8*l+16)"));
  CHECK(parse_poly("-l^2") == parse_poly("0-l*l"));
  CHECK(parse_poly("2^3") == QPoly(Q(8)));
}
