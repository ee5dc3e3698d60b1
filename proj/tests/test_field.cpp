#include "doctest.h"
#include "leg/exact/place.hpp"
#include "leg/exact/serialize.hpp"

using namespace leg;

namespace {
ZPoly zp(const char* s) { return to_zpoly(parse_poly(s)); }
const ZPoly kF = zp("4-2*l");
}  // namespace

TEST_CASE("ratfunc normalization") {
  RatFunc x = RatFunc::parse("-(l-4)^2/(8*l-16)");
  CHECK(x.den() == zp("8*l-16"));
  CHECK(x.num() == zp("-(l-4)^2"));
  RatFunc y(zp("6*l^2-6"), zp("-4*l-4"));
  CHECK(y.num() == zp("-3*l+3"));
  CHECK(y.den() == zp("2"));
  CHECK((x - x).is_zero());
  CHECK(RatFunc::lambda().pow(3).derivative() == RatFunc(zp("3*l^2")));
}

TEST_CASE("derivative on the extension") {
  FFElement mu = FFElement::mu(kF);
  CHECK(mu.derivative() == FFElement(RatFunc(-1), RatFunc(), kF) / mu);
  CHECK(mu * mu == FFElement(RatFunc(kF)));
  FFElement u = FFElement::lambda(kF) + mu * FFElement(RatFunc::lambda());
  FFElement w = u * u;
  CHECK(w.derivative() == FFElement(2) * u * u.derivative());
}

TEST_CASE("valuations") {
  Place p2 = Place::finite(zp("l-2"));
  CHECK(ord_at(RatFunc(zp("l-2")), p2) == 1);
  auto over2 = places_over(p2, kF);
  REQUIRE(over2.size() == 1);
  CHECK(over2[0].type == Place::Type::Ramified);
  FFElement x2(RatFunc::parse("-(l-4)^2/(8*l-16)"), RatFunc(), kF);
  CHECK(ord_at(x2, over2[0]) == -2);
  FFElement mu = FFElement::mu(kF);
  FFElement xi = FFElement(2) * mu / FFElement(RatFunc(zp("(2-l)^2")), RatFunc(), kF);
  CHECK(ord_at(xi, over2[0]) == -3);
  CHECK(height(xi) == 3);
  CHECK(height_from_places(xi) == 3);
  CHECK(height(FFElement::lambda(kF)) == 2);
  CHECK(height(RatFunc::lambda()) == 1);
  CHECK_THROWS_AS(ord_at(FFElement(), over2[0]), std::domain_error);
}

TEST_CASE("split places and product formula") {
  // l = 0: f(0) = 4 = 2^2 splits
  auto over0 = places_over(Place::finite(zp("l")), kF);
  REQUIRE(over0.size() == 2);
  FFElement mu = FFElement::mu(kF);
  FFElement z = mu - FFElement(2);  // vanishes at the branch mu = +2
  CHECK(ord_at(z, over0[0]) == 1);
  CHECK(ord_at(z, over0[1]) == 0);
  for (const FFElement& x : {z, mu * FFElement(RatFunc::parse("(l+3)/(l^2+1)")) + FFElement(RatFunc::lambda()),
                             FFElement(RatFunc::parse("(l^3-5)/(l-7)^2")).lifted(kF)}) {
    int total = 0;
    for (const auto& [v, o] : divisor(x)) total += o * v.degree();
    CHECK(total == 0);
    CHECK(height(x) == height_from_places(x));
  }
}

TEST_CASE("json round trip") {
  FFElement x = FFElement::mu(kF) * FFElement(RatFunc::parse("(l+3)/(l^2+1)")) + FFElement(RatFunc::parse("l/3"));
  CHECK(ffelement_from_json(to_json(x)) == x);
  CHECK(to_json(parse_poly("1/2 - l")).dump() == R"(["1/2","-1/1"])");
}
