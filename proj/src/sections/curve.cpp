#include "leg/sections/curve.hpp"

#include <set>

namespace leg {

CurveFF CurveFF::make(FFElement a, FFElement b, FFElement c) {
  CurveFF E;
  E.a = std::move(a);
  E.b = std::move(b);
  E.c = std::move(c);
  // discriminant of the cubic times 16
  const FFElement& A = E.a;
  const FFElement& B = E.b;
  const FFElement& C = E.c;
  FFElement d = A * A * B * B - FFElement(4) * B * B * B - FFElement(4) * A * A * A * C - FFElement(27) * C * C +
                FFElement(18) * A * B * C;
  E.disc = FFElement(16) * d;
  if (E.disc.is_zero()) throw std::domain_error("singular curve");
  return E;
}

CurveFF CurveFF::legendre(const ZPoly& modulus) {
  RatFunc l = RatFunc::lambda();
  return make(FFElement(-(l + RatFunc(1)), RatFunc(), modulus), FFElement(l, RatFunc(), modulus),
              FFElement(RatFunc(), RatFunc(), modulus));
}

ZPoly CurveFF::modulus() const {
  for (const FFElement* e : {&a, &b, &c})
    if (e->has_extension()) return e->modulus();
  return {};
}

SectionPoint negate(const SectionPoint& p) {
  if (p.is_O()) return p;
  return SectionPoint::at(p.x, -p.y);
}

SectionPoint add(const CurveFF& E, const SectionPoint& p, const SectionPoint& q) {
  if (p.is_O()) return q;
  if (q.is_O()) return p;
  FFElement s;
  if (p.x == q.x) {
    if ((p.y + q.y).is_zero()) return SectionPoint::O();
    s = (FFElement(3) * p.x * p.x + FFElement(2) * E.a * p.x + E.b) / (FFElement(2) * p.y);
  } else {
    s = (q.y - p.y) / (q.x - p.x);
  }
  FFElement x3 = s * s - E.a - p.x - q.x;
  FFElement y3 = s * (p.x - x3) - p.y;
  return SectionPoint::at(x3, y3);
}

SectionPoint scalar_mul(const CurveFF& E, long n, const SectionPoint& p) {
  if (n < 0) return negate(scalar_mul(E, -n, p));
  SectionPoint r = SectionPoint::O(), b = p;
  while (n) {
    if (n & 1) r = add(E, r, b);
    n >>= 1;
    if (n) b = add(E, b, b);
  }
  return r;
}

namespace {

// Places of the field of the given elements where any of them has a pole.
std::vector<Place> pole_places(const std::vector<const FFElement*>& xs, const ZPoly& modulus) {
  std::set<Place> out;
  for (const FFElement* x : xs) {
    if (x->is_zero()) continue;
    FFElement y = modulus.is_zero() ? *x : x->lifted(modulus);
    for (const auto& [v, o] : divisor(y))
      if (o < 0) out.insert(v);
  }
  return {out.begin(), out.end()};
}

ZPoly field_modulus(const CurveFF& E, const SectionPoint& p) {
  ZPoly f = E.modulus();
  if (!p.is_O()) {
    if (p.x.has_extension()) f = p.x.modulus();
    if (p.y.has_extension()) f = p.y.modulus();
  }
  return f;
}

int field_degree(const ZPoly& f) { return f.is_zero() ? 1 : 2; }

}  // namespace

CurveHeight curve_height(const CurveFF& E) {
  CurveHeight out;
  const ZPoly f = E.modulus();
  for (const Place& v : pole_places({&E.a, &E.b, &E.c}, f)) {
    int m = 0;
    auto lift = [&](const FFElement& x) { return f.is_zero() ? x : x.lifted(f); };
    if (!E.a.is_zero()) m = std::max(m, -6 * ord_at(lift(E.a), v));
    if (!E.b.is_zero()) m = std::max(m, -3 * ord_at(lift(E.b), v));
    if (!E.c.is_zero()) m = std::max(m, -2 * ord_at(lift(E.c), v));
    if (m > 0) {
      out.per_place.emplace_back(v, m * v.degree());
      out.h += m * v.degree();
    }
  }
  return out;
}

int naive_height_point(const CurveFF& E, const SectionPoint& p) {
  if (p.is_O()) throw std::domain_error("naive height of the identity section");
  const ZPoly f = field_modulus(E, p);
  FFElement x = f.is_zero() ? p.x : p.x.lifted(f), y = f.is_zero() ? p.y : p.y.lifted(f);
  // At places where a, b, c are integral, poles of x and y coincide with
  // v(y) = 3 v(x) / 2, so those places contribute the pole divisor of y.
  int h = y.is_zero() ? 0 : height(y);
  std::set<Place> bad;
  for (const Place& v : pole_places({&E.a, &E.b, &E.c}, f)) bad.insert(v);
  for (const Place& v : places_over(Place::infinity(), f)) bad.insert(v);
  for (const Place& v : bad) {
    int vx = x.is_zero() ? 1 : ord_at(x, v);
    int vy = y.is_zero() ? 1 : ord_at(y, v);
    int full = std::max({0, -vx, -vy});
    int ypart = std::max(0, -vy);
    h += (full - ypart) * v.degree();
  }
  return h;
}

Q naive_height_upper_bound(const CurveFF& E, const SectionPoint& p) {
  if (p.is_O()) throw std::domain_error("naive height of the identity section");
  const ZPoly f = field_modulus(E, p);
  FFElement x = f.is_zero() ? p.x : p.x.lifted(f);
  CurveFF Ef = f.is_zero() ? E : CurveFF::make(E.a.lifted(f), E.b.lifted(f), E.c.lifted(f));
  return Q(3, 2) * height(x) + Q(1, 4) * curve_height(Ef).h;
}

Q zimmer_check(const CurveFF& E, const SectionPoint& p, const Q& hhat) {
  if (p.is_O()) throw std::domain_error("Zimmer check excludes the identity section");
  const ZPoly f = field_modulus(E, p);
  CurveFF Ef = f.is_zero() ? E : CurveFF::make(E.a.lifted(f), E.b.lifted(f), E.c.lifted(f));
  Q hE = curve_height(Ef).h;
  Q hp = naive_height_point(Ef, p);
  Q hh = hhat * field_degree(f);
  Q d = hp - Q(3, 2) * hh;
  if (d < 0) d = -d;
  return hE / 2 - d;
}

ShiftCheck near_origin_shift_check(const CurveFF& E, const SectionPoint& p, const SectionPoint& q0, const Place& v) {
  if (p.is_O() || q0.is_O()) throw std::domain_error("shift check needs affine points");
  if (!q0.y.is_zero()) throw std::domain_error("Q0 must be a point of order 2");
  if (p == q0) throw std::domain_error("P must differ from Q0");
  const ZPoly f = v.modulus;
  CurveFF Ef = f.is_zero() ? E : CurveFF::make(E.a.lifted(f), E.b.lifted(f), E.c.lifted(f));
  auto lift = [&](const FFElement& x) { return f.is_zero() ? x : x.lifted(f); };
  SectionPoint s = add(Ef, SectionPoint::at(lift(p.x), lift(p.y)), SectionPoint::at(lift(q0.x), lift(q0.y)));
  ShiftCheck out;
  if (s.is_O()) throw std::domain_error("P + Q0 is the identity");
  FFElement d = s.x - lift(q0.x);
  out.lhs = d.is_zero() ? INT32_MAX : std::max(0, ord_at(d, v));
  out.rhs = -ord_at(lift(p.x), v) - 2 * curve_height(Ef).h;
  return out;
}

namespace {

RatFunc base_part(const FFElement& e) {
  if (!e.in_base()) throw std::domain_error("curve coefficients must lie in Q(l)");
  return e.a();
}

}  // namespace

RatFunc eval_xpoly(const XPoly& p, const RatFunc& x) {
  RatFunc acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeffs()[i];
  return acc;
}

MultByM mult_by_m_abscissa(const CurveFF& E, int m) {
  if (m < 2) throw std::domain_error("mult_by_m_abscissa needs m >= 2");
  const RatFunc a = base_part(E.a), b = base_part(E.b), c = base_part(E.c);
  const XPoly x = XPoly::x();
  const XPoly Y2({c, b, a, RatFunc(1)});
  const RatFunc b2 = RatFunc(4) * a, b4 = RatFunc(2) * b, b6 = RatFunc(4) * c, b8 = RatFunc(4) * a * c - b * b;
  // f_n: psi_n for odd n, psi_n / y for even n
  std::vector<XPoly> f(m + 2);
  f[0] = XPoly();
  f[1] = XPoly(RatFunc(1));
  if (m + 1 >= 2) f[2] = XPoly(RatFunc(2));
  if (m + 1 >= 3) f[3] = XPoly({b8, RatFunc(3) * b6, RatFunc(3) * b4, b2, RatFunc(3)});
  if (m + 1 >= 4)
    f[4] = XPoly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, RatFunc(10) * b8, RatFunc(10) * b6, RatFunc(5) * b4, b2,
                  RatFunc(2)})
               .scaled(RatFunc(2));
  const XPoly Y4 = Y2 * Y2;
  for (int n = 5; n <= m + 1; ++n) {
    const int k = n / 2;
    if (n % 2) {
      if (k % 2 == 0)
        f[n] = f[k + 2] * f[k].pow(3) * Y4 - f[k - 1] * f[k + 1].pow(3);
      else
        f[n] = f[k + 2] * f[k].pow(3) - f[k - 1] * f[k + 1].pow(3) * Y4;
    } else {
      f[n] = (f[k] * (f[k + 2] * f[k - 1] * f[k - 1] - f[k - 2] * f[k + 1] * f[k + 1])).scaled(RatFunc(Q(1, 2)));
    }
  }
  MultByM out;
  out.m = m;
  if (m % 2) {
    out.num = x * f[m] * f[m] - Y2 * f[m - 1] * f[m + 1];
    out.den = f[m] * f[m];
  } else {
    out.num = x * f[m] * f[m] * Y2 - f[m - 1] * f[m + 1];
    out.den = f[m] * f[m] * Y2;
  }
  out.num_monic = out.num.degree() == m * m && out.num.lc() == RatFunc(1);
  out.den_lc_is_m2 = out.den.degree() == m * m - 1 && out.den.lc() == RatFunc(m * m);
  return out;
}

}  // namespace leg
