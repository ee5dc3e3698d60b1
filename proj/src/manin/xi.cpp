#include "leg/manin/xi.hpp"

#include <array>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace leg {

namespace {

ZPoly field_of(const FFElement& x, const FFElement& y) {
  if (y.has_extension()) return y.modulus();
  return x.modulus();
}

FFElement lift_to(const FFElement& e, const ZPoly& f) { return f.is_zero() ? e : e.lifted(f); }

void require_on_curve(const FFElement& x, const FFElement& y) {
  const FFElement l = FFElement::lambda();
  if (!(y * y == x * (x - FFElement(1)) * (x - l))) throw std::domain_error("point not on y^2 = x(x-1)(x-l)");
}

}  // namespace

FFElement xi_value(const FFElement& x, const FFElement& y) {
  const FFElement l = FFElement::lambda();
  const FFElement xl = x - l;
  if (xl.is_zero()) throw std::domain_error("Xi undefined: x - l vanishes identically");
  if (y.is_zero()) throw std::domain_error("Xi singular at 2-torsion");
  const FFElement one(1);
  const FFElement Dx = x.derivative();
  const FFElement t = Dx / y;
  const FFElement L = FFElement(4) * l * (one - l);
  return L * (t.derivative() + Dx / (FFElement(2) * xl * y)) + FFElement(4) * (one - FFElement(2) * l) * t +
         FFElement(2) * x * (x - one) / (xl * y);
}

XiResult xi_apply(const FFElement& x, const FFElement& y) {
  require_on_curve(x, y);
  XiResult r;
  const ZPoly f = field_of(x, y);
  r.value = lift_to(xi_value(x, y), f);
  if (!r.value.is_zero()) {
    r.height = height(r.value);
    r.per_place_orders = divisor(r.value);
  }
  return r;
}

bool xi_oddness_check(const FFElement& x, const FFElement& y) { return xi_value(x, -y) == -xi_value(x, y); }

UpsilonForm upsilon_form() {
  const RatFunc l = RatFunc::lambda(), one(1);
  const RatFunc L = l * (one - l);
  const XPoly X = XPoly::x();
  const XPoly F = X * (X - XPoly(one)) * (X - XPoly(l));
  UpsilonForm u;
  u.f0 = F.scaled(RatFunc(4) * L);
  u.f = F.derivative().scaled(RatFunc(-2) * L);
  u.f1 = (X * (X - XPoly(one))).scaled(RatFunc(4) * L) + F.scaled(RatFunc(4) * (one - RatFunc(2) * l));
  const XPoly g = X * (X - XPoly(one));
  u.f2 = (g * g).scaled(RatFunc(2));
  return u;
}

namespace {

FFElement eval_at(const XPoly& p, const FFElement& x) {
  FFElement acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + FFElement(p.coeffs()[i]);
  return acc;
}

}  // namespace

FFElement upsilon_eval(const UpsilonForm& u, const FFElement& x) {
  const FFElement Dx = x.derivative(), D2x = Dx.derivative();
  return eval_at(u.f0, x) * D2x + eval_at(u.f, x) * Dx * Dx + eval_at(u.f1, x) * Dx + eval_at(u.f2, x);
}

ZPoly upsilon_poly(const UpsilonForm& u, const ZPoly& x) {
  const RatFunc X(x), Dx = X.derivative(), D2x = Dx.derivative();
  RatFunc r = eval_xpoly(u.f0, X) * D2x + eval_xpoly(u.f, X) * Dx * Dx + eval_xpoly(u.f1, X) * Dx + eval_xpoly(u.f2, X);
  if (!r.is_polynomial()) throw std::logic_error("Upsilon of a polynomial abscissa is not a polynomial");
  return to_zpoly(r.as_poly());
}

int multiplicity_bound(const SectionPoint& p, const Place& b) {
  if (p.is_O()) throw std::domain_error("section is torsion");
  FFElement xi = xi_value(p.x, p.y);
  if (xi.is_zero()) throw std::domain_error("section is torsion");
  xi = lift_to(xi, b.modulus);
  return 2 + std::max(0, ord_at(xi, b));
}

MultiplicityReport multiplicity_report(const AbscissaFraction& a) {
  MultiplicityReport r;
  r.n = a.n;
  if (a.torsion) throw std::domain_error("multiplicity report of a torsion multiple");
  const ZPoly specials[] = {ZPoly::x(), to_zpoly(parse_poly("l-1")), to_zpoly(parse_poly("l-2"))};
  for (const auto& sf : squarefree_decompose(a.B)) {
    ZPoly rest = sf.factor;
    for (const ZPoly& s : specials) {
      ZPoly q;
      if (divides(s, rest, &q)) {
        r.table.emplace_back(s, sf.multiplicity);
        rest = q;
      }
    }
    if (rest.degree() > 0) r.table.emplace_back(primitive_part(rest), sf.multiplicity);
  }
  for (const auto& [p, w] : r.table) {
    if (p == specials[2])
      r.w_at_2 = w;
    else
      r.max_w_away_from_2 = std::max(r.max_w_away_from_2, w);
    if (w == 4) r.flagged.push_back(p);
  }
  return r;
}

std::vector<MultiplicityReport> pole_multiplicity_scan(int n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be positive");
  const auto fr = abscissa_fractions(n_max);
  std::vector<MultiplicityReport> out(n_max);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = n_max - 1; i >= 0; --i) out[i] = multiplicity_report(fr[i]);
  for (const auto& r : out)
    if (!r.bounds_hold())
      throw std::logic_error("pole multiplicity bound violated at n = " + std::to_string(r.n));
  return out;
}

XiHeightRatio xi_height_ratio(const FFElement& x, const FFElement& y) {
  require_on_curve(x, y);
  const ZPoly f = field_of(x, y);
  XiHeightRatio r;
  const FFElement xi = lift_to(xi_value(x, y), f);
  r.h_xi = xi.is_zero() ? 0 : height(xi);
  r.four_h_x = 4 * height(lift_to(x, f));
  r.excess = r.h_xi - r.four_h_x;
  return r;
}

SharpnessReport sharpness_family(int d, bool cross_check) {
  if (d < 2) throw std::domain_error("sharpness family needs d >= 2");
  SharpnessReport r;
  r.d = d;
  const ZPoly l = ZPoly::x();
  r.xi = ZPoly::monomial(Z(1), d) + l.scaled(Z(6)) + ZPoly(Z(70));
  r.denom = {r.xi, r.xi - ZPoly(Z(1)), r.xi - l};
  const ZPoly U = upsilon_poly(upsilon_form(), r.xi);
  r.P = U * U;
  const Z dm1 = d - 1;
  r.expected_lc = 4 * dm1 * dm1 * dm1 * dm1;
  r.leading_term_ok = r.P.degree() == 8 * d && r.P.lc() == r.expected_lc;
  const long primes[] = {2, 3, 5};
  for (int i = 0; i < 3; ++i) r.eisenstein.emplace_back(primes[i], eisenstein(r.denom[i], Z(primes[i])));
  for (const ZPoly& q : r.denom) r.gcd_degrees.push_back(gcd(r.P, q).degree());
  if (cross_check) {
    const ZPoly F = r.denom[0] * r.denom[1] * r.denom[2];
    const FFElement x(RatFunc(r.xi), RatFunc(), F);
    const FFElement xi = xi_value(x, FFElement::mu(F));
    // Xi = c mu with c^2 F = P / F^3
    r.xi_matches = xi.a().is_zero() && xi.b() * xi.b() * RatFunc(F.pow(4)) == RatFunc(r.P);
  }
  return r;
}

BiquadElement BiquadElement::operator+(const BiquadElement& o) const {
  return {a + o.a, b + o.b, c + o.c, d + o.d, f, g};
}

BiquadElement BiquadElement::operator*(const BiquadElement& o) const {
  const RatFunc F(f), G(g);
  return {a * o.a + b * o.b * F + c * o.c * G + d * o.d * F * G,
          a * o.b + b * o.a + (c * o.d + d * o.c) * G,
          a * o.c + c * o.a + (b * o.d + d * o.b) * F,
          a * o.d + d * o.a + b * o.c + c * o.b,
          f,
          g};
}

std::vector<RatFunc> BiquadElement::charpoly() const {
  using Mat = std::array<std::array<RatFunc, 4>, 4>;
  const RatFunc F(f), G(g);
  // columns: images of 1, mu, nu, mu nu in the same basis
  const std::array<std::array<RatFunc, 4>, 4> cols = {{{a, b, c, d},
                                                        {b * F, a, d * F, c},
                                                        {c * G, d * G, a, b},
                                                        {d * F * G, c * G, b * F, a}}};
  Mat A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A[i][j] = cols[j][i];
  auto mul = [](const Mat& x, const Mat& y) {
    Mat z;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) z[i][j] = z[i][j] + x[i][k] * y[k][j];
    return z;
  };
  // Faddeev-LeVerrier
  std::vector<RatFunc> cp(5);
  cp[4] = RatFunc(1);
  Mat M{};
  for (int k = 1; k <= 4; ++k) {
    Mat AM = mul(A, M);
    for (int i = 0; i < 4; ++i) AM[i][i] = AM[i][i] + cp[5 - k];
    M = AM;
    Mat AMk = mul(A, M);
    RatFunc tr;
    for (int i = 0; i < 4; ++i) tr = tr + AMk[i][i];
    cp[4 - k] = -tr / RatFunc(k);
  }
  return cp;
}

TwoBetaResult two_section_beta(long n, long m) {
  if (n == 0 && m == 0) throw std::domain_error("beta of the zero section");
  const ZPoly f = to_zpoly(parse_poly("4-2l")), g = to_zpoly(parse_poly("18-6l"));
  const ZPoly s2 = to_zpoly(parse_poly("(2-l)^2")), s3 = to_zpoly(parse_poly("(3-l)^2"));
  TwoBetaResult r;
  r.beta = {RatFunc(), RatFunc(ZPoly(Z(2 * n)), s2), RatFunc(ZPoly(Z(2 * m)), s3), RatFunc(), f, g};
  r.h_beta = r.beta.height();
  r.max_order = 2 + r.h_beta;
  return r;
}

}  // namespace leg
