#include "leg/sections/abscissa.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace leg {

namespace {

struct Homog {
  ZPoly p, q, a, b, c, G;
};

Homog homogenize(const RatFunc& x) {
  Homog h;
  h.p = x.num();
  h.q = x.den();
  h.a = to_zpoly(parse_poly("-1-l"));
  h.b = ZPoly::x();
  h.c = ZPoly();
  const ZPoly& p = h.p;
  const ZPoly& q = h.q;
  h.G = p * p * p + h.a * p * p * q + h.b * p * q * q + h.c * q * q * q;
  return h;
}

// F_n = q^{d_n} f_n(p/q), f_n the division polynomial with the factor y
// removed for even n; y^2 is replaced by G = q^3 y^2.
std::vector<ZPoly> division_sequence(const Homog& h, int n_max) {
  const ZPoly &p = h.p, &q = h.q, &G = h.G;
  const ZPoly b2 = h.a.scaled(Z(4)), b4 = h.b.scaled(Z(2)), b6 = h.c.scaled(Z(4));
  const ZPoly b8 = (h.a * h.c).scaled(Z(4)) - h.b * h.b;
  const int top = std::max(n_max + 1, 4);
  std::vector<ZPoly> F(top + 1);
  std::vector<ZPoly> pp(7), qq(7);
  pp[0] = qq[0] = ZPoly(Z(1));
  for (int i = 1; i <= 6; ++i) {
    pp[i] = pp[i - 1] * p;
    qq[i] = qq[i - 1] * q;
  }
  F[0] = ZPoly();
  F[1] = ZPoly(Z(1));
  F[2] = ZPoly(Z(2));
  F[3] = pp[4].scaled(Z(3)) + b2 * pp[3] * qq[1] + (b4 * pp[2] * qq[2]).scaled(Z(3)) +
         (b6 * pp[1] * qq[3]).scaled(Z(3)) + b8 * qq[4];
  F[4] = (pp[6].scaled(Z(2)) + b2 * pp[5] * qq[1] + (b4 * pp[4] * qq[2]).scaled(Z(5)) +
          (b6 * pp[3] * qq[3]).scaled(Z(10)) + (b8 * pp[2] * qq[4]).scaled(Z(10)) + (b2 * b8 - b4 * b6) * pp[1] * qq[5] +
          (b4 * b8 - b6 * b6) * qq[6])
             .scaled(Z(2));
  const ZPoly G2 = G * G;
  for (int n = 5; n <= top; ++n) {
    const int k = n / 2;
    if (n % 2) {
      ZPoly t1 = F[k + 2] * F[k].pow(3), t2 = F[k - 1] * F[k + 1].pow(3);
      F[n] = (k % 2 == 0) ? t1 * G2 - t2 : t1 - t2 * G2;
    } else {
      ZPoly inner = F[k + 2] * F[k - 1] * F[k - 1] - F[k - 2] * F[k + 1] * F[k + 1];
      F[n] = exact_div_scalar(F[k] * inner, Z(2));
    }
  }
  return F;
}

AbscissaFraction assemble(int n, const Homog& h, const std::vector<ZPoly>& F, const SectionSpec& s) {
  AbscissaFraction out;
  out.n = n;
  if (F[n].is_zero() || (n % 2 == 0 && h.G.is_zero())) {
    out.torsion = true;
    return out;
  }
  ZPoly Fn2 = F[n] * F[n];
  ZPoly FF = F[n - 1] * F[n + 1];
  ZPoly num, den;
  if (n % 2) {
    num = h.p * Fn2 - h.G * FF;
    den = h.q * Fn2;
  } else {
    num = h.p * h.G * Fn2 - FF;
    den = h.q * h.G * Fn2;
  }
  RatFunc x(num, den);
  out.A = x.num();
  out.B = x.den();
  // B = b_n (ramified)^{[n even]} C^2
  ZPoly R = out.B;
  bool ok = true;
  if (n % 2 == 0 && s.ramified.degree() > 0) ok = divides(s.ramified, R, &R);
  if (ok) {
    Z cR = content(R);
    out.b_n = Q(cR);
    QPoly root;
    ok = poly_sqrt(to_qpoly(exact_div_scalar(R, cR)), root);
    if (ok) out.C = primitive_part(root);
  }
  out.shape_ok = ok;
  return out;
}

}  // namespace

SectionSpec SectionSpec::from_abscissa(const RatFunc& x) {
  SectionSpec s;
  s.x = x;
  Homog h = homogenize(x);
  ZPoly W = h.G * h.q;  // y^2 = W / q^4
  RatFunc q2inv = RatFunc(ZPoly(Z(1)), h.q * h.q);
  if (W.is_zero()) {
    s.y_coeff = RatFunc();
    return s;
  }
  ZPoly odd(Z(1)), t(Z(1));
  for (const auto& sf : squarefree_decompose(W)) {
    if (sf.multiplicity % 2) odd = odd * sf.factor;
    t = t * sf.factor.pow(static_cast<unsigned>(sf.multiplicity / 2));
  }
  ZPoly prod = odd * t * t;
  Q unit = Q(W.lc()) / Q(prod.lc());  // W = unit * odd * t^2
  Q r;
  if (odd.degree() == 0 && mpz_perfect_square_p(unit.get_num_mpz_t()) && mpz_perfect_square_p(unit.get_den_mpz_t()) &&
      unit > 0) {
    Z rn, rd;
    mpz_sqrt(rn.get_mpz_t(), unit.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), unit.get_den_mpz_t());
    s.y_coeff = RatFunc(t) * q2inv * RatFunc(Q(rn, rd));
    return s;
  }
  if (unit.get_den() != 1) throw std::domain_error("unexpected rational content");
  s.modulus = odd.scaled(unit.get_num());
  s.ramified = odd;
  s.y_coeff = RatFunc(t) * q2inv;
  return s;
}

SectionPoint SectionSpec::point() const {
  FFElement X(x, RatFunc(), modulus);
  FFElement Y = modulus.is_zero() ? FFElement(y_coeff) : FFElement(RatFunc(), y_coeff, modulus);
  return SectionPoint::at(X, Y);
}

std::vector<AbscissaFraction> abscissa_fractions_serial(int n_max, const SectionSpec& s) {
  if (n_max < 1) throw std::domain_error("n_max must be positive");
  Homog h = homogenize(s.x);
  auto F = division_sequence(h, n_max);
  std::vector<AbscissaFraction> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) out.push_back(assemble(n, h, F, s));
  return out;
}

std::vector<AbscissaFraction> abscissa_fractions(int n_max, const SectionSpec& s) {
  if (n_max < 1) throw std::domain_error("n_max must be positive");
  Homog h = homogenize(s.x);
  auto F = division_sequence(h, n_max);
  std::vector<AbscissaFraction> out(n_max);
  // larger n first: the cost grows like n^4
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = n_max; i >= 1; --i) out[i - 1] = assemble(i, h, F, s);
  return out;
}

AbscissaFraction abscissa_fraction(int n, const SectionSpec& s) {
  if (n < 1) throw std::domain_error("n must be positive");
  Homog h = homogenize(s.x);
  auto F = division_sequence(h, n);
  return assemble(n, h, F, s);
}

DegreeProfile degree_profile(int n, const SectionSpec& s) {
  AbscissaFraction a = abscissa_fraction(n, s);
  if (a.torsion) return {};
  return {a.deg_A(), a.deg_B()};
}

DegreeProfile expected_degree_profile(int n) {
  if (n % 2) return {(n * n - 1) / 2, (n * n - 1) / 2};
  return {n * n / 2, (n * n - 2) / 2};
}

HeightEstimate canonical_height_estimate(const std::vector<AbscissaFraction>& fr) {
  HeightEstimate out;
  for (const auto& a : fr) {
    if (a.torsion) {
      out.estimates.emplace_back(0);
      continue;
    }
    Q e(std::max(a.deg_A(), a.deg_B()), a.n * a.n);
    e.canonicalize();
    out.estimates.push_back(e);
  }
  const int N = static_cast<int>(fr.size());
  if (N >= 3) {
    Q n1 = N * N, n2 = (N - 2) * (N - 2);
    out.extrapolated = (n1 * out.estimates[N - 1] - n2 * out.estimates[N - 3]) / (n1 - n2);
  } else if (N >= 1) {
    out.extrapolated = out.estimates.back();
  }
  return out;
}

HeightEstimate canonical_height_estimate(int n_max, const SectionSpec& s) {
  if (n_max < 4) throw std::domain_error("canonical_height_estimate needs n_max >= 4");
  return canonical_height_estimate(abscissa_fractions(n_max, s));
}

}  // namespace leg
