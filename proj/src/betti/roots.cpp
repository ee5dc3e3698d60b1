#include "leg/betti/roots.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/mpfr.hpp>

#include "leg/sections/abscissa.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace leg {

namespace {

template <unsigned D>
struct MpC {
  using R = mp::number<mp::mpfr_float_backend<D>, mp::et_off>;
  R re, im;
  MpC() = default;
  MpC(R a, R b = 0) : re(std::move(a)), im(std::move(b)) {}
  MpC operator+(const MpC& o) const { return {re + o.re, im + o.im}; }
  MpC operator-(const MpC& o) const { return {re - o.re, im - o.im}; }
  MpC operator*(const MpC& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  MpC operator/(const MpC& o) const {
    const R d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  R abs() const { return boost::multiprecision::hypot(re, im); }
};

template <unsigned D>
std::vector<IsolatedRoot> aberth(const ZPoly& p, int mult, bool parallel) {
  using C = MpC<D>;
  using R = typename C::R;
  const int d = p.degree();
  std::vector<R> a(d + 1), da(d);
  for (int i = 0; i <= d; ++i) a[i] = R(p.coeffs()[i].get_str());
  for (int i = 1; i <= d; ++i) da[i - 1] = a[i] * i;
  auto horner = [](const std::vector<R>& c, const C& z) {
    C acc(c.back());
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) acc = acc * z + C(c[i]);
    return acc;
  };
  // starting circle from the geometric mean of the roots
  const R rad = boost::multiprecision::pow(boost::multiprecision::abs(a[0] / a[d]), R(1) / d);
  const R r0 = rad > 0 ? rad : R(1);
  std::vector<C> z(d), w(d);
  for (int k = 0; k < d; ++k) {
    const R ang = (R(2) * boost::math::constants::pi<R>() * k + R(0.4)) / d;
    z[k] = C(r0 * cos(ang), r0 * sin(ang));
  }
  const R tol = boost::multiprecision::pow(R(10), -static_cast<int>(std::min(D / 2, 80u)));
  std::vector<R> newton(d);
  bool done = false;
  for (int it = 0; it < 2000 && !done; ++it) {
    int moving = 0;
#pragma omp parallel for schedule(static) reduction(+ : moving) if (parallel)
    for (int i = 0; i < d; ++i) {
      const C N = horner(a, z[i]) / horner(da, z[i]);
      C S(0);
      for (int j = 0; j < d; ++j)
        if (j != i) S = S + C(1) / (z[i] - z[j]);
      w[i] = N / (C(1) - N * S);
      newton[i] = N.abs();
      if (w[i].abs() > tol * std::max(R(1), z[i].abs())) ++moving;
    }
    for (int i = 0; i < d; ++i) z[i] = z[i] - w[i];
    done = moving == 0;
  }
  if (!done) throw PrecisionError("root isolation did not converge");
  std::vector<IsolatedRoot> out(d);
  for (int i = 0; i < d; ++i) {
    const C N = horner(a, z[i]) / horner(da, z[i]);
    out[i].z = C128(R128(z[i].re.str(45)), R128(z[i].im.str(45)));
    out[i].radius = std::max(static_cast<double>(N.abs() * d), 1e-300);
    out[i].multiplicity = mult;
    for (int j = 0; j < i; ++j)
      if ((z[i] - z[j]).abs() <= R(out[i].radius + out[j].radius))
        throw PrecisionError("root inclusion disks overlap");
  }
  return out;
}

size_t max_bits(const ZPoly& p) {
  size_t b = 1;
  for (const Z& c : p.coeffs()) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

std::vector<IsolatedRoot> isolate_factor(const ZPoly& f, int mult, bool parallel) {
  if (f.degree() == 1) {
    const Q r = Q(-f.coeffs()[0], f.coeffs()[1]);
    IsolatedRoot root;
    root.z = C128(R128(r.get_num().get_str()) / R128(r.get_den().get_str()), R128(0));
    root.radius = 1e-35 * std::max(1.0, std::abs(r.get_d()));
    root.multiplicity = mult;
    return {root};
  }
  // digits: the coefficient size plus headroom for clustered roots
  const double need = 0.30103 * max_bits(f) + f.degree() + 40;
  if (need <= 200) return aberth<200>(f, mult, parallel);
  if (need <= 300) return aberth<300>(f, mult, parallel);
  if (need <= 500) return aberth<500>(f, mult, parallel);
  if (need <= 1200) return aberth<1200>(f, mult, parallel);
  return aberth<3000>(f, mult, parallel);
}

}  // namespace

std::vector<IsolatedRoot> isolate_roots(const ZPoly& p, bool parallel) {
  if (p.degree() < 1) return {};
  std::vector<IsolatedRoot> out;
  for (const auto& sf : squarefree_decompose(p)) {
    auto r = isolate_factor(sf.factor, sf.multiplicity, parallel);
    out.insert(out.end(), r.begin(), r.end());
  }
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
    const Cd x = a.approx(), y = b.approx();
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

TorsionCount torsion_count(int n, const Region& region, const HeightIntegralOptions& opt) {
  if (n < 2) throw std::domain_error("torsion count needs n >= 2");
  const AbscissaFraction a = abscissa_fraction(n);
  TorsionCount t;
  t.n = n;
  if (region.full_plane) {
    for (const auto& sf : squarefree_decompose(a.B)) t.count += sf.factor.degree();
    t.count_if_boundary = t.count;
    t.exact = true;
    t.predicted = n * n / 4.0;
    return t;
  }
  for (const IsolatedRoot& r : isolate_roots(a.B, opt.parallel)) {
    const double dist = std::abs(r.approx() - region.center) - region.radius;
    if (std::abs(dist) <= r.radius) {
      t.ambiguous.push_back(r.approx());
      ++t.count_if_boundary;
    } else if (dist < 0) {
      ++t.count;
      ++t.count_if_boundary;
    }
  }
  const DiskIntegral m = disk_integral(QPoly(Q(2)), region.center, region.radius, opt);
  t.predicted = n * n * m.value;
  t.predicted_error = n * n * m.error_estimate;
  return t;
}

BettiOrder betti_multiplicity(const C128& lambda0, int n) {
  if (n < 2) throw std::domain_error("betti_multiplicity needs n >= 2");
  BettiOrder b;
  const Cd l0 = to_cd(lambda0);
  if (std::abs(l0) < 1e-20 || std::abs(l0 - 1.0) < 1e-20) throw std::domain_error("lambda0 is a singular fiber");
  // exact multiplicity of lambda0 in B_n
  const AbscissaFraction a = abscissa_fraction(n);
  for (const auto& sf : squarefree_decompose(a.B)) {
    C128 v(0);
    R128 scale = 0;
    for (int i = sf.factor.degree(); i >= 0; --i) {
      v = v * lambda0 + C128(R128(sf.factor.coeffs()[i].get_str()));
      scale = scale * abs(lambda0) + abs(R128(sf.factor.coeffs()[i].get_str()));
    }
    if (abs(v) <= R128(1e-20) * scale) b.exact_w = sf.multiplicity;
  }
  if (b.exact_w == 0) throw std::domain_error("lambda0 is not a root of B_n");
  b.ramified = std::abs(l0 - 2.0) < 1e-20;
  b.expected = b.ramified ? b.exact_w : b.exact_w / 2;

  const FiberModel m = FiberModel::make(QPoly(Q(2)), Chart::Zero);
  const FiberPoint<C128> p = FiberPoint<C128>::at(m, lambda0);
  const PeriodFrame<C128> f = periods(p.lam, p.oml);
  const C128 y = p.y();
  const int rot = elliptic_log(p, y).rot;
  const auto base = betti_matched(m, lambda0, f, y, rot);
  const double scale = std::min({1.0, std::abs(l0), std::abs(l0 - 1.0)});
  const C128 dir(R128(0.6), R128(0.8));
  std::vector<double> hs, ds;
  for (int k = 3; k <= 8; ++k) {
    const double h = scale * std::pow(10.0, -k);
    const auto v = betti_matched(m, lambda0 + dir * R128(h), f, y, rot);
    R128 d1 = v[0] - base[0], d2 = v[1] - base[1];
    d1 -= round(d1);
    d2 -= round(d2);
    hs.push_back(h);
    ds.push_back(static_cast<double>(sqrt(d1 * d1 + d2 * d2)));
  }
  for (size_t i = 0; i + 1 < hs.size(); ++i)
    b.exponents.push_back(std::log(ds[i] / ds[i + 1]) / std::log(hs[i] / hs[i + 1]));
  // use the finest three scales; they must agree with a single (half-)integer
  const double mult = b.ramified ? 2.0 : 1.0;
  const size_t k = b.exponents.size();
  const double e = b.exponents[k - 1] * mult;
  const long r = std::lround(e);
  bool ok = r >= 1;
  for (size_t i = k - 3; i < k; ++i) ok = ok && std::abs(b.exponents[i] * mult - r) < 0.05;
  if (ok) b.order = static_cast<int>(r);

  if (!b.ramified) {
    const Jacobian<C128> J = betti_jacobian(m, lambda0);
    const double a11 = static_cast<double>(J.d[0][0]), a12 = static_cast<double>(J.d[0][1]);
    const double a21 = static_cast<double>(J.d[1][0]), a22 = static_cast<double>(J.d[1][1]);
    // singular values of a 2x2 matrix
    const double s = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
    const double det = std::abs(a11 * a22 - a12 * a21);
    const double disc = std::sqrt(std::max(0.0, s * s / 4 - det * det));
    const double smax = std::sqrt(s / 2 + disc), smin = det / std::max(smax, 1e-300);
    b.jacobian_condition = smax > 0 ? smin / smax : 0;
    b.jacobian_rank = smax == 0 ? 0 : (b.jacobian_condition > 1e-8 ? 2 : 1);
  }
  return b;
}

}  // namespace leg
