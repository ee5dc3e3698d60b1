#pragma once

// Elliptic logarithm, Betti coordinates and the Betti density of a section
// whose abscissa is a polynomial in l.
//
// Fibers are parametrized by a chart variable t: l = t near 0, l = 1 + t
// near 1, and l = 1/t near infinity (where x is rescaled to x/l, which is the
// Legendre curve with parameter t).  Each quantity the integrals need
// (l, 1-l, x, x-1, x-l, dx) is a polynomial in t with rational coefficients,
// so nothing cancels numerically close to the chart center.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "leg/betti/periods.hpp"
#include "leg/exact/poly.hpp"

namespace leg {

enum class Chart { Zero, One, Infinity };

struct FiberModel {
  Chart chart = Chart::Zero;
  // l, 1 - l, x, x - 1, x - l and dx/dt as polynomials in t
  std::array<QPoly, 6> p;
  // Abscissa x(l); at infinity only deg x <= 1 is supported.
  static FiberModel make(const QPoly& x, Chart chart);
  // Chart variable of lambda and the factor |dt/dl|^2 converting densities.
  static Cd chart_coordinate(Chart c, Cd lambda);
};

template <class C>
C eval_q(const QPoly& p, const C& t) {
  using R = real_t<C>;
  C acc(0);
  for (int i = p.degree(); i >= 0; --i) {
    const Q& q = p.coeffs()[i];
    R c;
    if constexpr (std::is_same_v<R, double>)
      c = q.get_d();
    else
      c = R(q.get_num().get_str()) / R(q.get_den().get_str());
    acc = acc * t + C(c);
  }
  return acc;
}

template <class C>
struct FiberPoint {
  C lam, oml, x, xm1, xml, dx;
  C y() const {
    using std::sqrt;
    return sqrt(x) * sqrt(xm1) * sqrt(xml);
  }
  static FiberPoint at(const FiberModel& m, const C& t) {
    return {eval_q(m.p[0], t), eval_q(m.p[1], t), eval_q(m.p[2], t),
            eval_q(m.p[3], t), eval_q(m.p[4], t), eval_q(m.p[5], t)};
  }
};

template <class C>
struct ELog {
  C z, dz;      // z = int_inf^x dx/y and its derivative along the section
  int rot = 0;  // ray direction used: exp(i pi rot / 4)
  int sign = 1;
};

namespace detail {

template <class C>
C unit_root(int rot, double power) {
  using R = real_t<C>;
  using std::cos;
  using std::sin;
  const R a = pi_v<C>() * R(rot) * R(power) / R(4);
  return C(cos(a), sin(a));
}

// Rotation keeping c * a_i away from the cut of the square root.
template <class C>
int pick_rotation(const std::array<C, 3>& a) {
  double best = -1;
  int pick = 0;
  for (int r : {0, 1, -1, 2, -2, 3, -3, 4}) {
    double margin = 10;
    for (const C& ai : a) {
      if (std::abs(to_cd(ai)) == 0) continue;
      const Cd v = to_cd(ai) * std::polar(1.0, M_PI * r / 4);
      margin = std::min(margin, M_PI - std::abs(std::arg(v)));
    }
    if (r == 0 && margin > 0.3) return 0;
    if (margin > best + 1e-12) {
      best = margin;
      pick = r;
    }
  }
  return pick;
}

}  // namespace detail

// Elliptic logarithm of (x, y) on the fiber, y picking the sign.  The
// Carlson integrals run along the ray exp(-i pi rot / 4) from x to infinity;
// rot is chosen automatically unless given.
template <class C>
ELog<C> elliptic_log(const FiberPoint<C>& p, const C& y, std::optional<int> rot = std::nullopt) {
  using R = real_t<C>;
  using std::abs;
  using std::sqrt;
  const std::array<C, 3> a = {p.x, p.xm1, p.xml};
  ELog<C> out;
  out.rot = rot ? *rot : detail::pick_rotation(a);
  const C c = detail::unit_root<C>(out.rot, 1.0);
  const std::array<C, 3> ca = {c * a[0], c * a[1], c * a[2]};
  const C ytil = detail::unit_root<C>(out.rot, -1.5) * sqrt(ca[0]) * sqrt(ca[1]) * sqrt(ca[2]);
  out.sign = abs(y - ytil) <= abs(y + ytil) ? 1 : -1;
  const R s = out.sign;
  out.z = R(-2) * s * detail::unit_root<C>(out.rot, 0.5) * carlson_rf(ca[0], ca[1], ca[2]);
  // d/dt of (x, x - 1, x - l); dl/dt = 1 in every chart
  const std::array<C, 3> da = {p.dx, p.dx, p.dx - C(1)};
  C acc(0);
  if (abs(da[0]) != 0) acc += carlson_rd(ca[1], ca[2], ca[0]) * da[0];
  if (abs(da[1]) != 0) acc += carlson_rd(ca[0], ca[2], ca[1]) * da[1];
  if (abs(da[2]) != 0) acc += carlson_rd(ca[0], ca[1], ca[2]) * da[2];
  out.dz = s / R(3) * detail::unit_root<C>(out.rot, 1.5) * acc;
  return out;
}

// Elliptic logarithm of a point (x, y) on the fiber of the frame.
template <class C>
C elliptic_log(const PeriodFrame<C>& f, const C& x, const C& y) {
  using R = real_t<C>;
  using std::abs;
  using std::isfinite;
  if (!isfinite(static_cast<double>(abs(x))) || !isfinite(static_cast<double>(abs(y))))
    throw std::domain_error("elliptic log of the point at infinity");
  FiberPoint<C> p{f.lambda, f.one_minus_lambda, x, x - C(1), x - f.lambda, C(0)};
  const C rhs = p.x * p.xm1 * p.xml;
  const R scale = std::max(R(1), abs(rhs) + abs(y * y));
  if (abs(y * y - rhs) > R(1e6) * eps_v<C>() * scale) throw std::domain_error("point not on the fiber");
  return elliptic_log(p, y).z;
}

template <class C>
struct BettiCoords {
  real_t<C> beta1 = 0, beta2 = 0;  // reduced to [0, 1)
  real_t<C> raw1 = 0, raw2 = 0;    // before reduction
  C z;
  std::string branch_id;
};

// Real solution of z = b1 rho1 + b2 rho2.
template <class C>
BettiCoords<C> betti_coords(const PeriodFrame<C>& f, const C& z) {
  using R = real_t<C>;
  using std::conj;
  using std::floor;
  if (!(f.V != 0)) throw std::domain_error("degenerate period frame");
  BettiCoords<C> b;
  b.z = z;
  b.raw1 = (z * conj(f.rho2)).imag() / f.V;
  b.raw2 = -(z * conj(f.rho1)).imag() / f.V;
  b.beta1 = b.raw1 - floor(b.raw1);
  b.beta2 = b.raw2 - floor(b.raw2);
  if (b.beta1 >= R(1)) b.beta1 -= R(1);
  if (b.beta2 >= R(1)) b.beta2 -= R(1);
  return b;
}

// Rewrites f in the basis of periods closest to ref (an integral change of
// basis), so that frames continued along different paths can be compared.
template <class C>
void align_frame(const PeriodFrame<C>& ref, PeriodFrame<C>& f) {
  using R = real_t<C>;
  using std::round;
  auto coords = [&](const C& w) {
    BettiCoords<C> c = betti_coords(ref, w);
    return std::array<long, 2>{static_cast<long>(round(c.raw1)), static_cast<long>(round(c.raw2))};
  };
  const auto r1 = coords(f.rho1), r2 = coords(f.rho2);
  const long det = r1[0] * r2[1] - r1[1] * r2[0];
  if (det != 1 && det != -1) throw PrecisionError("frames too far apart to align");
  // [rho1'; rho2'] = M [rho1; rho2]  =>  new = M^{-1} [rho1'; rho2']
  auto apply = [&](C& u, C& v) {
    const C nu = (R(r2[1]) * u - R(r1[1]) * v) / R(det);
    const C nv = (R(-r2[0]) * u + R(r1[0]) * v) / R(det);
    u = nu;
    v = nv;
  };
  apply(f.rho1, f.rho2);
  apply(f.eta1, f.eta2);
  using std::conj;
  f.V = (f.rho1 * conj(f.rho2)).imag();
  f.tau = f.rho2 / f.rho1;
}

enum class DensityMethod { ClosedForm, FiniteDifference };

// Density of d beta1 ^ d beta2 against the area element of the chart variable.
template <class C>
real_t<C> density_closed(const FiberModel& m, const C& t, PeriodRoute route = PeriodRoute::AGM) {
  using std::abs;
  const FiberPoint<C> p = FiberPoint<C>::at(m, t);
  const PeriodFrame<C> f = periods(p.lam, p.oml, route);
  const ELog<C> e = elliptic_log(p, p.y());
  const BettiCoords<C> b = betti_coords(f, e.z);
  const C a = e.dz - b.raw1 * f.drho1() - b.raw2 * f.drho2();
  const real_t<C> n = abs(a);
  return n * n / abs(f.V);
}

// Distance to the nearest point where the density or the Betti map is singular.
template <class C>
real_t<C> singular_scale(const FiberPoint<C>& p) {
  using R = real_t<C>;
  using std::abs;
  R s = std::min<R>(R(1), std::min(abs(p.lam), abs(p.oml)));
  for (const C* v : {&p.x, &p.xm1, &p.xml})
    if (abs(*v) != 0) s = std::min(s, abs(*v));
  return s;
}

// Betti coordinates of the section at chart variable t, branch-matched to a
// reference frame, y value and ray (for finite differences).
template <class C>
std::array<real_t<C>, 2> betti_matched(const FiberModel& m, const C& t, const PeriodFrame<C>& ref, const C& yref,
                                       int rot) {
  using std::abs;
  const FiberPoint<C> p = FiberPoint<C>::at(m, t);
  PeriodFrame<C> f = periods(p.lam, p.oml);
  align_frame(ref, f);
  C y = p.y();
  if (abs(y + yref) < abs(y - yref)) y = -y;
  const ELog<C> e = elliptic_log(p, y, rot);
  const BettiCoords<C> b = betti_coords(f, e.z);
  return {b.raw1, b.raw2};
}

template <class C>
struct Jacobian {
  real_t<C> d[2][2];  // d beta_i / d(Re t, Im t)
  real_t<C> det() const { return d[0][0] * d[1][1] - d[0][1] * d[1][0]; }
};

template <class C>
Jacobian<C> betti_jacobian(const FiberModel& m, const C& t, real_t<C> h = 0) {
  using R = real_t<C>;
  using std::round;
  const FiberPoint<C> p = FiberPoint<C>::at(m, t);
  const PeriodFrame<C> f = periods(p.lam, p.oml);
  const C y = p.y();
  const int rot = elliptic_log(p, y).rot;
  if (h == 0) h = (std::is_same_v<R, double> ? R(1e-4) : R(1e-12)) * singular_scale(p);
  auto at = [&](const C& dt) { return betti_matched(m, t + dt, f, y, rot); };
  const auto xp = at(C(h)), xm = at(C(-h)), yp = at(C(R(0), h)), ym = at(C(R(0), -h));
  Jacobian<C> J;
  for (int i = 0; i < 2; ++i) {
    R dx = xp[i] - xm[i], dy = yp[i] - ym[i];
    dx -= round(dx);
    dy -= round(dy);
    J.d[i][0] = dx / (R(2) * h);
    J.d[i][1] = dy / (R(2) * h);
  }
  return J;
}

template <class C>
real_t<C> density_fd(const FiberModel& m, const C& t, real_t<C> h = 0) {
  using std::abs;
  return abs(betti_jacobian(m, t, h).det());
}

template <class C>
real_t<C> density(const FiberModel& m, const C& t, DensityMethod method) {
  return method == DensityMethod::ClosedForm ? density_closed(m, t) : density_fd(m, t);
}

}  // namespace leg
