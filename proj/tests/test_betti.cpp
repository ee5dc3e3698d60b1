#include <random>

#include "doctest.h"
#include "leg/betti/roots.hpp"
#include "leg/sections/abscissa.hpp"

using namespace leg;

namespace {

std::mt19937 rng(11);

Cd random_lambda(double rmax) {
  std::uniform_real_distribution<double> u(-rmax, rmax);
  for (;;) {
    const Cd l(u(rng), u(rng));
    if (std::abs(l) <= rmax && std::abs(l) > 0.05 && std::abs(l - 1.0) > 0.05 && std::abs(l.imag()) > 1e-3) return l;
  }
}

// distance of v from the lattice (1/n) Z
double off_lattice(double v, int n) { return std::abs(v * n - std::round(v * n)) / n; }

template <class C>
BettiCoords<C> section_betti(const QPoly& x, const C& lam) {
  const FiberModel m = FiberModel::make(x, Chart::Zero);
  const FiberPoint<C> p = FiberPoint<C>::at(m, lam);
  return betti_coords(periods(p.lam, p.oml), elliptic_log(p, p.y()).z);
}

}  // namespace

TEST_CASE("periods at l = 1/2 and across routes") {
  const PeriodFrame<Cd> f = periods(Cd(0.5, 0));
  CHECK(std::abs(f.tau - Cd(0, 1)) < 1e-12);
  for (int i = 0; i < 20; ++i) {
    const Cd l = random_lambda(0.9);
    const auto a = periods(l), c = periods(l, PeriodRoute::Carlson), h = periods(l, PeriodRoute::Hypergeometric);
    CHECK(std::abs(a.rho1 - c.rho1) < 1e-9 * std::abs(a.rho1));
    CHECK(std::abs(a.rho1 - h.rho1) < 1e-9 * std::abs(a.rho1));
    CHECK(std::abs(a.rho2 - h.rho2) < 1e-9 * std::abs(a.rho2));
  }
  CHECK_THROWS_AS(periods(Cd(0, 0)), std::domain_error);
  CHECK_THROWS_AS(periods(Cd(1, 0)), std::domain_error);
}

TEST_CASE("Legendre relation and Picard-Fuchs residual") {
  for (int i = 0; i < 100; ++i) {
    const Cd l = random_lambda(10);
    CHECK(std::abs(periods(l).legendre_residual()) < 1e-10);
    const C128 L = from_cd<C128>(l);
    const auto [r1, r2] = picard_fuchs_residual(L, R128(1e-12));
    CHECK(abs(r1) < R128(1e-8));
    CHECK(abs(r2) < R128(1e-8));
  }
}

TEST_CASE("Betti coordinates of lattice points") {
  const auto f = periods(Cd(-2.5, 0.7));
  auto b = betti_coords(f, f.rho1 / 2.0);
  CHECK(b.beta1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.beta2 == doctest::Approx(0).epsilon(1e-12));
  b = betti_coords(f, Cd(0));
  CHECK(b.beta1 == 0);
  CHECK(b.beta2 == 0);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    const double b1 = u(rng), b2 = u(rng);
    const auto r = betti_coords(f, b1 * f.rho1 + b2 * f.rho2);
    CHECK(std::abs(r.raw1 - b1) < 1e-10);
    CHECK(std::abs(r.raw2 - b2) < 1e-10);
  }
  PeriodFrame<Cd> bad = f;
  bad.V = 0;
  CHECK_THROWS_AS(betti_coords(bad, Cd(1)), std::domain_error);
}

TEST_CASE("elliptic logarithm") {
  const Cd l(-1, 0);
  const auto f = periods(l);
  auto lattice_gap = [&](Cd w) {
    const auto b = betti_coords(f, w);
    return std::max(off_lattice(b.raw1, 1), off_lattice(b.raw2, 1));
  };
  // 2-torsion point goes to a half period
  const Cd h = elliptic_log(f, Cd(0), Cd(0));
  CHECK(lattice_gap(2.0 * h) < 1e-12);
  CHECK(lattice_gap(h) > 0.4);
  // doubling on (2, sqrt(4 - 2l))
  const Cd x(2), y = std::sqrt(Cd(4) - 2.0 * l);
  const Cd m = (3.0 * x * x - 2.0 * (1.0 + l) * x + l) / (2.0 * y);
  const Cd x2 = m * m + 1.0 + l - 2.0 * x, y2 = -(y + m * (x2 - x));
  CHECK(lattice_gap(2.0 * elliptic_log(f, x, y) - elliptic_log(f, x2, y2)) < 1e-9);
  for (int i = 0; i < 30; ++i) {
    const Cd lam = random_lambda(6);
    const auto g = periods(lam);
    const Cd px = random_lambda(4);
    const Cd py = std::sqrt(px * (px - 1.0) * (px - lam));
    const auto b = betti_coords(g, elliptic_log(g, px, py) + elliptic_log(g, px, -py));
    CHECK(std::max(off_lattice(b.raw1, 1), off_lattice(b.raw2, 1)) < 1e-9);
  }
  CHECK_THROWS_AS(elliptic_log(f, Cd(INFINITY, 0), Cd(INFINITY, 0)), std::domain_error);
  CHECK_THROWS_AS(elliptic_log(f, Cd(2), Cd(1)), std::domain_error);
}

TEST_CASE("torsion parameters have rational Betti coordinates") {
  const QPoly x(Q(2));
  for (int n = 2; n <= 5; ++n) {
    const double tol = n == 3 ? 1e-8 : 1e-6;
    int checked = 0;
    for (const IsolatedRoot& r : isolate_roots(abscissa_fraction(n).B)) {
      if (std::abs(r.approx()) < 1e-9) continue;
      const auto b = section_betti(x, r.z);
      CHECK(off_lattice(static_cast<double>(b.raw1), n) < tol);
      CHECK(off_lattice(static_cast<double>(b.raw2), n) < tol);
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("closed-form and finite-difference densities agree") {
  const QPoly x(Q(2));
  int n = 0;
  while (n < 200) {
    const Cd l = random_lambda(10);
    if (std::abs(l - 2.0) < 0.05) continue;
    const double a = betti_density(x, l), b = betti_density(x, l, DensityMethod::FiniteDifference);
    CHECK(a >= 0);
    CHECK(std::abs(a - b) <= 1e-6 * a);
    ++n;
  }
  CHECK_THROWS_AS(betti_density(x, Cd(1e-3, 0), DensityMethod::ClosedForm, 1e-2), std::domain_error);
  CHECK_THROWS_AS(betti_density(x, Cd(300, 1), DensityMethod::ClosedForm, 1e-2), std::domain_error);
}

TEST_CASE("height integral") {
  const QPoly x(Q(2));
  double prev = 0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    HeightIntegralOptions o;
    o.eps = eps;
    const HeightIntegral h = height_integral(x, o);
    CHECK(std::abs(h.value - 0.25) < 0.01);
    CHECK(std::abs(h.value - 0.25) <= h.error_estimate);
    CHECK(h.main > prev);
    CHECK(h.excluded_mass_bound >= h.excluded);
    prev = h.main;
  }
  // the pushforward halves the canonical height
  CHECK(std::abs(prev + height_integral(x).excluded_mass_bound - 0.25) < 0.01);
  const double hhat = canonical_height_estimate(12).extrapolated.get_d();
  CHECK(std::abs(height_integral(x).value - hhat / 2) < 0.01);
  for (const char* t : {"0", "1", "l"}) CHECK(height_integral(parse_poly(t)).value == doctest::Approx(0).epsilon(1e-8));
  HeightIntegralOptions bad;
  bad.eps = 0.3;
  CHECK_THROWS_AS(height_integral(x, bad), std::domain_error);
  HeightIntegralOptions tight;
  tight.tol = 1e-14;
  tight.max_evals = 100000;
  CHECK_THROWS_AS(height_integral(x, tight), PrecisionError);
  const DiskIntegral d = disk_integral(x, 0, 1);
  CHECK(d.value == doctest::Approx(0.0298).epsilon(0.01));
  CHECK_THROWS_AS(disk_integral(x, 2, 1), std::domain_error);
}

TEST_CASE("torsion counts") {
  CHECK(torsion_count(20, Region::plane()).count == 100);
  CHECK(torsion_count(20, Region::plane()).predicted == 100);
  const TorsionCount two = torsion_count(2, Region::plane());
  CHECK(two.count == 1);
  const auto r2 = isolate_roots(abscissa_fraction(2).B);
  REQUIRE(r2.size() == 1);
  CHECK(std::abs(r2[0].approx() - 2.0) < 1e-30);
  // 2 lies on the boundary of |l| < 2
  const TorsionCount edge = torsion_count(2, Region::disk(0, 2));
  CHECK(edge.boundary_warning());
  CHECK(edge.count == 0);
  CHECK(edge.count_if_boundary == 1);
  const TorsionCount d12 = torsion_count(12, Region::disk(0, 1));
  CHECK(d12.count == 3);
  CHECK_FALSE(d12.boundary_warning());
  CHECK(d12.predicted == doctest::Approx(144 * 0.0298).epsilon(0.01));
  CHECK_THROWS_AS(torsion_count(1, Region::plane()), std::domain_error);
}

TEST_CASE("root isolation") {
  const ZPoly b = abscissa_fraction(12).B;
  const auto roots = isolate_roots(b);
  int total = 0;
  for (const auto& sf : squarefree_decompose(b)) total += sf.factor.degree();
  CHECK(static_cast<int>(roots.size()) == total);
  for (const auto& r : roots) {
    CHECK(r.radius < 1e-30);
    CHECK((r.multiplicity == 1 || r.multiplicity == 2));
  }
}

TEST_CASE("Betti map order at torsion parameters") {
  const auto roots3 = isolate_roots(abscissa_fraction(3).B);
  int generic = 0;
  for (const auto& r : roots3) {
    if (std::abs(r.approx()) < 1e-9) continue;
    const BettiOrder o = betti_multiplicity(r.z, 3);
    REQUIRE(o.order.has_value());
    CHECK(*o.order == 1);
    CHECK(o.expected == 1);
    CHECK(o.jacobian_rank == 2);
    ++generic;
  }
  CHECK(generic > 0);
  for (int n : {2, 4, 6}) {
    const BettiOrder o = betti_multiplicity(C128(2), n);
    CHECK(o.ramified);
    REQUIRE(o.order.has_value());
    CHECK(*o.order == o.exact_w);
  }
  CHECK_THROWS_AS(betti_multiplicity(C128(R128(0.3)), 3), std::domain_error);
}
