#include <random>

#include "doctest.h"
#include "leg/roth/cf.hpp"
#include "leg/roth/qi.hpp"
#include "leg/roth/wang.hpp"

using namespace leg;

namespace {

Z binom(long n, long k) {
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

const QPoly T = QPoly::x();

// k with deg q_k <= d < deg q_{k+1}
size_t bracket(const std::vector<Convergent>& cv, int d) {
  size_t k = 0;
  while (k + 1 < cv.size() && cv[k + 1].deg_q() <= d) ++k;
  return k;
}

}  // namespace

TEST_CASE("Laurent expansion of the quartic branches") {
  const auto a = quartic_alpha(200);
  // Lagrange inversion: coefficient of t^-(3k+1) is (-1)^(k+1) C(4k, k) / (3k + 1)
  for (long e = 0; e < 200; ++e) {
    Q want(0);
    if (e % 3 == 1) {
      const long k = e / 3;
      want = Q(binom(4 * k, k), Z(3 * k + 1));
      want.canonicalize();
      if (k % 2 == 0) want = -want;
    }
    CHECK(a.coeff(e) == want);
  }
  CHECK_THROWS_AS(a.coeff(200), std::logic_error);
  CHECK((quartic_minpoly().eval(a, a.prec())).val_bound() >= 200);

  const auto c = quartic_conjugates(40);
  REQUIRE(c.size() == 4);
  CHECK(c[1].coeff(0) == QOmega(Q(1)));
  CHECK(c[1].coeff(1) == QOmega(Q(1, 3)));
  CHECK(c[1].coeff(2) == QOmega(Q(-2, 9)));
  // sum of the four roots of X^4 - X - 1/t is zero
  const auto s = c[0] + c[1] + c[2] + c[3];
  CHECK(s.val_bound() >= 40);
  CHECK(!s.valuation());

  const auto lin = laurent_expand(parse_bipoly<Q>("X - t"), LaurentSeries<Q>::monomial(Q(1), -1), 30);
  CHECK(lin.coeff(-1) == 1);
  CHECK(lin.val_bound() == -1);
  CHECK_THROWS_AS(laurent_expand(quartic_minpoly(), LaurentSeries<Q>::monomial(Q(5), 0), 20), std::domain_error);
}

TEST_CASE("precision discipline of series") {
  const auto a = LaurentSeries<Q>::from_rational(QPoly(1), T + QPoly(1), 10);
  CHECK(a.coeff(9) == 1);
  CHECK_THROWS_AS(a.coeff(10), std::logic_error);
  const auto b = a * a;
  CHECK(b.prec() == 11);
  CHECK_THROWS_AS(b.coeff(11), std::logic_error);
}

TEST_CASE("continued fraction of alpha") {
  const auto a = quartic_alpha(2 * 40 + 16);
  const auto cv = cf_expand(a, 40);
  REQUIRE(cv.size() >= 3);
  CHECK(cv[0].p.is_zero());
  CHECK(cv[1].deg_q() == 1);
  CHECK(cv[1].p * T == -cv[1].q);  // p/q = -1/t
  CHECK(*cv[1].ord == 4);
  for (size_t k = 1; k + 1 < cv.size(); ++k) {
    CHECK(*cv[k].ord == cv[k].deg_q() + cv[k + 1].deg_q());
    CHECK(approximation_order(a, cv[k].p, cv[k].q) == cv[k].ord);
  }
  // rational input terminates exactly
  const auto r = LaurentSeries<Q>::from_rational(T * T + QPoly(3), T * T * T - T + QPoly(2), 60);
  const auto rc = cf_expand(r, 20);
  CHECK(rc.back().q.degree() == 3);
  CHECK(!rc.back().ord);
  CHECK_THROWS_AS(cf_expand(quartic_alpha(10), 40), SeriesPrecisionError);
}

TEST_CASE("Roth check along the convergents") {
  const RothReport r = roth_example_check(200);
  CHECK(r.all_pass);
  CHECK(r.identity_ok);
  CHECK(r.rows.front().deg_q == 1);
  CHECK(r.rows.front().ord == 4);
  for (const auto& row : r.rows) {
    CHECK(row.deg_q >= 1);
    CHECK(row.ord <= row.bound);
  }
  CHECK(r.max_excess == 2);
}

TEST_CASE("best approximation against brute force") {
  const auto a = quartic_alpha(120);
  const auto cv = cf_expand(a, 50);
  auto check = [&](const QPoly& q) {
    const QPoly p = (LaurentSeries<Q>::from_poly_t(q) * a).truncated(1).polynomial_part();
    const size_t k = bracket(cv, q.degree());
    if (p * cv[k].q == q * cv[k].p) return;
    const auto o = approximation_order(a, p, q);
    REQUIRE(o);
    CHECK(*o < *cv[k].ord);
    // any other numerator does worse
    const auto o2 = approximation_order(a, p + QPoly(1), q);
    CHECK(*o2 <= *o);
  };
  // every q of degree <= 8 with coefficients in {-1, 0, 1}
  for (int d = 1; d <= 8; ++d) {
    std::vector<Q> c(d + 1, Q(-1));
    c[d] = 1;
    for (;;) {
      check(QPoly(c));
      int i = 0;
      while (i < d && c[i] == 1) c[i++] = -1;
      if (i == d) break;
      c[i] += 1;
    }
  }
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3), deg(9, 30);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Q> c(deg(rng) + 1);
    for (auto& x : c) x = coef(rng);
    c.back() = 1;
    check(QPoly(c));
  }
}

TEST_CASE("Liouville bound") {
  const auto l = liouville_check(QPoly(-1), T);
  CHECK(l.conditions_hold);
  CHECK(l.norm_ord == 4);
  CHECK(*l.alpha_ord == 4);
  const auto z = liouville_check(QPoly(0), QPoly(1));
  CHECK(z.norm_ord == 1);
  CHECK(*z.alpha_ord == 1);
  CHECK(z.bound_holds);
  CHECK_FALSE(liouville_check(QPoly(1), QPoly(1)).conditions_hold);
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 6);
  for (int i = 0; i < 100; ++i) {
    auto rnd = [&](int d) {
      std::vector<Q> c(d + 1);
      for (auto& x : c) x = coef(rng);
      if (c.back() == 0) c.back() = 1;
      return QPoly(c);
    };
    const auto r = liouville_check(rnd(deg(rng)), rnd(deg(rng)));
    if (r.conditions_hold) CHECK(r.bound_holds);
  }
}

TEST_CASE("zero gaps") {
  const auto g = zero_gap_stats(quartic_alpha(1000), 1000);
  REQUIRE(g.gaps.size() >= 3);
  CHECK(g.gaps[0] == std::pair<long, long>(1, 2));
  CHECK(g.gaps[1] == std::pair<long, long>(4, 2));
  CHECK(g.gaps[2] == std::pair<long, long>(7, 2));
  CHECK(std::isfinite(g.envelope_ratio));
  const auto all = LaurentSeries<Q>::from_rational(QPoly(1), T - QPoly(1), 50);
  for (const auto& [e, run] : zero_gap_stats(all, 50).gaps) CHECK(run == 0);
}

TEST_CASE("Wang lemma") {
  const RatFunc t = RatFunc::parse("t", 't');
  WangInstance w;
  w.S = {QtPlace::parse("t"), QtPlace::infinity()};
  w.A_star = {RatFunc(), t};
  w.f = t + RatFunc(1);
  w.choices = {RatFunc(), t};
  const WangResult r = wang_lemma_check(w);
  CHECK(r.hypothesis_held);
  CHECK(r.n == 1);
  CHECK(r.m == 1);
  // v_0(t + 1) = 0, v_inf(1) = 0; t + 1 and 1 vanish nowhere else to order > 1
  CHECK(r.lhs() == 0);
  CHECK(r.rhs == 2);
  CHECK(*r.wronskian_nonzero);

  w.f = t;
  const WangResult f_in = wang_lemma_check(w);
  CHECK_FALSE(f_in.hypothesis_held);
  REQUIRE(f_in.witness);
  CHECK_FALSE(f_in.witness->is_zero());

  WangInstance bad = w;
  bad.A_star.push_back(t + RatFunc(1));
  CHECK_THROWS_AS(wang_lemma_check(bad), std::domain_error);
  CHECK(wang_dimension({RatFunc(), t, t.inv()}, 2) == 3);

  std::mt19937_64 rng(2024);
  int held = 0, positive = 0;
  for (int trial = 0; trial < 1000 && held < 50; ++trial) {
    const WangInstance in = random_wang_instance(rng);
    const WangResult x = wang_lemma_check(in);
    if (!x.hypothesis_held) continue;
    ++held;
    positive += x.lhs() > 0;
    CHECK(x.inequality_holds);
    if (x.wronskian_nonzero) CHECK(*x.wronskian_nonzero);
  }
  CHECK(held == 50);
  CHECK(positive > 0);
}

TEST_CASE("Roth proposition alternatives") {
  const RatFunc t = RatFunc::parse("t", 't');
  const auto inf = QtPlace::infinity();
  const auto small = roth_prop_check(t, {t + RatFunc(1)}, {inf}, Q(1, 16), {t + RatFunc(1)});
  CHECK(small.alt1);

  const RatFunc big = t.pow(300) + RatFunc(1);
  const auto b = roth_prop_check(big, {t}, {inf, QtPlace::parse("t")}, Q(1, 16), {t, t});
  CHECK_FALSE(b.alt1);
  CHECK(b.alt2);

  // a convergent against a truncation of alpha
  const auto cv = cf_expand(quartic_alpha(2 * 40 + 16), 40);
  const Convergent& c = cv.back();
  const RatFunc f(c.p, c.q);
  const auto tr = quartic_alpha(30).truncated(30);
  RatFunc a;
  for (const auto& [e, k] : tr.terms()) a = a + RatFunc(k) * t.pow(static_cast<int>(-e));
  const auto conv = roth_prop_check(f, {a}, {inf}, Q(1, 16), {a});
  CHECK(conv.alt2);
  CHECK(conv.lhs >= 29);

  CHECK_THROWS_AS(roth_prop_check(t, {t}, {inf}, Q(1, 8), {t}), std::domain_error);
  CHECK_THROWS_AS(roth_prop_check(t, {t}, {inf}, Q(0), {t}), std::domain_error);
}

TEST_CASE("quasi-integrality report") {
  const QIReport r = quasi_integrality_report(20, Q(1, 16));
  CHECK(r.max_M <= 4);
  CHECK(r.rho_exponent == 2560000);
  CHECK(r.rho_digits == 770637);
  CHECK(r.rows[3].M == 2);
  for (const auto& p : r.rows[3].places)
    if (p.place == "l - 2") CHECK(p.e == 2);
    else if (p.place == "l") CHECK(p.e == 1);
  for (int n = 1; n <= 10; ++n) CHECK(*r.rows[n - 1].zimmer_slack >= 0);
  CHECK(!r.rows[10].zimmer_slack);
  CHECK(r.budget_holds);
  CHECK_THROWS_AS(quasi_integrality_report(5, Q(1, 15)), std::domain_error);
}
