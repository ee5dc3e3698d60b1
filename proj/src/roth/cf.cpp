#include "leg/roth/cf.hpp"

#include <cmath>

namespace leg {

namespace {

using S = LaurentSeries<Q>;

bool same_fraction(const QPoly& p, const QPoly& q, const std::pair<QPoly, QPoly>& r) {
  return p * r.second == q * r.first;
}

}  // namespace

std::optional<long> approximation_order(const S& alpha, const QPoly& p, const QPoly& q) {
  if (q.is_zero()) throw std::domain_error("q = 0");
  const S d = alpha * S::from_poly_t(q) - S::from_poly_t(p);
  const auto v = d.valuation();
  if (!v) return std::nullopt;
  return *v + q.degree();
}

std::vector<Convergent> cf_expand(const S& alpha, int max_deg_q) {
  if (max_deg_q < 0) throw std::domain_error("max_deg_q must be >= 0");
  const bool rational = alpha.rational_source().has_value();
  if (!alpha.exact() && !rational && alpha.prec() < 2L * max_deg_q + 16)
    throw SeriesPrecisionError("continued fraction to deg q = " + std::to_string(max_deg_q) + " needs precision " +
                               std::to_string(2L * max_deg_q + 16) + ", have " + std::to_string(alpha.prec()));
  std::vector<Convergent> out;
  // e_k = q_k alpha - p_k satisfies e_k = a_k e_{k-1} + e_{k-2}, and a_k is
  // the polynomial part of -e_{k-2}/e_{k-1}; only leading terms are needed.
  QPoly p2(Q(0)), p1(Q(1)), q2(Q(1)), q1(Q(0));
  S e2 = alpha, e1 = S::monomial(Q(-1), 0);
  for (;;) {
    const long v1 = *e1.valuation(), v2 = e2.val_bound();
    const long d = v1 - v2;
    const QPoly a =
        d < 0 ? QPoly() : S::mul(-e2.truncated(v2 + d + 1), e1.truncated(v1 + d + 1).inv(), 1).polynomial_part();
    const QPoly p = a * p1 + p2, q = a * q1 + q2;
    const S e = S::mul(S::from_poly_t(a), e1) + e2;
    Convergent c{p, q, a, std::nullopt};
    const bool hit = e.is_exact_zero() || (rational && same_fraction(p, q, *alpha.rational_source()));
    if (hit) {
      if (q.degree() <= max_deg_q) out.push_back(c);
      return out;
    }
    const auto ve = e.valuation();
    if (!ve) throw SeriesPrecisionError("continued fraction exhausted the series precision at deg q = " +
                                        std::to_string(q.degree()));
    if (*ve <= v1) throw std::logic_error("continued fraction error terms not decreasing");
    c.ord = *ve + q.degree();
    // deg q_{k+1} = deg q_k + deg a_{k+1} = deg q_k + v(e_k) - v(e_{k-1})
    const long deg_next = q.degree() + *ve - v1;
    if (*c.ord != q.degree() + deg_next) throw std::logic_error("continued-fraction identity failed");
    if (q.degree() > max_deg_q) return out;
    out.push_back(c);
    if (deg_next > max_deg_q) return out;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    e2 = e1;
    e1 = e;
  }
}

RothReport roth_example_check(int max_deg_q) {
  if (max_deg_q < 1) throw std::domain_error("max_deg_q must be >= 1");
  RothReport rep;
  rep.max_deg_q = max_deg_q;
  std::vector<Convergent> cs;
  for (long extra = 16;; extra *= 2) {
    try {
      cs = cf_expand(quartic_alpha(2L * max_deg_q + extra), max_deg_q);
      break;
    } catch (const SeriesPrecisionError&) {
      if (extra > 4L * max_deg_q + 1024) throw;
    }
  }
  for (const Convergent& c : cs) {
    if (c.deg_q() < 1) continue;  // constant q: the Liouville side
    RothRow row;
    row.deg_q = c.deg_q();
    row.ord = *c.ord;
    row.bound = 1e9 + 2.0 * row.deg_q + 3.0 * std::pow(row.deg_q, 0.8);
    row.exponent = static_cast<double>(row.ord) / row.deg_q;
    row.envelope = 2 + 3 * std::pow(row.deg_q, -0.2);
    rep.max_exponent = std::max(rep.max_exponent, row.exponent);
    rep.max_excess = std::max(rep.max_excess, row.ord - 2L * row.deg_q);
    if (!(row.ord <= row.bound)) rep.all_pass = false;
    rep.rows.push_back(row);
  }
  if (!rep.all_pass) throw std::logic_error("Roth example bound violated");
  return rep;
}

LiouvilleResult liouville_check(const QPoly& p, const QPoly& q) {
  if (q.is_zero()) throw std::domain_error("q = 0");
  LiouvilleResult r;
  const QPoly t = QPoly::x();
  const QPoly N = t * p.pow(4) - t * p * q.pow(3) - q.pow(4);
  if (N.is_zero()) throw std::logic_error("t p^4 - t p q^3 - q^4 = 0: alpha would be rational");
  r.norm_ord = 1 + 4L * q.degree() - N.degree();
  r.rhs_bound = 1 + 4L * q.degree();
  const long prec = std::max(64L, 4L * q.degree() + 2L * p.degree() + 16);
  r.alpha_ord = approximation_order(quartic_alpha(prec), p, q);
  const auto conj = quartic_conjugates(prec);
  using SW = LaurentSeries<QOmega>;
  const SW f = SW::from_poly_t(p) * SW::from_poly_t(q).inv(prec);
  r.conditions_hold = true;
  for (int i = 1; i < 4; ++i) {
    const auto v = (conj[i] - f).valuation();
    if (!v) throw SeriesPrecisionError("conjugate distance not resolved at this precision");
    r.conjugate_ords.push_back(*v);
    r.conditions_hold = r.conditions_hold && *v == 0;
  }
  r.bound_holds = r.alpha_ord && *r.alpha_ord <= r.rhs_bound;
  if (r.conditions_hold) {
    // the four distances multiply to the norm
    long total = *r.alpha_ord;
    for (long v : r.conjugate_ords) total += v;
    if (total != r.norm_ord) throw std::logic_error("norm valuation mismatch");
    if (!r.bound_holds) throw std::logic_error("Liouville bound violated");
  }
  return r;
}

template <class K>
GapStats zero_gap_stats(const LaurentSeries<K>& s, long D) {
  if (s.prec() < D) throw SeriesPrecisionError("series precision below the requested depth");
  GapStats g;
  const auto t = s.terms();
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    const long d = t[i].first;
    if (d < 1 || d >= D) continue;
    const long run = t[i + 1].first - d - 1;
    g.gaps.emplace_back(d, run);
    g.envelope_ratio = std::max(g.envelope_ratio, run / std::pow(static_cast<double>(d), 0.8));
  }
  return g;
}

template GapStats zero_gap_stats<Q>(const LaurentSeries<Q>&, long);
template GapStats zero_gap_stats<QOmega>(const LaurentSeries<QOmega>&, long);

}  // namespace leg
