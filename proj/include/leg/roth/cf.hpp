#pragma once

// Continued fractions of Laurent series in 1/t, and the approximation
// checks built on them.  ord(g) is the valuation at t = infinity (v(1/t) = 1),
// so |g| = e^{-ord g} and |q| = e^{deg q}.

#include <optional>
#include <vector>

#include "leg/roth/laurent.hpp"

namespace leg {

struct Convergent {
  QPoly p, q;
  QPoly partial_quotient;
  std::optional<long> ord;  // ord(alpha - p/q); empty when p/q = alpha exactly
  int deg_q() const { return q.degree(); }
};

// Convergents with deg q <= max_deg_q.  Needs alpha to precision
// 2 max_deg_q + 16; throws SeriesPrecisionError otherwise or when a remainder
// runs out of trusted coefficients.  ord is checked against
// deg q_k + deg q_{k+1} and against alpha q - p directly (logic_error if not).
std::vector<Convergent> cf_expand(const LaurentSeries<Q>& alpha, int max_deg_q);

// ord(alpha - p/q) read off the series; empty if alpha q - p has no nonzero
// trusted coefficient.
std::optional<long> approximation_order(const LaurentSeries<Q>& alpha, const QPoly& p, const QPoly& q);

struct RothRow {
  int deg_q = 0;
  long ord = 0;
  double bound = 0;     // 10^9 + 2 deg q + 3 (deg q)^{4/5}
  double exponent = 0;  // ord / deg q
  double envelope = 0;  // 2 + 3 (deg q)^{-1/5}
};
struct RothReport {
  int max_deg_q = 0;
  std::vector<RothRow> rows;
  double max_exponent = 0;
  long max_excess = 0;  // max(ord - 2 deg q)
  bool identity_ok = true;
  bool all_pass = true;
};
// Every convergent of alpha (alpha^4 - alpha = 1/t, alpha ~ -1/t) with
// 1 <= deg q <= max_deg_q.  Throws logic_error on a violation.
RothReport roth_example_check(int max_deg_q);

struct LiouvilleResult {
  long norm_ord = 0;             // ord of (t p^4 - t p q^3 - q^4)/(t q^4)
  std::optional<long> alpha_ord; // ord(alpha - p/q)
  std::vector<long> conjugate_ords;  // ord(alpha' - f), ord(alpha'' - f), ord(alpha''' - f)
  bool conditions_hold = false;  // all three conjugate orders are 0
  long rhs_bound = 0;            // 1 + 4 deg q
  bool bound_holds = false;      // ord(alpha - p/q) <= rhs (asserted when conditions hold)
};
LiouvilleResult liouville_check(const QPoly& p, const QPoly& q);

struct GapStats {
  std::vector<std::pair<long, long>> gaps;  // (exponent of a nonzero term, zeros that follow)
  double envelope_ratio = 0;                // max run / d^{4/5}
};
// Runs after nonzero terms at exponents 1 <= d < D; the run after the last
// nonzero term below the precision is left out.
template <class K>
GapStats zero_gap_stats(const LaurentSeries<K>& s, long D);

}  // namespace leg
