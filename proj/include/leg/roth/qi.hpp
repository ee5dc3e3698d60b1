#pragma once

// Pole depths of the abscissae x(n sigma) over K = Q(l)(mu) for the section
// (2, mu), mu^2 = 4 - 2l, and the budget of the effective quasi-integrality
// bound with rho = 2^(10000/eps^2), kept as an exponent.

#include <optional>
#include <string>
#include <vector>

#include "leg/sections/abscissa.hpp"

namespace leg {

struct QIPlace {
  std::string place;  // factor of B_n in l, or "inf"
  int w = 0;          // pole order in Q(l)
  int e = 1;          // ramification index in K
  int depth() const { return e * w; }  // -v(x) at the place of K
};

struct QIRow {
  int n = 0;
  bool torsion = false;
  std::vector<QIPlace> places;
  int M = 0;  // max depth
  int h = 0;  // h(x) over K
  std::optional<Q> zimmer_slack;  // n <= 10
};

struct QIReport {
  Q eps;
  Q rho_exponent;       // 10000 / eps^2
  long rho_digits = 0;  // decimal digits of rho
  int genus = 0;
  int h_E = 0;
  double log10_log_C = 0;  // log C = rho (g + h(E))
  std::vector<QIRow> rows;
  int max_M = 0;
  // M_n <= eps h + log C, trivially true given the size of log C
  bool budget_holds = false;
};

// Throws domain_error unless 0 < eps <= 1/16 and n_max >= 1; logic_error if
// some M_n exceeds 4.
QIReport quasi_integrality_report(int n_max, const Q& eps, bool parallel = true);

}  // namespace leg
