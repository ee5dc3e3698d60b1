#include "leg/roth/qi.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>

namespace leg {

namespace {

QIRow row_for(const AbscissaFraction& a, const SectionSpec& s) {
  QIRow r;
  r.n = a.n;
  r.torsion = a.torsion;
  if (a.torsion) return r;
  const bool inf_ramified = s.modulus.degree() % 2 == 1;
  for (const auto& f : factor(a.B).factors) {
    QIPlace p;
    p.place = to_string(f.factor, 'l');
    p.w = f.multiplicity;
    p.e = primitive_part(f.factor) == s.ramified ? 2 : 1;
    r.places.push_back(p);
  }
  if (a.deg_A() > a.deg_B()) r.places.push_back({"inf", a.deg_A() - a.deg_B(), inf_ramified ? 2 : 1});
  for (const auto& p : r.places) r.M = std::max(r.M, p.depth());
  r.h = 2 * std::max(a.deg_A(), a.deg_B());
  return r;
}

}  // namespace

QIReport quasi_integrality_report(int n_max, const Q& eps, bool parallel) {
  namespace mp = boost::multiprecision;
  if (!(eps > 0 && eps <= Q(1, 16))) throw std::domain_error("eps must lie in (0, 1/16]");
  if (n_max < 1) throw std::domain_error("n_max must be positive");
  const SectionSpec s = SectionSpec::standard();
  const CurveFF E = s.curve();
  QIReport rep;
  rep.eps = eps;
  rep.rho_exponent = Q(10000) / (eps * eps);
  rep.h_E = curve_height(E).h;
  using F = mp::cpp_bin_float_50;
  const F x = F(rep.rho_exponent.get_num().get_str()) / F(rep.rho_exponent.get_den().get_str());
  const F l10 = x * mp::log10(F(2));
  rep.rho_digits = static_cast<long>(mp::floor(l10)) + 1;
  const int gh = rep.genus + rep.h_E;
  rep.log10_log_C = gh > 0 ? static_cast<double>(l10 + mp::log10(F(gh))) : -INFINITY;

  const auto fr = abscissa_fractions(n_max);
  rep.rows.resize(n_max);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int i = 0; i < n_max; ++i) rep.rows[i] = row_for(fr[i], s);
  SectionPoint P = s.point(), nP = P;
  for (int n = 1; n <= std::min(n_max, 10); ++n) {
    rep.rows[n - 1].zimmer_slack = zimmer_check(E, nP, Q(n * n, 2));
    nP = add(E, nP, P);
  }
  for (const auto& r : rep.rows) {
    rep.max_M = std::max(rep.max_M, r.M);
    if (r.M > 4) throw std::logic_error("pole depth M_" + std::to_string(r.n) + " = " + std::to_string(r.M) + " exceeds 4");
  }
  // log C >= rho > 10^(rho_digits - 1) dwarfs any M_n
  rep.budget_holds = gh > 0 && rep.rho_digits > 3;
  return rep;
}

}  // namespace leg
