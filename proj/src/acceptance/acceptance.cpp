#include "leg/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "leg/betti/roots.hpp"
#include "leg/manin/xi.hpp"
#include "leg/roth/cf.hpp"
#include "leg/roth/qi.hpp"
#include "leg/roth/wang.hpp"

namespace leg {

namespace {

using nlohmann::json;

ZPoly zp(const char* s) { return to_zpoly(parse_poly(s)); }
RatFunc rf(const char* s) { return RatFunc::parse(s); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  json data = json::object();
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

void golden_abscissae(Outcome& o, const AcceptanceConfig&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fr = abscissa_fractions(4);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const RatFunc want[] = {RatFunc(2), rf("-(l-4)^2/(8*(l-2))"), rf("2*(5*l^2-16*l+16)^2/((l^2+8*l-16)^2)"),
                          rf("-(l^4-80*l^3+352*l^2-512*l+256)^2/(32*(l-2)*l^2*(3*l^2-16*l+16)^2)")};
  for (int n = 1; n <= 4; ++n) o.require(fr[n - 1].x() == want[n - 1], "x(" + std::to_string(n) + " sigma)");
  o.require(s < 1, "runtime < 1 s");
  o.detail << "x(n sigma), n <= 4, exact; " << s << " s";
}

void degree_laws(Outcome& o, const AcceptanceConfig& c) {
  const int N = std::min(c.n_max, 30);
  const auto t0 = std::chrono::steady_clock::now();
  const auto fr = abscissa_fractions(N);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& a : fr) {
    const int n = a.n, n2 = n * n;
    const int dA = n % 2 ? (n2 - 1) / 2 : n2 / 2, dB = n % 2 ? (n2 - 1) / 2 : (n2 - 2) / 2;
    o.require(a.deg_A() == dA && a.deg_B() == dB, "degrees at n = " + std::to_string(n));
  }
  o.require(s < 120, "runtime < 2 min");
  o.detail << "n <= " << N << "; " << s << " s";
  o.data["n_max"] = N;
}

void canonical_height(Outcome& o, const AcceptanceConfig& c) {
  const int N = std::min(c.n_max, 30);
  const auto fr = abscissa_fractions(N);
  auto est = [&](int n) { return Q(std::max(fr[n - 1].deg_A(), fr[n - 1].deg_B()), n * n); };
  const Q e = est(N);
  o.require(e >= Q(48, 100) && e <= Q(52, 100), "estimate in [0.48, 0.52]");
  o.require(abs(e - Q(1, 2)) <= abs(est(N - 2) - Q(1, 2)), "trend toward 1/2");
  o.detail << "max(deg A, deg B)/n^2 = " << e.get_d() << " at n = " << N;
  o.data["estimate"] = e.get_str();
}

void height_identity(Outcome& o, const AcceptanceConfig& c) {
  HeightIntegralOptions opt;
  opt.tol = c.height_tol;
  const auto t0 = std::chrono::steady_clock::now();
  const HeightIntegral h = height_integral(QPoly(Q(2)), opt);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double dev = std::abs(h.value - 0.25);
  o.require(dev <= 0.01, "value within 0.01 of 1/4");
  o.require(h.error_estimate >= dev, "error estimate covers the deviation");
  o.require(s < 600, "runtime < 10 min");
  o.detail << "value " << h.value << ", error estimate " << h.error_estimate << ", deviation " << dev << "; " << s
           << " s";
  o.data = {{"value", h.value}, {"error_estimate", h.error_estimate}, {"cells", h.cells}};
}

void torsion_counting(Outcome& o, const AcceptanceConfig&) {
  const TorsionCount full = torsion_count(20, Region::plane());
  o.require(full.count * 4 == 400, "N_20 / 400 = 1/4");
  o.detail << "N_20 = " << full.count << "; ";
  for (const auto& [n, tol] : {std::pair{12, 0.15}, std::pair{20, 0.08}}) {
    const TorsionCount d = torsion_count(n, Region::disk(0, 1));
    const double rel = (d.count - d.predicted) / d.predicted;
    o.require(!d.boundary_warning(), "no root on |l| = 1");
    o.require(std::abs(rel) <= tol, "disk count at n = " + std::to_string(n));
    o.detail << "disk n = " << n << ": " << d.count << " vs " << d.predicted << " (" << 100 * rel << "%); ";
    o.data["disk_" + std::to_string(n)] = {{"count", d.count}, {"predicted", d.predicted}, {"relative", rel}};
  }
}

void xi_golden(Outcome& o, const AcceptanceConfig&) {
  const SectionSpec s = SectionSpec::standard(), t = SectionSpec::from_abscissa(RatFunc(3));
  const SectionPoint P = s.point(), Q3 = t.point();
  o.require(xi_value(P.x, P.y) == FFElement(RatFunc(), rf("2/((2-l)^2)"), s.modulus), "Xi(2, mu)");
  o.require(xi_value(Q3.x, Q3.y) == FFElement(RatFunc(), rf("2/((3-l)^2)"), t.modulus), "Xi(3, nu)");
  const CurveFF E = s.curve();
  const FFElement xi1 = xi_value(P.x, P.y);
  for (int n = 1; n <= 6; ++n) {
    const SectionPoint nP = scalar_mul(E, n, P);
    o.require(xi_value(nP.x, nP.y) == FFElement(n) * xi1, "linearity at n = " + std::to_string(n));
    o.require(xi_oddness_check(nP.x, nP.y), "oddness at n = " + std::to_string(n));
  }
  o.detail << "golden values, linearity and oddness for n <= 6, exact";
}

void multiplicity_bounds(Outcome& o, const AcceptanceConfig& c) {
  const int N = std::min(c.n_max, 20);
  const auto scan = pole_multiplicity_scan(N);
  const auto fr = abscissa_fractions(N);
  int w_max = 0, w2 = 0, fours = 0;
  for (const auto& r : scan) {
    w_max = std::max(w_max, r.max_w_away_from_2);
    w2 = std::max(w2, r.w_at_2);
    fours += static_cast<int>(r.flagged.size());
  }
  for (const auto& a : fr) o.require(a.shape_ok, "square shape at n = " + std::to_string(a.n));
  o.require(w_max <= 4 && w2 <= 2 && fours == 0, "multiplicity bounds");
  o.detail << "n <= " << N << ": max w away from 2 = " << w_max << ", max w(2) = " << w2 << ", w = 4 occurrences "
           << fours;
}

void sharpness(Outcome& o, const AcceptanceConfig&) {
  for (int d = 2; d <= 6; ++d) {
    const SharpnessReport r = sharpness_family(d, false);
    o.require(r.leading_term_ok && r.P.lc() == 4 * Z(d - 1) * (d - 1) * (d - 1) * (d - 1) && r.P.degree() == 8 * d,
              "leading term at d = " + std::to_string(d));
    for (const auto& [p, ok] : r.eisenstein) o.require(ok, "Eisenstein at p = " + std::to_string(p));
  }
  const SharpnessReport r9 = sharpness_family(9, false);
  for (int g : r9.gcd_degrees) o.require(g == 0, "coprime at d = 9");
  o.detail << "leading terms d = 2..6, Eisenstein at 2, 3, 5, gcd degrees at d = 9 all 0";
}

void two_section(Outcome& o, const AcceptanceConfig& c) {
  o.require(two_section_beta(1, 1).h_beta == 12, "h(beta) = 12 at (1, 1)");
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<long> co(-50, 50);
  int worst = 0;
  for (int i = 0; i < 20;) {
    const long n = co(rng), m = co(rng);
    if (n == 0 && m == 0) continue;
    worst = std::max(worst, two_section_beta(n, m).h_beta);
    ++i;
  }
  o.require(worst <= 12, "h(beta) <= 12 on random (n, m)");
  o.detail << "h(beta(1,1)) = 12, max over 20 random pairs " << worst;
}

void period_stack(Outcome& o, const AcceptanceConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-10, 10);
  double leg_res = 0, pf_res = 0;
  for (int i = 0; i < 100;) {
    const Cd l(u(rng), u(rng));
    if (std::abs(l) < 0.05 || std::abs(l - 1.0) < 0.05 || std::abs(l.imag()) < 1e-3) continue;
    leg_res = std::max(leg_res, std::abs(periods(l).legendre_residual()));
    const auto [r1, r2] = picard_fuchs_residual(from_cd<C128>(l), R128(1e-12));
    pf_res = std::max({pf_res, static_cast<double>(abs(r1)), static_cast<double>(abs(r2))});
    ++i;
  }
  const auto agm = periods(Cd(0.5)), hyp = periods(Cd(0.5), PeriodRoute::Hypergeometric);
  const double tau_agm = std::abs(agm.tau - Cd(0, 1)), tau_hyp = std::abs(hyp.tau - Cd(0, 1));
  const double routes = std::abs(agm.rho1 - hyp.rho1) / std::abs(agm.rho1);
  o.require(routes < 1e-9, "AGM and hypergeometric periods agree at 1/2");
  o.require(leg_res < 1e-10, "Legendre residual");
  o.require(pf_res < 1e-8, "Picard-Fuchs residual");
  o.require(tau_agm < 1e-9 && tau_hyp < 1e-9, "tau(1/2) = i");
  o.detail << "Legendre " << leg_res << ", Picard-Fuchs " << pf_res << ", |tau(1/2) - i| " << tau_agm << " / "
           << tau_hyp << ", routes differ by " << routes;
}

void betti_consistency(Outcome& o, const AcceptanceConfig& c) {
  const QPoly x(Q(2));
  const FiberModel m = FiberModel::make(x, Chart::Zero);
  double lattice = 0;
  for (const IsolatedRoot& r : isolate_roots(abscissa_fraction(3).B)) {
    const FiberPoint<C128> p = FiberPoint<C128>::at(m, r.z);
    const auto b = betti_coords(periods(p.lam, p.oml), elliptic_log(p, p.y()).z);
    for (R128 v : {b.raw1, b.raw2}) {
      const double d = static_cast<double>(abs(v * 3 - round(v * 3)) / 3);
      lattice = std::max(lattice, d);
    }
  }
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-10, 10);
  double rel = 0;
  for (int i = 0; i < 200;) {
    const Cd l(u(rng), u(rng));
    if (std::abs(l) > 10 || std::abs(l) < 0.05 || std::abs(l - 1.0) < 0.05 || std::abs(l - 2.0) < 0.05 ||
        std::abs(l.imag()) < 1e-3)
      continue;
    const double a = betti_density(x, l), b = betti_density(x, l, DensityMethod::FiniteDifference);
    rel = std::max(rel, std::abs(a - b) / a);
    ++i;
  }
  o.require(lattice < 1e-8, "B_3 roots land on (1/3)Z^2");
  o.require(rel < 1e-6, "closed form vs finite differences");
  o.detail << "distance to (1/3)Z^2 " << lattice << ", density relative gap " << rel << " over 200 points";
}

void roth_example(Outcome& o, const AcceptanceConfig& c) {
  const auto a = quartic_alpha(40);
  const std::map<long, long> golden = {{1, -1}, {4, 1}, {7, -4}, {10, 22}, {13, -140}};
  for (long e = -5; e <= 13; ++e) {
    const auto it = golden.find(e);
    o.require(a.coeff(e) == (it == golden.end() ? 0 : it->second), "coefficient at t^-" + std::to_string(e));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const RothReport r = roth_example_check(c.roth_max_deg);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(r.all_pass, "ord bound");
  o.require(r.identity_ok, "ord_k = deg q_k + deg q_k+1");
  o.require(s < 60, "runtime < 1 min");
  o.detail << r.rows.size() << " convergents with deg q <= " << c.roth_max_deg << ", max ord - 2 deg q = "
           << r.max_excess << "; " << s << " s";
}

void conjugate_branch(Outcome& o, const AcceptanceConfig&) {
  const auto b = quartic_conjugates(10)[1];
  o.require(b.coeff(0) == QOmega(Q(1)) && b.coeff(1) == QOmega(Q(1, 3)) && b.coeff(2) == QOmega(Q(-2, 9)),
            "alpha' = 1 + 1/(3t) - 2/(9t^2) + ...");
  o.detail << "alpha' = " << b.str(4);
}

void wang(Outcome& o, const AcceptanceConfig& c) {
  std::mt19937_64 rng(c.seed);
  int held = 0, tried = 0;
  long max_lhs = 0;
  while (held < c.wang_trials && tried < 50 * c.wang_trials) {
    ++tried;
    const WangResult r = wang_lemma_check(random_wang_instance(rng));
    if (!r.hypothesis_held) continue;
    ++held;
    max_lhs = std::max(max_lhs, r.lhs());
    o.require(r.inequality_holds, "inequality");
  }
  o.require(held == c.wang_trials, "enough instances");
  o.detail << held << " instances (" << tried << " drawn), max lhs " << max_lhs;
}

void quasi_integrality(Outcome& o, const AcceptanceConfig& c) {
  const QIReport r = quasi_integrality_report(std::min(c.n_max, 20), Q(1, 16));
  bool zimmer = true;
  for (const auto& row : r.rows)
    if (row.zimmer_slack) zimmer = zimmer && *row.zimmer_slack >= 0;
  o.require(r.max_M <= 4, "M_n <= 4");
  o.require(zimmer, "Zimmer slack >= 0");
  o.detail << "max M_n = " << r.max_M << " for n <= " << r.rows.size() << ", Zimmer slack >= 0 for n <= "
           << std::min<size_t>(10, r.rows.size()) << ", rho has " << r.rho_digits << " digits";
}

struct Criterion {
  int id;
  const char* key;
  int needs_n;
  void (*run)(Outcome&, const AcceptanceConfig&);
};

const Criterion kCriteria[] = {
    {1, "golden-abscissae", 4, golden_abscissae},
    {2, "degree-laws", 1, degree_laws},
    {3, "canonical-height", 4, canonical_height},
    {4, "height-integral", 1, height_identity},
    {5, "torsion-counting", 20, torsion_counting},
    {6, "xi-golden", 1, xi_golden},
    {7, "multiplicity-bounds", 1, multiplicity_bounds},
    {8, "sharpness-family", 1, sharpness},
    {9, "two-section-beta", 1, two_section},
    {10, "period-stack", 1, period_stack},
    {11, "betti-consistency", 1, betti_consistency},
    {12, "roth-example", 1, roth_example},
    {13, "conjugate-branch", 1, conjugate_branch},
    {14, "wang-lemma", 1, wang},
    {15, "quasi-integrality", 1, quasi_integrality},
};

}  // namespace

AcceptanceConfig AcceptanceConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  AcceptanceConfig c;
  for (const auto& [k, v] : j.items()) {
    if (k == "n_max" && v.is_number_integer())
      c.n_max = v.get<int>();
    else if (k == "roth_max_deg" && v.is_number_integer())
      c.roth_max_deg = v.get<int>();
    else if (k == "wang_trials" && v.is_number_integer())
      c.wang_trials = v.get<int>();
    else if (k == "seed" && v.is_number_unsigned())
      c.seed = v.get<std::uint64_t>();
    else if (k == "height_tol" && v.is_number())
      c.height_tol = v.get<double>();
    else if (k == "only" && v.is_array())
      for (const auto& i : v) c.only.insert(i.get<int>());
    else
      throw std::invalid_argument("bad config entry: " + k);
  }
  if (c.n_max < 1 || c.roth_max_deg < 1 || c.wang_trials < 1 || !(c.height_tol > 0))
    throw std::invalid_argument("config values out of range");
  return c;
}

json AcceptanceConfig::to_json() const {
  return {{"n_max", n_max}, {"roth_max_deg", roth_max_deg}, {"wang_trials", wang_trials},
          {"seed", seed},   {"height_tol", height_tol},     {"only", std::vector<int>(only.begin(), only.end())}};
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  std::vector<CriterionResult> out;
  for (const Criterion& c : kCriteria) {
    if (!cfg.only.empty() && !cfg.only.count(c.id)) continue;
    if (cfg.n_max < c.needs_n) continue;
    CriterionResult r;
    r.id = c.id;
    r.key = c.key;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o, cfg);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = o.pass;
    r.detail = o.detail.str();
    r.data = o.data;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace leg
