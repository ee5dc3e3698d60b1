// Command-line front end.  Every run prints its result (text, JSON with
// --json, or CSV for density grids) and emits a manifest: to DIR/manifest.json
// with --out, otherwise as one JSON line on stderr.  `--replay FILE` reruns a
// manifest and compares output digests.

#include <gmp.h>
#include <mpfr.h>
#include <openssl/evp.h>

#include <boost/version.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "leg/acceptance.hpp"
#include "leg/betti/roots.hpp"
#include "leg/manin/xi.hpp"
#include "leg/roth/cf.hpp"
#include "leg/roth/qi.hpp"
#include "leg/roth/wang.hpp"

using nlohmann::json;
using namespace leg;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HelpShown : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256(const std::string& s) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream o;
  for (unsigned i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return o.str();
}

std::string zstr(const ZPoly& p) { return to_string(p, 'l'); }

json factor_json(const ZPoly& p) {
  json a = json::array();
  const Factorization f = factor(p);
  for (const auto& sf : f.factors) a.push_back({{"factor", zstr(sf.factor)}, {"multiplicity", sf.multiplicity}});
  return {{"unit", f.unit.get_str()}, {"factors", a}};
}

Cd parse_complex(const std::string& s) {
  const auto c = s.find(',');
  try {
    if (c == std::string::npos) return {std::stod(s), 0};
    return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected RE,IM: " + s);
  }
}

Q parse_rational(const std::string& s) {
  try {
    Q q(s);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw UsageError("expected a rational such as 1/16: " + s);
  }
}

// text rendering of a result object
std::string render_text(const json& j) {
  std::ostringstream o;
  if (!j.is_object()) return j.dump() + "\n";
  for (const auto& [k, v] : j.items()) {
    if (v.is_array() && !v.empty() && v.front().is_structured()) {
      o << k << ":\n";
      for (const auto& e : v) o << "  " << e.dump() << "\n";
    } else if (v.is_string()) {
      o << k << ": " << v.get<std::string>() << "\n";
    } else {
      o << k << ": " << v.dump() << "\n";
    }
  }
  return o.str();
}

struct Globals {
  int threads = 0;
  int prec = 53;
  bool json_out = false;
  std::string out_dir;
  std::string replay;
};

struct Run {
  std::string output;  // what goes to stdout
  json manifest;
};

// ---------------------------------------------------------------- commands

json cmd_multiples(int n, bool all, const std::string& x) {
  const SectionSpec s = SectionSpec::from_abscissa(RatFunc::parse(x));
  auto one = [&](const AbscissaFraction& a) {
    json r = {{"n", a.n}, {"torsion", a.torsion}};
    if (a.torsion) return r;
    r["A"] = zstr(a.A);
    r["B"] = zstr(a.B);
    r["deg_A"] = a.deg_A();
    r["deg_B"] = a.deg_B();
    r["B_factorization"] = factor_json(a.B);
    r["b_n"] = a.b_n.get_str();
    r["C"] = zstr(a.C);
    r["shape_ok"] = a.shape_ok;
    return r;
  };
  if (!all) return one(abscissa_fraction(n, s));
  json rows = json::array();
  for (const auto& a : abscissa_fractions(n, s)) rows.push_back(one(a));
  return {{"section", x}, {"multiples", rows}};
}

json cmd_xi(int n, const std::string& x) {
  const SectionSpec s = SectionSpec::from_abscissa(RatFunc::parse(x));
  const CurveFF E = s.curve();
  const SectionPoint P = s.point(), nP = scalar_mul(E, n, P);
  json r = {{"n", n}, {"section", x}, {"mu_squared", zstr(s.modulus)}};
  if (nP.is_O()) throw std::domain_error("n sigma is the zero section");
  const XiResult xr = xi_apply(nP.x, nP.y);
  r["xi"] = xr.value.str();
  r["height"] = xr.height;
  json orders = json::array();
  for (const auto& [pl, o] : xr.per_place_orders) orders.push_back({{"place", pl.label()}, {"ord", o}});
  r["orders"] = orders;
  r["odd"] = xi_oddness_check(nP.x, nP.y);
  r["linear"] = xr.value == FFElement(n) * xi_value(P.x, P.y).lifted(s.modulus);
  if (!r["odd"].get<bool>() || !r["linear"].get<bool>()) throw AssertionFailure("Xi oddness or linearity failed");
  return r;
}

json cmd_mult_scan(int n_max) {
  json rows = json::array();
  for (const auto& m : pole_multiplicity_scan(n_max)) {
    json t = json::array();
    for (const auto& [p, w] : m.table) t.push_back({{"factor", zstr(p)}, {"w", w}});
    json fl = json::array();
    for (const auto& p : m.flagged) fl.push_back(zstr(p));
    rows.push_back({{"n", m.n}, {"table", t}, {"w_at_2", m.w_at_2}, {"max_w_away_from_2", m.max_w_away_from_2},
                    {"flagged", fl}});
  }
  return {{"n_max", n_max}, {"rows", rows}};
}

json cmd_sharpness(int d, bool cross) {
  const SharpnessReport r = sharpness_family(d, cross);
  json e = json::array();
  for (const auto& [p, ok] : r.eisenstein) e.push_back({{"prime", p}, {"holds", ok}});
  json rep = {{"d", d},
              {"xi", zstr(r.xi)},
              {"P_degree", r.P.degree()},
              {"P_leading", r.P.lc().get_str()},
              {"expected_leading", r.expected_lc.get_str()},
              {"leading_term_ok", r.leading_term_ok},
              {"eisenstein", e},
              {"gcd_degrees", r.gcd_degrees}};
  if (cross) rep["xi_matches"] = r.xi_matches;
  return rep;
}

json cmd_two_beta(long n, long m) {
  const TwoBetaResult r = two_section_beta(n, m);
  return {{"n", n},
          {"m", m},
          {"beta", {{"mu", r.beta.b.str()}, {"nu", r.beta.c.str()}}},
          {"h_beta", r.h_beta},
          {"max_order", r.max_order}};
}

template <class C>
json betti_eval(const QPoly& x, Cd lam, PeriodRoute route) {
  using R = real_t<C>;
  auto cj = [](const C& z) { return json{static_cast<double>(z.real()), static_cast<double>(z.imag())}; };
  const FiberModel m = FiberModel::make(x, Chart::Zero);
  const FiberPoint<C> p = FiberPoint<C>::at(m, from_cd<C>(lam));
  const PeriodFrame<C> f = periods(p.lam, p.oml, route);
  const ELog<C> e = elliptic_log(p, p.y());
  const BettiCoords<C> b = betti_coords(f, e.z);
  json r = {{"rho1", cj(f.rho1)},      {"rho2", cj(f.rho2)},   {"eta1", cj(f.eta1)},
            {"eta2", cj(f.eta2)},      {"tau", cj(f.tau)},     {"V", static_cast<double>(f.V)},
            {"legendre_residual", static_cast<double>(abs(f.legendre_residual()))},
            {"elliptic_log", cj(e.z)}, {"beta", {static_cast<double>(b.beta1), static_cast<double>(b.beta2)}}};
  r["density"] = static_cast<double>(density_closed(m, from_cd<C>(lam), route == PeriodRoute::Hypergeometric
                                                                             ? PeriodRoute::AGM
                                                                             : route));
  r["density_fd"] = static_cast<double>(density_fd(m, from_cd<C>(lam)));
  (void)sizeof(R);
  return r;
}

json cmd_betti_eval(const std::string& x, const std::string& lam, const std::string& route, int prec) {
  const PeriodRoute r = route == "agm"       ? PeriodRoute::AGM
                        : route == "carlson" ? PeriodRoute::Carlson
                        : route == "hypergeometric"
                            ? PeriodRoute::Hypergeometric
                            : throw UsageError("route must be agm, carlson or hypergeometric");
  const QPoly xp = parse_poly(x);
  const Cd l = parse_complex(lam);
  const int bits = compiled_precision(prec);
  json j = bits == 53 ? betti_eval<Cd>(xp, l, r) : bits == 128 ? betti_eval<C128>(xp, l, r) : betti_eval<C256>(xp, l, r);
  j["lambda"] = {l.real(), l.imag()};
  j["bits"] = bits;
  return j;
}

std::string cmd_density_grid(const std::string& x, double re0, double re1, double im0, double im1, double step) {
  if (!(step > 0) || re1 < re0 || im1 < im0) throw UsageError("empty grid or nonpositive step");
  std::ostringstream o;
  o << "re,im,density\n" << std::setprecision(12);
  for (const GridSample& g : density_grid(parse_poly(x), re0, re1, im0, im1, step))
    o << g.re << "," << g.im << "," << g.density << "\n";
  return o.str();
}

json cmd_height_integral(const std::string& x, double eps, double tol, double depth, bool serial) {
  HeightIntegralOptions o;
  o.eps = eps;
  o.tol = tol;
  o.depth = depth;
  o.parallel = !serial;
  const HeightIntegral h = height_integral(parse_poly(x), o);
  json tails = json::array();
  for (const auto& t : h.tails) tails.push_back({{"center", t.center}, {"exponent", t.exponent}, {"tail", t.tail}});
  return {{"value", h.value},   {"error_estimate", h.error_estimate}, {"cells", h.cells},
          {"excluded_mass_bound", h.excluded_mass_bound},              {"main", h.main},
          {"excluded", h.excluded}, {"evals", h.evals},                {"tails", tails}};
}

json cmd_torsion_count(int n, const std::string& disk) {
  Region reg = Region::plane();
  if (!disk.empty()) {
    std::vector<double> v;
    std::stringstream ss(disk);
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        v.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw UsageError("--disk expects CX,CY,R");
      }
    }
    if (v.size() != 3 || !(v[2] > 0)) throw UsageError("--disk expects CX,CY,R with R > 0");
    reg = Region::disk({v[0], v[1]}, v[2]);
  }
  const TorsionCount t = torsion_count(n, reg);
  json amb = json::array();
  for (const Cd& z : t.ambiguous) amb.push_back({z.real(), z.imag()});
  json r = {{"n", n},
            {"region", disk.empty() ? json("plane") : json(disk)},
            {"count", t.count},
            {"count_if_boundary", t.count_if_boundary},
            {"predicted", t.predicted},
            {"predicted_error", t.predicted_error},
            {"exact", t.exact},
            {"boundary_warning", t.boundary_warning()},
            {"ambiguous", amb}};
  return r;
}

template <class K>
json series_json(const LaurentSeries<K>& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"t_exponent", -e}, {"coeff", scalar_str(c)}});
  return {{"precision", s.prec()}, {"series", s.str(24)}, {"terms", terms}};
}

template <class K>
LaurentSeries<K> expand_branch(const std::string& minpoly, const std::string& branch, long prec) {
  const BiPoly<K> seed = parse_bipoly<K>(branch);
  if (seed.degree_x() > 0) throw UsageError("--branch must not involve X");
  return laurent_expand(parse_bipoly<K>(minpoly), seed.coefficient(0), prec);
}

json cmd_roth_expand(const std::string& minpoly, const std::string& branch, long prec) {
  if (prec < 1) throw UsageError("--prec must be positive");
  const bool omega = minpoly.find('w') != std::string::npos || branch.find('w') != std::string::npos;
  json r = omega ? series_json(expand_branch<QOmega>(minpoly, branch, prec))
                 : series_json(expand_branch<Q>(minpoly, branch, prec));
  r["minpoly"] = minpoly;
  r["branch"] = branch;
  return r;
}

json cmd_roth_cf(const std::string& minpoly, const std::string& branch, int maxdeg) {
  if (maxdeg < 1) throw UsageError("--maxdeg must be positive");
  const auto a = expand_branch<Q>(minpoly, branch, 2L * maxdeg + 16);
  json rows = json::array();
  for (const Convergent& c : cf_expand(a, maxdeg))
    rows.push_back({{"deg_q", c.deg_q()},
                    {"p", to_string(c.p, 't')},
                    {"q", to_string(c.q, 't')},
                    {"partial_quotient", to_string(c.partial_quotient, 't')},
                    {"ord", c.ord ? json(*c.ord) : json(nullptr)}});
  return {{"minpoly", minpoly}, {"branch", branch}, {"max_deg_q", maxdeg}, {"convergents", rows}};
}

json cmd_roth_check(int maxdeg) {
  if (maxdeg < 1) throw UsageError("--maxdeg must be positive");
  const RothReport r = roth_example_check(maxdeg);
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"deg_q", row.deg_q}, {"ord", row.ord}, {"exponent", row.exponent}, {"envelope", row.envelope}});
  return {{"max_deg_q", maxdeg},       {"convergents", r.rows.size()}, {"max_exponent", r.max_exponent},
          {"max_excess", r.max_excess}, {"identity_ok", r.identity_ok}, {"all_pass", r.all_pass},
          {"rows", rows}};
}

json cmd_roth_gaps(long depth) {
  if (depth < 2) throw UsageError("--depth must be at least 2");
  const GapStats g = zero_gap_stats(quartic_alpha(depth), depth);
  json gaps = json::array();
  for (const auto& [e, run] : g.gaps) gaps.push_back({{"exponent", e}, {"zeros", run}});
  return {{"depth", depth}, {"envelope_ratio", g.envelope_ratio}, {"gaps", gaps}};
}

WangInstance wang_from_json(const json& j) {
  WangInstance w;
  auto rfs = [](const json& a) {
    std::vector<RatFunc> v;
    for (const auto& s : a) v.push_back(RatFunc::parse(s.get<std::string>(), 't'));
    return v;
  };
  for (const auto& s : j.at("S")) w.S.push_back(QtPlace::parse(s.get<std::string>()));
  w.A_star = rfs(j.at("A_star"));
  w.r = j.at("r").get<int>();
  w.f = RatFunc::parse(j.at("f").get<std::string>(), 't');
  w.choices = rfs(j.at("choices"));
  w.genus = j.value("genus", 0);
  if (w.genus != 0) throw UsageError("only genus 0 (Q(t)) is supported");
  return w;
}

json cmd_wang(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  WangInstance w;
  try {
    w = wang_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed instance: ") + e.what());
  }
  const WangResult r = wang_lemma_check(w);
  json j = {{"hypothesis_held", r.hypothesis_held}, {"n", r.n}, {"m", r.m}, {"chi", w.chi()}};
  if (r.hypothesis_held) {
    j["lhs"] = r.lhs();
    j["lhs_S"] = r.lhs_S;
    j["lhs_outside"] = r.lhs_outside;
    j["rhs"] = r.rhs.get_str();
    j["inequality_holds"] = r.inequality_holds;
    if (r.wronskian_nonzero) j["wronskian_nonzero"] = *r.wronskian_nonzero;
  } else {
    j["witness"] = r.witness->str('t');
  }
  return j;
}

json cmd_qi(int n_max, const std::string& eps) {
  const QIReport r = quasi_integrality_report(n_max, parse_rational(eps));
  json rows = json::array();
  for (const auto& row : r.rows) {
    json places = json::array();
    for (const auto& p : row.places) places.push_back({{"place", p.place}, {"w", p.w}, {"e", p.e}, {"depth", p.depth()}});
    json jr = {{"n", row.n}, {"M", row.M}, {"h", row.h}, {"places", places}};
    if (row.zimmer_slack) jr["zimmer_slack"] = row.zimmer_slack->get_str();
    rows.push_back(jr);
  }
  return {{"eps", r.eps.get_str()},
          {"rho", "2^" + r.rho_exponent.get_str()},
          {"rho_decimal_digits", r.rho_digits},
          {"genus", r.genus},
          {"h_E", r.h_E},
          {"log10_log_C", r.log10_log_C},
          {"max_M", r.max_M},
          {"budget_holds", r.budget_holds},
          {"rows", rows}};
}

json cmd_report_all(const std::string& file, const std::string& out_dir, bool& all_pass) {
  AcceptanceConfig cfg;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    try {
      cfg = AcceptanceConfig::from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw UsageError(std::string("malformed config: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("malformed config: ") + e.what());
    }
  }
  json matrix = json::array();
  std::ostringstream csv;
  csv << "id,key,pass,seconds,detail\n";
  all_pass = true;
  for (const auto& r : run_acceptance(cfg)) {
    all_pass = all_pass && r.pass;
    matrix.push_back({{"id", r.id}, {"key", r.key}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail},
                      {"data", r.data}});
    std::string d = r.detail;
    for (char& ch : d)
      if (ch == '"') ch = '\'';
    csv << r.id << "," << r.key << "," << (r.pass ? "PASS" : "FAIL") << "," << r.seconds << ",\"" << d << "\"\n";
  }
  json j = {{"config", cfg.to_json()}, {"all_pass", all_pass}, {"matrix", matrix}};
  if (!out_dir.empty()) {
    std::ofstream(out_dir + "/acceptance.json") << j.dump(2) << "\n";
    std::ofstream(out_dir + "/acceptance.csv") << csv.str();
  }
  return j;
}

// ---------------------------------------------------------------- dispatch

json versions() {
  return {{"legendre", kVersion},
          {"gmp", gmp_version},
          {"mpfr", mpfr_get_version()},
          {"boost", BOOST_LIB_VERSION},
          {"compiler", __VERSION__}};
}

Run dispatch(const std::vector<std::string>& args, Globals& g) {
  CLI::App app{"Sections of the Legendre family: exact arithmetic, Betti numerics and function-field Roth checks",
               "legendre"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--prec", g.prec, "working precision in bits for betti-eval (53, 128 or 256 compiled)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json_out, "print JSON instead of text");
  app.add_option("--out", g.out_dir, "directory for the manifest and bundle files");

  std::string x = "2";
  int n = 4, n_max = 20, d = 2;
  long nl = 1, ml = 1;
  bool all = false, cross = false, serial = false;
  double eps = 1e-3, tol = 1e-6, depth = 200, re0 = -2, re1 = 2, im0 = -2, im1 = 2, step = 0.1;
  std::string lam = "0.5,0.5", route = "agm", disk, minpoly = "X^4 - X - 1/t", branch = "-1/t", file,
              eps_q = "1/16";
  long prec = 30;
  int maxdeg = 20;
  long gdepth = 1000;

  auto* multiples = app.add_subcommand("multiples", "abscissa x(n sigma) = A_n / B_n");
  multiples->add_option("--n", n, "multiple (or range end with --all)")->required()->check(CLI::Range(1, 200));
  multiples->add_flag("--all", all, "all multiples 1..n");
  multiples->add_option("--x", x, "abscissa of the section, rational in l");

  auto* xi = app.add_subcommand("xi", "Manin operator on n sigma");
  xi->add_option("--n", n)->check(CLI::Range(1, 200));
  xi->add_option("--x", x, "abscissa of the section, rational in l");

  auto* mscan = app.add_subcommand("mult-scan", "pole multiplicities of B_n");
  mscan->add_option("--nmax", n_max)->check(CLI::Range(1, 200));

  auto* sharp = app.add_subcommand("sharpness", "the family x = l^d + 6l + 70");
  sharp->add_option("--d", d)->required()->check(CLI::Range(2, 50));
  sharp->add_flag("--cross-check", cross, "recompute Xi in Q(l)(mu)");

  auto* beta = app.add_subcommand("two-beta", "beta for n(2, mu) + m(3, nu)");
  beta->add_option("--n", nl);
  beta->add_option("--m", ml);

  auto* be = app.add_subcommand("betti-eval", "periods, elliptic log, Betti coordinates and density at lambda");
  be->add_option("--lambda", lam, "RE,IM");
  be->add_option("--x", x, "abscissa polynomial in l");
  be->add_option("--route", route, "agm | carlson | hypergeometric");

  auto* grid = app.add_subcommand("density-grid", "Betti density on a grid (CSV)");
  grid->add_option("--x", x);
  grid->add_option("--re0", re0);
  grid->add_option("--re1", re1);
  grid->add_option("--im0", im0);
  grid->add_option("--im1", im1);
  grid->add_option("--step", step);

  auto* hi = app.add_subcommand("height-integral", "integral of the Betti density over the l-plane");
  hi->add_option("--x", x);
  hi->add_option("--eps", eps, "exclusion radius around 0, 1, infinity");
  hi->add_option("--tol", tol, "absolute tolerance");
  hi->add_option("--depth", depth, "log-depth of the excluded disks");
  hi->add_flag("--serial", serial, "run the serial cubature");

  auto* tc = app.add_subcommand("torsion-count", "torsion parameters of the section x = 2");
  tc->add_option("--n", n)->required()->check(CLI::Range(2, 60));
  tc->add_option("--disk", disk, "CX,CY,R (default: whole plane)");

  auto* roth = app.add_subcommand("roth", "Laurent series and continued fractions over Q(t)");
  roth->require_subcommand(1, 1);
  auto* rexp = roth->add_subcommand("expand", "Newton expansion of a branch");
  rexp->add_option("--minpoly", minpoly, "P(t, X)");
  rexp->add_option("--branch", branch, "leading terms of the branch, e.g. -1/t, 1, w");
  rexp->add_option("--prec", prec, "number of trusted powers of 1/t");
  auto* rcf = roth->add_subcommand("cf", "convergents");
  rcf->add_option("--minpoly", minpoly);
  rcf->add_option("--branch", branch);
  rcf->add_option("--maxdeg", maxdeg);
  auto* rchk = roth->add_subcommand("check", "order bound along the convergents of the quartic root");
  rchk->add_option("--maxdeg", maxdeg);
  auto* rgap = roth->add_subcommand("gaps", "zero runs in the quartic root");
  rgap->add_option("--depth", gdepth);

  auto* wang = app.add_subcommand("wang-check", "Wang's lemma on an instance over Q(t)");
  wang->add_option("--instance", file, "JSON instance")->required();

  auto* qi = app.add_subcommand("qi-report", "pole depths of x(n sigma) over Q(l)(mu)");
  qi->add_option("--nmax", n_max)->check(CLI::Range(1, 200));
  qi->add_option("--eps", eps_q, "rational, at most 1/16");

  auto* ra = app.add_subcommand("report-all", "acceptance matrix");
  ra->add_option("--config", file, "JSON config");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpShown(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif
  if (compiled_precision(g.prec) == 0) throw PrecisionError("no compiled precision reaches " + std::to_string(g.prec) + " bits");
  if (!g.out_dir.empty()) std::filesystem::create_directories(g.out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  json result;
  std::string raw;
  bool failed = false;
  std::string command;
  json params = json::object();
  auto record = [&](CLI::App* sub) {
    command += (command.empty() ? "" : " ") + sub->get_name();
    for (const CLI::Option* o : sub->get_options())
      if (o->count() > 0 && o->get_name() != "--help") {
        const auto& res = o->results();
        params[o->get_name()] = res.empty() ? json(true) : json(res.back());
      }
  };

  if (*multiples) {
    record(multiples);
    result = cmd_multiples(n, all, x);
  } else if (*xi) {
    record(xi);
    result = cmd_xi(n, x);
  } else if (*mscan) {
    record(mscan);
    result = cmd_mult_scan(n_max);
  } else if (*sharp) {
    record(sharp);
    result = cmd_sharpness(d, cross);
  } else if (*beta) {
    record(beta);
    result = cmd_two_beta(nl, ml);
  } else if (*be) {
    record(be);
    result = cmd_betti_eval(x, lam, route, g.prec);
  } else if (*grid) {
    record(grid);
    raw = cmd_density_grid(x, re0, re1, im0, im1, step);
    if (!g.out_dir.empty()) {
      std::ofstream(g.out_dir + "/density_grid.csv") << raw;
    }
  } else if (*hi) {
    record(hi);
    result = cmd_height_integral(x, eps, tol, depth, serial);
  } else if (*tc) {
    record(tc);
    result = cmd_torsion_count(n, disk);
  } else if (*roth) {
    record(roth);
    if (*rexp) {
      record(rexp);
      result = cmd_roth_expand(minpoly, branch, prec);
    } else if (*rcf) {
      record(rcf);
      result = cmd_roth_cf(minpoly, branch, maxdeg);
    } else if (*rchk) {
      record(rchk);
      result = cmd_roth_check(maxdeg);
    } else {
      record(rgap);
      result = cmd_roth_gaps(gdepth);
    }
  } else if (*wang) {
    record(wang);
    result = cmd_wang(file);
  } else if (*qi) {
    record(qi);
    result = cmd_qi(n_max, eps_q);
  } else if (*ra) {
    record(ra);
    bool ok = true;
    result = cmd_report_all(file, g.out_dir, ok);
    failed = !ok;
  }

  Run run;
  run.output = !raw.empty() ? raw : g.json_out ? result.dump(2) + "\n" : render_text(result);
  // timings are not reproducible; the acceptance digest covers the verdicts only
  std::string basis = run.output;
  if (*ra) {
    json verdicts = json::array();
    for (const auto& r : result["matrix"]) verdicts.push_back({r["id"], r["key"], r["pass"]});
    basis = verdicts.dump();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  run.manifest = {{"command", command},
                  {"argv", args},
                  {"parameters", params},
                  {"precision", {{"bits", g.prec}}},
                  {"threads", threads},
                  {"versions", versions()},
                  {"wall_time_s", wall},
                  {"outputs_digest", "sha256:" + sha256(basis)}};
  if (failed) {
    std::cout << run.output;
    throw AssertionFailure("acceptance criteria failed");
  }
  return run;
}

void emit_manifest(const Run& r, const Globals& g) {
  if (!g.out_dir.empty())
    std::ofstream(g.out_dir + "/manifest.json") << r.manifest.dump(2) << "\n";
  else
    std::cerr << r.manifest.dump() << "\n";
}

int replay(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
  std::vector<std::string> args;
  const auto argv = m.at("argv").get<std::vector<std::string>>();
  for (size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--out") {
      ++i;
      continue;
    }
    args.push_back(argv[i]);
  }
  Globals g;
  const Run r = dispatch(args, g);
  const bool same = r.manifest["outputs_digest"] == m.at("outputs_digest");
  std::cout << json{{"manifest", file}, {"reproduced", same}, {"digest", r.manifest["outputs_digest"]}}.dump() << "\n";
  return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Globals g;
  try {
    if (args.size() == 2 && args[0] == "--replay") return replay(args[1]);
    const Run r = dispatch(args, g);
    std::cout << r.output;
    emit_manifest(r, g);
    return 0;
  } catch (const HelpShown& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    std::cerr << "precision unreachable: " << e.what() << "\n";
    return 3;
  } catch (const SeriesPrecisionError& e) {
    std::cerr << "precision unreachable: " << e.what() << "\n";
    return 3;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
