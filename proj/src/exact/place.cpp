#include "leg/exact/place.hpp"

#include <climits>
#include <set>

namespace leg {

namespace {

constexpr int kInfOrd = INT_MAX;

bool rational_sqrt(const Q& v, Q& out) {
  if (v < 0) return false;
  if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) return false;
  Z n, d;
  mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
  out = Q(n, d);
  out.canonicalize();
  return true;
}

// x(1/u) as a rational function of u.
RatFunc at_inverse(const RatFunc& x) {
  if (x.is_zero()) return x;
  const int dn = x.num().degree(), dd = x.den().degree();
  ZPoly n = x.num().reversed(), d = x.den().reversed();
  if (dd > dn) n = n.shifted(dd - dn);
  if (dn > dd) d = d.shifted(dn - dd);
  return RatFunc(n, d);
}

struct Local {
  RatFunc a, b;
  ZPoly f;
};

// Rewrites a + b mu near l = oo in the parameter u = 1/l with mu = u^{-k} mu~,
// mu~^2 = g(u) = u^{2k} f(1/u), g(0) != 0 unless deg f is odd.
Local to_infinity(const FFElement& x, const ZPoly& f) {
  const int D = f.degree();
  const int k = (D + 1) / 2;
  ZPoly g = f.reversed().shifted(2 * k - D);
  RatFunc uk(ZPoly::monomial(Z(1), k));
  return {at_inverse(x.a()), at_inverse(x.b()) / uk, g};
}

int ord_or_inf(const RatFunc& r, const ZPoly& pi) { return r.is_zero() ? kInfOrd : r.ord_at(pi); }

QPoly qrem(const QPoly& a, const QPoly& m) { return divrem(a, m).second; }

// Inverse of a modulo m in Q[l]/(m); a coprime to m.
QPoly qinvmod(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = qrem(a, m), t0, t1(Q(1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    QPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) throw std::domain_error("not invertible modulo the place polynomial");
  return qrem(t0.scaled(1 / r0.lc()), m);
}

// Residue class of r modulo pi; r has no pole at pi.
QPoly residue(const RatFunc& r, const ZPoly& pi) {
  QPoly m = to_qpoly(pi);
  return qrem(to_qpoly(r.num()) * qinvmod(to_qpoly(r.den()), m), m);
}

int ord_finite(const RatFunc& a, const RatFunc& b, const ZPoly& f, const ZPoly& pi, Place::Type type,
               const QPoly& root) {
  const int e = type == Place::Type::Ramified ? 2 : 1;
  if (b.is_zero()) return e * a.ord_at(pi);
  RatFunc N = a * a - b * b * RatFunc(f);
  switch (type) {
    case Place::Type::Ramified:
      return N.ord_at(pi);
    case Place::Type::Inert:
      return N.ord_at(pi) / 2;
    case Place::Type::Base:
      throw std::domain_error("element outside Q(l) at a place of Q(l)");
    default:
      break;
  }
  const int ka = ord_or_inf(a, pi), kb = b.ord_at(pi);
  const int k = std::min(ka, kb);
  if (ka != kb) return k;
  if (type == Place::Type::Unresolved) {
    int n = N.ord_at(pi);
    if (n == 2 * k) return k;
    throw std::domain_error("valuation depends on an unresolved splitting over " + to_string(pi));
  }
  RatFunc pk = RatFunc(pi).pow(-k);
  QPoly c = qrem(residue(a * pk, pi) + residue(b * pk, pi) * root, to_qpoly(pi));
  if (!c.is_zero()) return k;
  return N.ord_at(pi) - k;
}

}  // namespace

Place Place::finite(const ZPoly& pi) {
  if (pi.degree() < 1) throw std::domain_error("place polynomial must be nonconstant");
  Place p;
  p.kind = Kind::Finite;
  p.pi = primitive_part(pi);
  return p;
}

Place Place::infinity() {
  Place p;
  p.kind = Kind::Infinity;
  return p;
}

int Place::degree() const {
  int d = kind == Kind::Infinity ? 1 : pi.degree();
  return (type == Type::Inert || type == Type::Unresolved) ? 2 * d : d;
}

std::string Place::label(char var) const {
  std::string s = kind == Kind::Infinity ? std::string(1, var) + "=oo" : to_string(pi, var);
  switch (type) {
    case Type::Base:
      return s;
    case Type::Ramified:
      return s + " [ramified]";
    case Type::Inert:
      return s + " [inert]";
    case Type::Unresolved:
      return s + " [unramified]";
    case Type::Split:
      return s + " [mu=" + to_string(root, var) + "]";
  }
  return s;
}

bool Place::operator<(const Place& o) const {
  if (kind != o.kind) return kind == Kind::Finite;
  if (pi != o.pi) return poly_less(pi, o.pi);
  if (root.degree() != o.root.degree()) return root.degree() < o.root.degree();
  for (int i = root.degree(); i >= 0; --i)
    if (root.coeffs()[i] != o.root.coeffs()[i]) return root.coeffs()[i] > o.root.coeffs()[i];
  return false;
}

std::vector<Place> places_over(const Place& base, const ZPoly& f) {
  if (f.is_zero()) return {base};
  Place p = base;
  p.modulus = f;
  if (base.kind == Place::Kind::Finite) {
    if (divides(base.pi, f)) {
      p.type = Place::Type::Ramified;
      return {p};
    }
    if (base.pi.degree() > 1) {
      p.type = Place::Type::Unresolved;
      return {p};
    }
    Q l0 = Q(-base.pi.coeff(0), base.pi.coeff(1));
    l0.canonicalize();
    Q val = to_qpoly(f).eval(l0), r;
    if (!rational_sqrt(val, r)) {
      p.type = Place::Type::Inert;
      return {p};
    }
    return split_places(base, f, QPoly(r));
  }
  if (f.degree() % 2) {
    p.type = Place::Type::Ramified;
    return {p};
  }
  Q r;
  if (!rational_sqrt(Q(f.lc()), r)) {
    p.type = Place::Type::Inert;
    return {p};
  }
  return split_places(base, f, QPoly(r));
}

std::vector<Place> split_places(const Place& base, const ZPoly& f, const QPoly& s) {
  Place p = base;
  p.modulus = f;
  p.type = Place::Type::Split;
  if (base.kind == Place::Kind::Finite) {
    if (base.pi.degree() == 1 && s.degree() > 0) throw std::domain_error("root must be reduced modulo the place");
    p.root = qrem(s, to_qpoly(base.pi));
  } else {
    p.root = s;
  }
  Place q = p;
  q.root = -p.root;
  return {p, q};
}

int ord_at(const RatFunc& x, const Place& v) {
  if (x.is_zero()) throw std::domain_error("valuation of zero undefined");
  int o = v.kind == Place::Kind::Infinity ? x.ord_inf() : x.ord_at(v.pi);
  return v.ramification() * o;
}

int ord_at(const FFElement& x, const Place& v) {
  if (x.is_zero()) throw std::domain_error("valuation of zero undefined");
  if (v.modulus.is_zero()) {
    if (!x.in_base()) throw std::domain_error("element outside Q(l) at a place of Q(l)");
    return ord_at(x.a(), v);
  }
  if (x.has_extension() && x.modulus() != v.modulus) throw std::domain_error("place belongs to a different extension");
  if (v.kind == Place::Kind::Finite) return ord_finite(x.a(), x.b(), v.modulus, v.pi, v.type, v.root);
  Local loc = to_infinity(x, v.modulus);
  return ord_finite(loc.a, loc.b, loc.f, ZPoly::x(), v.type, v.root);
}

namespace {

void collect_factors(const ZPoly& p, std::set<ZPoly, bool (*)(const ZPoly&, const ZPoly&)>& out) {
  if (p.degree() < 1) return;
  for (const auto& fa : factor(p).factors) out.insert(fa.factor);
}

}  // namespace

std::map<Place, int> divisor(const FFElement& x) {
  if (x.is_zero()) throw std::domain_error("divisor of zero undefined");
  std::set<ZPoly, bool (*)(const ZPoly&, const ZPoly&)> bases(poly_less);
  collect_factors(x.a().num(), bases);
  collect_factors(x.a().den(), bases);
  if (!x.in_base()) {
    collect_factors(x.b().num(), bases);
    collect_factors(x.b().den(), bases);
    RatFunc N = x.norm();
    collect_factors(N.num(), bases);
    collect_factors(N.den(), bases);
  }
  if (x.has_extension()) collect_factors(x.modulus(), bases);
  std::vector<Place> base_places;
  for (const auto& b : bases) base_places.push_back(Place::finite(b));
  base_places.push_back(Place::infinity());
  std::map<Place, int> out;
  for (const auto& bp : base_places) {
    for (const auto& v0 : places_over(bp, x.modulus())) {
      std::vector<Place> vs{v0};
      if (v0.type == Place::Type::Unresolved && !x.in_base()) {
        // A branch-dependent order means pi splits; a'/b' gives the root.
        const int ka = ord_or_inf(x.a(), v0.pi), kb = x.b().ord_at(v0.pi);
        if (ka == kb && x.norm().ord_at(v0.pi) != 2 * ka) {
          RatFunc pk = RatFunc(v0.pi).pow(-ka);
          QPoly m = to_qpoly(v0.pi);
          QPoly s = qrem(-residue(x.a() * pk, v0.pi) * qinvmod(residue(x.b() * pk, v0.pi), m), m);
          vs = split_places(bp, x.modulus(), s);
        }
      }
      for (const auto& v : vs) {
        int o = ord_at(x, v);
        if (o != 0) out[v] = o;
      }
    }
  }
  return out;
}

std::map<Place, int> divisor(const RatFunc& x) { return divisor(FFElement(x)); }

int height(const RatFunc& x) { return x.height(); }

int height_from_charpoly(const std::vector<RatFunc>& coeffs) {
  ZPoly L(Z(1));
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    ZPoly g = gcd(L, c.den());
    L = exact_div(L * c.den(), g);
  }
  std::vector<ZPoly> cs;
  ZPoly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    cs.push_back(c.num() * exact_div(L, c.den()));
    g = gcd(g, cs.back());
  }
  int d = 0;
  for (const auto& c : cs) d = std::max(d, c.degree());
  return d - g.degree();
}

int height(const FFElement& x) {
  if (!x.has_extension()) return x.a().height();
  return height_from_charpoly({x.norm(), -x.trace(), RatFunc(1)});
}

int height_from_places(const FFElement& x) {
  int h = 0;
  for (const auto& [v, o] : divisor(x))
    if (o < 0) h += -o * v.degree();
  return h;
}

}  // namespace leg
