#pragma once

// Places of Q(l) and of a quadratic extension Q(l)(mu), mu^2 = f(l), with
// valuations normalized to value group Z.  A finite place of Q(l) is an
// irreducible polynomial; the place at infinity has local parameter 1/l.

#include <map>
#include <string>
#include <vector>

#include "leg/exact/ffelement.hpp"

namespace leg {

struct Place {
  enum class Kind { Finite, Infinity };
  // How the place lies in Q(l)(mu).  Base: place of Q(l) itself.
  // Unresolved: unramified over a place of degree > 1 whose splitting is not
  // decided; the entry stands for the whole fiber over pi and valuations that
  // do not depend on the branch are still computed.
  enum class Type { Base, Ramified, Split, Inert, Unresolved };

  Kind kind = Kind::Finite;
  ZPoly pi;        // irreducible, primitive, lc > 0 (finite places)
  ZPoly modulus;   // zero for places of Q(l)
  Type type = Type::Base;
  // Split places: mu = root mod pi (at infinity, the rescaled mu at u = 0).
  QPoly root;

  static Place finite(const ZPoly& pi);
  static Place infinity();

  int ramification() const { return type == Type::Ramified ? 2 : 1; }
  // Degree over Q of the residue field (of the whole fiber when unresolved).
  int degree() const;
  std::string label(char var = 'l') const;
  bool operator<(const Place& o) const;
  bool operator==(const Place& o) const { return !(*this < o) && !(o < *this); }
};

// Places of Q(l)(sqrt f) lying over a place of Q(l); f squarefree.  Over a
// place of degree > 1 the splitting is left unresolved (one entry).
std::vector<Place> places_over(const Place& base, const ZPoly& f);
// The two places over pi given a square root s of f modulo pi.
std::vector<Place> split_places(const Place& base, const ZPoly& f, const QPoly& s);

int ord_at(const RatFunc& x, const Place& v);
int ord_at(const FFElement& x, const Place& v);

// Places where x has a zero or pole, with the orders (places of the field x
// lives in).  Throws if an unresolved place carries a branch-dependent order.
std::map<Place, int> divisor(const FFElement& x);
std::map<Place, int> divisor(const RatFunc& x);

// Logarithmic height: [K : Q(x)] for x nonconstant, 0 for constants.
int height(const RatFunc& x);
int height(const FFElement& x);
// deg_l of the characteristic polynomial sum c_i T^i after clearing
// denominators and removing the common polynomial factor; equals the height of
// the element it belongs to in the field of degree (len - 1) over Q(l).
int height_from_charpoly(const std::vector<RatFunc>& coeffs);
// Same quantity summed from the divisor: sum over poles of -v(x) deg(v).
int height_from_places(const FFElement& x);

}  // namespace leg
