#pragma once

// Root isolation for integer polynomials (Aberth iteration in MPFR on each
// squarefree factor), torsion-parameter counts and the local order of the
// Betti map at a torsion parameter.

#include <optional>
#include <string>
#include <vector>

#include "leg/betti/height.hpp"
#include "leg/exact/poly.hpp"

namespace leg {

struct IsolatedRoot {
  C128 z;              // refined root
  double radius = 0;   // a root of the factor lies within this distance of z
  int multiplicity = 1;
  Cd approx() const { return to_cd(z); }
};

// Distinct complex roots, multiplicities from the exact squarefree
// decomposition.  Sorted by (Re, Im).  Throws PrecisionError if the iteration
// stalls or two inclusion disks overlap.
std::vector<IsolatedRoot> isolate_roots(const ZPoly& p, bool parallel = true);

struct Region {
  bool full_plane = true;
  Cd center{0, 0};
  double radius = 0;
  static Region plane() { return {}; }
  static Region disk(Cd c, double r) { return {false, c, r}; }
};

struct TorsionCount {
  int n = 0;
  int count = 0;              // distinct roots of B_n in the region
  int count_if_boundary = 0;  // count with boundary-ambiguous roots included
  std::vector<Cd> ambiguous;  // roots within their inclusion radius of the boundary
  double predicted = 0;       // n^2 times the density mass of the region
  double predicted_error = 0;
  bool exact = false;         // full plane: count taken from exact degrees
  bool boundary_warning() const { return !ambiguous.empty(); }
};

// Counts torsion parameters of order dividing n for the section x = 2.
TorsionCount torsion_count(int n, const Region& region, const HeightIntegralOptions& opt = {});

struct BettiOrder {
  std::optional<int> order;        // empty if adjacent scales disagree
  std::vector<double> exponents;   // local exponents log(d1/d2)/log(h1/h2)
  bool ramified = false;           // lambda0 = 2: order counted on the double cover
  int exact_w = 0;                 // multiplicity of lambda0 as a root of B_n
  int expected = 0;                // w/2, or w at lambda0 = 2
  int jacobian_rank = -1;          // numerical rank of d beta (when defined)
  double jacobian_condition = 0;   // smallest / largest singular value
};

// Vanishing order of beta(l) - beta(lambda0) along the section x = 2.
BettiOrder betti_multiplicity(const C128& lambda0, int n);

}  // namespace leg
