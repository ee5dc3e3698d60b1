#pragma once

// Wang's lemma and the two-alternative Roth proposition, checked on explicit
// instances over Q(t) (genus 0).  Places of Q(t) are infinity or monic-up-to-
// sign irreducible polynomials; a place of degree d stands for d points over
// the algebraic closure, so sums over places carry the weight d.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "leg/exact/ratfunc.hpp"

namespace leg {

struct QtPlace {
  bool infinite = false;
  ZPoly pi;  // primitive, lc > 0, irreducible

  static QtPlace infinity() { return {true, {}}; }
  static QtPlace finite(const ZPoly& p);
  static QtPlace parse(const std::string& s);  // "inf" or a polynomial in t
  int degree() const { return infinite ? 1 : pi.degree(); }
  int ord(const RatFunc& f) const;  // f != 0
  std::string str() const;
  friend bool operator==(const QtPlace& a, const QtPlace& b) { return a.infinite == b.infinite && a.pi == b.pi; }
};

struct WangInstance {
  std::vector<QtPlace> S;
  std::vector<RatFunc> A_star;   // contains 0 and S-units
  int r = 0;
  RatFunc f;
  std::vector<RatFunc> choices;  // a*_v for each v in S, in A_star
  int genus = 0;

  int S_size() const;  // geometric count
  long chi() const { return 2L * genus - 2 + S_size(); }
  // Throws domain_error unless every nonzero element of A_star is an S-unit,
  // the choices lie in A_star and f != 0.
  void validate() const;
};

struct WangResult {
  int n = 0, m = 0;  // l(r), l(r+1)
  bool hypothesis_held = false;
  // when the hypothesis fails: g in L(r), g != 0, with f g in L(r+1)
  std::optional<RatFunc> witness;
  long lhs_S = 0, lhs_outside = 0;
  long lhs() const { return lhs_S + lhs_outside; }
  Q rhs;
  bool inequality_holds = false;
  std::optional<bool> wronskian_nonzero;  // computed when n + m <= 6
};

// Throws logic_error if the hypothesis holds and the inequality does not.
WangResult wang_lemma_check(const WangInstance& inst);

// Random valid instance with |S| <= 4, r <= 2, up to three S-units.
WangInstance random_wang_instance(std::mt19937_64& rng);

// dim of L(r) spanned by degree-r monomials in the nonzero elements.
int wang_dimension(const std::vector<RatFunc>& A_star, int r);

struct RothPropResult {
  int l = 0;
  int h_f = 0;
  int sum_h_a = 0;
  long chi = 0;
  long lhs = 0;              // sum over S of deg(v) max{0, v(f - a_v)}
  bool f_in_A = false;
  double alt1_rhs = 0;       // (6l/eps) log(1/eps) sum h(a)
  double alt2_rhs = 0;       // (2+eps) h(f) + 3 (1/eps)^l (chi + 2 sum h(a))
  bool alt1 = false, alt2 = false;
};
// A lists the nonzero elements (0 is implicit); choices[i] in A or 0.
// Throws domain_error unless 0 < eps <= 1/16, logic_error if neither holds.
RothPropResult roth_prop_check(const RatFunc& f, const std::vector<RatFunc>& A, const std::vector<QtPlace>& S,
                               const Q& eps, const std::vector<RatFunc>& choices);

}  // namespace leg
