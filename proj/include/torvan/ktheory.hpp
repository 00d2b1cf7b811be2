#ifndef TORVAN_KTHEORY_HPP
#define TORVAN_KTHEORY_HPP

#include "torvan/group.hpp"
#include "torvan/homology.hpp"

namespace torvan {

// Class of a graded module in the Grothendieck group. For projective-space
// targets the K-polynomial is reduced modulo (1-t)^{n+1} and also carried in
// the basis {1, (1-t), ..., (1-t)^n}; for other cones the full Hilbert
// numerator is the representative and equality is polynomial equality.
struct KClass {
  bool projective = true;
  int n = 0;                             // projective: ambient dimension
  ZPoly tpoly;                           // canonical representative in t
  std::vector<long long> basis_coords;   // projective only, length n+1

  friend bool operator==(const KClass& a, const KClass& b);
  friend bool operator!=(const KClass& a, const KClass& b) { return !(a == b); }
  std::string str() const;
};

// Reduce an integer Laurent polynomial modulo (1-t)^{n+1}; exponents may be
// negative (geometric expansion of t^{-1} = (1-u)^{-1}).
KClass kclass_projective(const ZPoly& kpoly, int n);
KClass kclass_cone(const ZPoly& kpoly);

// projective_n set: reduce modulo (1-t)^{n+1}; unset: full-cone class.
KClass kclass_of_module(const Presentation& m, std::optional<int> projective_n);

// Sum_i (-1)^i [Tor_i(E, gF)], signs applied to the integer polynomials
// before the single final reduction. Independent of g on group orbits; that
// independence is a checked property, not an assumption.
KClass euler_tor_sum(const Presentation& e, const Presentation& f, const GroupElement& g,
                     const ActionSpec& action, int i_max, std::optional<int> projective_n);

}  // namespace torvan

#endif
