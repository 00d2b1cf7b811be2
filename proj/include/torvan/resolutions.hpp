#ifndef TORVAN_RESOLUTIONS_HPP
#define TORVAN_RESOLUTIONS_HPP

#include <map>
#include <string>
#include <vector>

#include "torvan/groebner.hpp"

namespace torvan {

// Integer Laurent polynomial in one variable t; the value type for Hilbert
// numerators and K-polynomials.
class ZPoly {
public:
  ZPoly() = default;
  static ZPoly from_int(long long n);
  static ZPoly t_power(int e, long long coeff = 1);

  bool is_zero() const { return c_.empty(); }
  const std::map<int, long long>& coeffs() const { return c_; }
  long long coeff(int e) const;

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  ZPoly negated() const;
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

  std::string str() const;

private:
  void set(int e, long long v);
  std::map<int, long long> c_;
};

// Graded free module over a coordinate ring: one degree per generator.
struct FreeModule {
  CoordPtr coords;
  std::vector<long long> gen_degs;

  int rank() const { return static_cast<int>(gen_degs.size()); }
  static FreeModule make(CoordPtr coords, std::vector<long long> degs);
};

// Map of free modules, stored column-wise; cols[j] is the image of the j-th
// source generator. Homogeneous when entry (i,j) is homogeneous of degree
// gen_degs_source[j] - gen_degs_target[i] (or zero).
struct ModuleMap {
  FreeModule source, target;
  std::vector<ModuleElem> cols;

  const Polynomial& entry(int i, int j) const { return cols[j].comps[i]; }
  bool is_homogeneous() const;
};

ModuleMap make_map(FreeModule target, FreeModule source, std::vector<ModuleElem> cols);

// Infers source generator degrees from homogeneous columns; throws if a
// column is not homogeneous against the target degrees.
ModuleMap make_map_inferred(FreeModule target, std::vector<ModuleElem> cols);

// Degree of a homogeneous element of the module with the given generator
// degrees; nullopt when inhomogeneous (zero has no degree, also nullopt).
std::optional<long long> element_degree(const ModuleElem& v,
                                        const std::vector<long long>& gen_degs);

// Image of an element of the map's source under the map.
ModuleElem apply_map(const ModuleMap& map, const ModuleElem& v);
// f after g (target of g = source of f).
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);
bool is_zero_map_over(const CoordPtr& coords, const ModuleMap& map);

// Finitely presented module: the cokernel of a map of free modules.
struct Presentation {
  ModuleMap rel;
  std::string label;

  const CoordPtr& coords() const { return rel.target.coords; }
  int ngens() const { return rel.target.rank(); }
};

Presentation cyclic_presentation(const CoordPtr& coords, const std::vector<Polynomial>& ideal_gens,
                                 long long gen_deg = 0, std::string label = {});
Presentation free_presentation(const CoordPtr& coords, std::vector<long long> gen_degs,
                               std::string label = {});

// Re-present a module over the free ambient ring by folding the coordinate
// relations into the presentation. Identity for free coordinate rings.
Presentation present_over_ambient(const Presentation& p);

// Chain of maps d1, d2, ... with d_i ∘ d_{i+1} = 0 over the coordinate ring,
// resolving the base presentation. `complete` means the last kernel was zero.
struct FreeResolution {
  Presentation base;
  std::vector<ModuleMap> maps;
  bool complete = false;

  int length() const { return static_cast<int>(maps.size()); }
  const FreeModule& module_at(int i) const;  // F_i; i in [0, length()]
};

// Iterated syzygy computation with Schreyer orders chained step to step.
// Over a free polynomial ring this terminates within #variables steps and
// exceeding max_length raises an InvariantError; over a quotient coordinate
// ring the resolution is truncated at max_length without error.
FreeResolution resolve(const Presentation& p, int max_length);

// Cancels unit entries in the differentials; graded input required.
FreeResolution minimalize(const FreeResolution& f);

// Hilbert numerator N(t) with series N(t) / prod_i (1 - t^{w_i}), computed
// from the lead-term module of the presentation (the default route).
ZPoly k_polynomial(const Presentation& p);
// Same value from a free resolution over the ambient ring (alternating sum
// of generator-degree powers); the two routes agreeing is a checked
// invariant of the engine's test suite.
ZPoly k_polynomial_via_resolution(const Presentation& p);

// Hilbert numerator of R/J for a monomial ideal J (pivot recursion on the
// most frequent variable).
ZPoly monomial_quotient_numerator(const std::vector<Monomial>& gens,
                                  const std::vector<int>& weights);

bool presentation_is_graded(const Presentation& p);

// Graded Betti numbers of a minimal resolution: (homological degree i,
// generator degree d) -> count.
std::map<std::pair<int, long long>, int> betti_numbers(const FreeResolution& minimal);
std::string betti_table_text(const FreeResolution& minimal);

}  // namespace torvan

#endif
