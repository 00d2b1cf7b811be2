#ifndef TORVAN_HOMOLOGY_HPP
#define TORVAN_HOMOLOGY_HPP

#include "torvan/resolutions.hpp"

namespace torvan {

// Complex of free modules ... -> F_1 -> F_0 with declared relation columns
// per term. The module at homological degree i is F_i modulo span(rels[i])
// (and modulo the coordinate relations); differentials must carry rels[i]
// into span(rels[i-1]). Tensoring a resolution with a presented module lands
// here: the relation columns are id (x) presentation-relations.
struct ChainComplex {
  CoordPtr coords;
  std::vector<FreeModule> terms;                // F_0 .. F_len
  std::vector<ModuleMap> diffs;                 // d_1 .. d_len
  std::vector<std::vector<ModuleElem>> rels;    // rels[i] in F_i

  int length() const { return static_cast<int>(terms.size()) - 1; }
};

ChainComplex complex_from_resolution(const FreeResolution& r);

// Consecutive compositions vanish modulo the declared and coordinate
// relations.
bool is_complex(const ChainComplex& c);

// Degreewise tensor with a presented module. Differentials are d (x) id;
// the presentation's relations contribute relation columns in every degree.
ChainComplex tensor_with_module(const ChainComplex& c, const Presentation& n);
ChainComplex tensor_with_module(const FreeResolution& r, const Presentation& n);

// Subquotient ker(d_i)/im(d_{i+1}) presented as a cokernel. Out-of-range
// indices give the zero module.
struct HomologyModule {
  Presentation pres;
  int index = 0;
};

HomologyModule homology_at(const ChainComplex& c, int i);

bool module_is_zero(const Presentation& p);
bool homology_is_zero(const HomologyModule& h);

// Grid of free modules with exactly commuting differentials; horiz[i][j]
// maps (i,j) -> (i-1,j) for i >= 1, vert[i][j] maps (i,j) -> (i,j-1) for
// j >= 1. The total complex twists vertical maps in column i by (-1)^i.
struct DoubleComplex {
  CoordPtr coords;
  std::vector<std::vector<FreeModule>> modules;
  std::vector<std::vector<ModuleMap>> horiz;  // horiz[i][j] valid for i >= 1
  std::vector<std::vector<ModuleMap>> vert;   // vert[i][j] valid for j >= 1

  int rows() const { return static_cast<int>(modules.size()); }     // i range
  int cols() const { return modules.empty() ? 0 : static_cast<int>(modules[0].size()); }
};

// The external tensor grid A_i (x) B_j of two resolutions over one
// coordinate ring.
DoubleComplex boxed_grid(const FreeResolution& a, const FreeResolution& b);

// Collapse along antidiagonals; throws on non-commuting squares.
ChainComplex total_complex(const DoubleComplex& d);

// Tor_0..Tor_{i_max} computed by resolving the first argument.
std::vector<HomologyModule> tor(const Presentation& m, const Presentation& n, int i_max);

struct TorSummary {
  int index = 0;
  std::optional<ZPoly> k_poly;  // graded modules only
  bool zero = true;
};

TorSummary summarize(const HomologyModule& h);
std::vector<TorSummary> summarize_all(const std::vector<HomologyModule>& tors);

// Resolve-left versus resolve-right comparison; the two routes must agree
// per index, else an InvariantError is raised.
struct BalancedTorReport {
  std::vector<TorSummary> via_left;
  std::vector<TorSummary> via_right;
};

BalancedTorReport tor_balanced(const Presentation& m, const Presentation& n, int i_max);

// Applies a ring map to every differential entry, keeping the degree data.
// The caller guarantees the map respects the relations (so d.d still
// vanishes over `out`).
FreeResolution map_resolution(const FreeResolution& r, const RingMap& f, const CoordPtr& out);

// The double-complex route: pull the two resolutions into the family ring,
// specialize every entry at the sampled group element, totalize, and take
// homology. With identity maps this is the plain balanced double complex.
std::vector<HomologyModule> double_complex_tor(const FreeResolution& res_e,
                                               const FreeResolution& res_f,
                                               const RingMap& pull_e, const RingMap& pull_f,
                                               const RingMap& specialize,
                                               const CoordPtr& out, int i_max);

}  // namespace torvan

#endif
