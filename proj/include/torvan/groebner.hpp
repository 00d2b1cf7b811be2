#ifndef TORVAN_GROEBNER_HPP
#define TORVAN_GROEBNER_HPP

#include <memory>
#include <optional>
#include <vector>

#include "torvan/ring.hpp"

namespace torvan {

// Element of a free module R^rank, componentwise.
struct ModuleElem {
  RingPtr ring;
  std::vector<Polynomial> comps;

  int rank() const { return static_cast<int>(comps.size()); }
  bool is_zero() const;

  static ModuleElem zero(const RingPtr& ring, int rank);
  static ModuleElem basis(const RingPtr& ring, int rank, int pos);
  // Rank-1 wrapper for ideal-level work.
  static ModuleElem wrap(const Polynomial& f);
};

ModuleElem operator+(const ModuleElem& a, const ModuleElem& b);
ModuleElem operator-(const ModuleElem& a, const ModuleElem& b);
ModuleElem operator-(const ModuleElem& a);
ModuleElem times_term(const ModuleElem& a, const Monomial& m, const FieldElem& c);
ModuleElem scaled(const ModuleElem& a, const FieldElem& c);
bool operator==(const ModuleElem& a, const ModuleElem& b);

// A monomial in a free module: monomial times a basis position.
struct ModMono {
  Monomial mono;
  int pos = 0;
};

class ModuleOrder;
using ModuleOrderPtr = std::shared_ptr<const ModuleOrder>;

// Total order on module monomials. Three shapes cover everything here:
// position-over-term on the ring order, Schreyer orders induced by the lead
// terms of a column set, and the two-block order used internally for syzygy
// computations (ambient block dominates the coefficient block).
class ModuleOrder {
public:
  static ModuleOrderPtr pot(RingPtr ring);
  static ModuleOrderPtr schreyer(ModuleOrderPtr parent, std::vector<ModMono> leads,
                                 RingPtr ring);
  static ModuleOrderPtr two_block(ModuleOrderPtr ambient, ModuleOrderPtr coeff, int split);

  // negative: a < b; zero: equal; positive: a > b.
  int cmp(const ModMono& a, const ModMono& b) const;

private:
  enum class Kind { Pot, Schreyer, TwoBlock };
  ModuleOrder() = default;
  Kind kind_ = Kind::Pot;
  RingPtr ring_;
  ModuleOrderPtr parent_, coeff_;
  std::vector<ModMono> leads_;
  int split_ = 0;
};

// Lead module monomial of a nonzero element; nullopt for zero.
std::optional<ModMono> lead_mono(const ModuleElem& v, const ModuleOrder& order);
FieldElem coeff_at(const ModuleElem& v, const ModMono& m);

struct PolyDivision {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

// Deterministic multivariate division: divisors tried in list order, full
// tail reduction, f = sum(q_i d_i) + r with no term of r divisible by any
// lead term of the d_i. Throws on a zero divisor.
PolyDivision divide(const Polynomial& f, const std::vector<Polynomial>& divisors);

struct ModuleDivision {
  std::vector<Polynomial> quotients;
  ModuleElem remainder;
};

ModuleDivision divide_module(const ModuleElem& f, const std::vector<ModuleElem>& divisors,
                             const ModuleOrder& order);

// Reduced Groebner basis of an ideal under the ring's order: monic, no lead
// term divides any term of another element, sorted by descending lead.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens);

// Reduced module Groebner basis under the given order.
std::vector<ModuleElem> module_gb(const std::vector<ModuleElem>& cols, int rank,
                                  const ModuleOrderPtr& order);

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis);

// Generators of the ideal intersected with the subring on the kept
// variables. `keep` must be a suffix of the ring's variables.
std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens,
                                  const std::vector<std::string>& keep);
std::vector<Polynomial> eliminate_prefix(const std::vector<Polynomial>& gens, int drop_count);

// Ideal intersection (via the one-tag-variable elimination trick).
std::vector<Polynomial> intersect_ideals(const std::vector<Polynomial>& a,
                                         const std::vector<Polynomial>& b);

// Syzygies of a column set in R^rank over the free ring.
std::vector<ModuleElem> syzygies(const std::vector<ModuleElem>& cols, int rank);

// Fixed column set inside R^rank over a coordinate ring (ambient modulo its
// relations). Provides the syzygy generators, membership and lifts, and the
// induced Schreyer order for chaining into resolutions. The relations of the
// coordinate ring are adjoined internally; their coefficients are never
// reported, so results are relative to the quotient.
class SubmoduleEngine {
public:
  SubmoduleEngine(CoordPtr coords, std::vector<ModuleElem> cols, int rank,
                  ModuleOrderPtr ambient = nullptr);

  // Generators of the syzygy module over the coordinate ring; entries are in
  // normal form modulo the coordinate relations.
  const std::vector<ModuleElem>& syzygy_generators() const { return syzygies_; }

  // Coefficients expressing target as a combination of the columns modulo
  // the coordinate relations; nullopt if target is not in the span.
  std::optional<std::vector<Polynomial>> lift(const ModuleElem& target) const;
  bool contains(const ModuleElem& target) const;

  const ModuleOrderPtr& induced_order() const { return induced_; }

private:
  CoordPtr coords_;
  std::vector<ModuleElem> cols_;
  int rank_;
  int ncols_;
  std::vector<int> zero_cols_;
  ModuleOrderPtr aug_order_;
  ModuleOrderPtr induced_;
  std::vector<ModuleElem> gb_;         // augmented-module GB
  std::vector<ModuleElem> syzygies_;
};

// Normal form of v against the span of cols plus the coordinate relations.
ModuleElem normal_form_over(const CoordPtr& coords, const ModuleElem& v,
                            const std::vector<ModuleElem>& cols, int rank);

// Polynomial normal form modulo the coordinate relations only.
Polynomial reduce_mod_coords(const CoordPtr& coords, const Polynomial& f);
ModuleElem reduce_mod_coords(const CoordPtr& coords, const ModuleElem& v);

// Drops generators contained in the span of the preceding kept ones plus the
// coordinate relations. When element degrees are supplied the generators are
// processed in ascending degree, which makes the kept set minimal for graded
// inputs. Deterministic.
std::vector<ModuleElem> trim_generators(const CoordPtr& coords,
                                        const std::vector<ModuleElem>& gens, int rank,
                                        const std::vector<long long>* degrees = nullptr);

// Total deterministic comparison used for canonical sorting of outputs.
int cmp_total(const ModuleElem& a, const ModuleElem& b, const ModuleOrder& order);

}  // namespace torvan

#endif
