#ifndef TORVAN_RING_HPP
#define TORVAN_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torvan/arith.hpp"

namespace torvan {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

enum class OrderKind { Grevlex, Lex, Block };

// Block(k): the first k variables dominate; grevlex within each block.
// Grevlex and Lex use the weighted degree where applicable.
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  int block = 0;  // for Block: size of the leading (eliminated) block

  static MonomialOrder grevlex() { return {OrderKind::Grevlex, 0}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder block_elim(int k) { return {OrderKind::Block, k}; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && a.block == b.block;
  }
};

// Exponent vector with its weighted degree cached. Exponents are 16-bit;
// desk-scale degrees never get near the cap (checked on multiply).
class Monomial {
public:
  Monomial() = default;
  Monomial(std::vector<std::uint16_t> exps, const std::vector<int>& weights);

  static Monomial one(int nvars, const std::vector<int>& weights);
  static Monomial variable(int i, int nvars, const std::vector<int>& weights);

  int nvars() const { return static_cast<int>(exps_.size()); }
  std::uint16_t exp(int i) const { return exps_[i]; }
  const std::vector<std::uint16_t>& exps() const { return exps_; }
  long long degree() const { return degree_; }
  bool is_one() const { return degree_ == 0 && !has_positive(); }

  Monomial times(const Monomial& other, const std::vector<int>& weights) const;
  bool divides(const Monomial& other) const;
  Monomial quotient(const Monomial& other, const std::vector<int>& weights) const;  // *this / other
  static Monomial lcm(const Monomial& a, const Monomial& b, const std::vector<int>& weights);
  static bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
  bool has_positive() const;
  std::vector<std::uint16_t> exps_;
  long long degree_ = 0;
};

// Three-way comparison under an order: negative if a < b, 0 if equal,
// positive if a > b. The free-function form is the public contract; Ring
// provides a bound convenience.
int cmp_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& order,
                  const std::vector<int>& weights);

struct Term {
  Monomial mono;
  FieldElem coeff;
};

class Polynomial;

// Immutable descriptor of a polynomial ring: named variables over an exact
// field, positive integer weights, and a monomial order.
class Ring {
public:
  static RingPtr make(std::vector<std::string> vars, Field field,
                      std::vector<int> weights = {},
                      MonomialOrder order = MonomialOrder::grevlex());

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const Field& field() const { return field_; }
  const std::vector<int>& weights() const { return weights_; }
  const MonomialOrder& order() const { return order_; }
  bool standard_graded() const;
  std::optional<int> var_index(const std::string& name) const;

  int cmp(const Monomial& a, const Monomial& b) const {
    return cmp_monomials(a, b, order_, weights_);
  }

  // Same variables/field/weights, different order (shares nothing else).
  RingPtr with_order(MonomialOrder order) const;

private:
  Ring() : field_(Field::rationals()) {}
  std::vector<std::string> vars_;
  Field field_;
  std::vector<int> weights_;
  MonomialOrder order_;
};

// Sparse polynomial: terms with nonzero coefficients, strictly descending in
// the ring's order. The zero polynomial has no terms.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, std::vector<Term> terms);  // normalizes

  static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
  static Polynomial constant(const RingPtr& ring, const FieldElem& c);
  static Polynomial from_int(const RingPtr& ring, long long n);
  static Polynomial variable(const RingPtr& ring, int i);
  static Polynomial term(const RingPtr& ring, const Monomial& m, const FieldElem& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_[0].mono.is_one(); }
  bool is_unit_constant() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
  const Term& lead() const;
  long long degree() const;  // weighted; -1 for zero

  bool homogeneous() const;
  // Degree if homogeneous (zero counts as homogeneous of any degree).
  std::optional<long long> homogeneous_degree() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const FieldElem& c) const;
  Polynomial times_term(const Monomial& m, const FieldElem& c) const;
  Polynomial pow(int e) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  FieldElem eval(const std::vector<FieldElem>& point) const;
  std::string str() const;

private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

void require_same_ring(const Polynomial& a, const Polynomial& b);
void require_same_ring(const RingPtr& a, const RingPtr& b);

// Parses the printer's syntax: signed sums of products of coefficient
// literals ("3", "-1/2") and powers ("x0^2"), with parentheses allowed.
// Round-trips with Polynomial::str().
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

// Ring map determined by an image polynomial per source variable. A
// default-constructed map is empty and unusable; it only exists so maps can
// sit in aggregates that are filled in later.
class RingMap {
public:
  RingMap() = default;
  RingMap(RingPtr source, RingPtr target, std::vector<Polynomial> images);

  static RingMap identity(const RingPtr& ring);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& f) const;
  RingMap then(const RingMap& next) const;  // next ∘ this

private:
  RingPtr source_, target_;
  std::vector<Polynomial> images_;
};

// A coordinate ring: ambient polynomial ring modulo a fixed ideal, the
// ideal given by a reduced Groebner basis (empty for the free ring). All
// homological computations downstream are relative to one of these.
struct CoordRing {
  RingPtr ring;
  std::vector<Polynomial> relations;  // reduced GB of the defining ideal

  bool is_free() const { return relations.empty(); }
};
using CoordPtr = std::shared_ptr<const CoordRing>;

CoordPtr free_coords(const RingPtr& ring);

}  // namespace torvan

#endif
