#ifndef TORVAN_GROUP_HPP
#define TORVAN_GROUP_HPP

#include <cstdint>
#include <optional>

#include "torvan/resolutions.hpp"

namespace torvan {

// Dense matrix over an exact field; row-major.
class FieldMatrix {
public:
  FieldMatrix(Field field, int rows, int cols);
  static FieldMatrix identity(Field field, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldElem& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  FieldElem& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Field& field() const { return field_; }

  FieldMatrix multiply(const FieldMatrix& other) const;
  FieldElem det() const;                       // Gaussian elimination, exact
  std::optional<FieldMatrix> inverse() const;  // nullopt when singular

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

private:
  Field field_;
  int rows_, cols_;
  std::vector<FieldElem> a_;
};

// Invertible matrix acting on coordinates; the inverse is cached because
// translation substitutes by it.
struct GroupElement {
  FieldMatrix mat;
  FieldMatrix inv;

  int n() const { return mat.rows(); }
  static GroupElement from_matrix(const FieldMatrix& m);  // throws if singular
  static GroupElement identity(Field field, int n);
};

// Deterministic per-trial sampling: entries uniform over F_p, or integers in
// [-bound, bound] over Q; singular draws are retried up to max_attempts.
struct SamplerPolicy {
  std::uint64_t seed = 0;
  long long bound = 10;
  int max_attempts = 16;
};

// Counter-based generator so trial t is a pure function of (seed, t)
// regardless of evaluation order.
class SampleStream {
public:
  SampleStream(std::uint64_t seed, std::uint64_t trial);
  std::uint64_t next_u64();
  std::uint64_t next_below(std::uint64_t n);  // uniform in [0, n), rejection
  FieldElem next_field_elem(const Field& f, long long bound);

private:
  std::uint64_t state_;
};

GroupElement sample_group_element(const SamplerPolicy& policy, const Field& field, int n,
                                  std::uint64_t trial_index);

// How a group element acts on the ring's variables.
struct ActionSpec {
  enum class Kind { Linear, Pluecker };
  Kind kind = Kind::Linear;
  int k = 0;  // Pluecker: minors size
  int n = 0;  // Pluecker: source matrix size

  static ActionSpec linear() { return ActionSpec{Kind::Linear, 0, 0}; }
  static ActionSpec pluecker(int k, int n) { return ActionSpec{Kind::Pluecker, k, n}; }
};

// Lexicographically ordered k-subsets of {0..n-1}.
std::vector<std::vector<int>> k_subsets(int n, int k);
long long binomial(int n, int k);

// Induced matrix on k-subset coordinates: entry (I, J) is the k x k minor of
// g on rows I and columns J. Multiplicative in g.
FieldMatrix compound_matrix(const FieldMatrix& g, int k);

// The matrix whose substitution realizes translation by g for the given
// action: coordinates transform by the inverse so that supports transform
// covariantly (V(I) -> g V(I)).
FieldMatrix substitution_matrix(const GroupElement& g, const ActionSpec& action);

// The ring automorphism x_i -> sum_j M[i][j] x_j.
RingMap linear_ring_map(const RingPtr& ring, const FieldMatrix& m);

// Pushforward of the module along multiplication by g: applies x -> g^{-1} x
// to every presentation entry.
Presentation translate_module(const Presentation& f, const GroupElement& g,
                              const ActionSpec& action);

}  // namespace torvan

#endif
