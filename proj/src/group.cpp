#include "torvan/group.hpp"

namespace torvan {

FieldMatrix::FieldMatrix(Field field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * cols, FieldElem::zero(field)) {}

FieldMatrix FieldMatrix::identity(Field field, int n) {
  FieldMatrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldElem::one(field);
  return m;
}

FieldMatrix FieldMatrix::multiply(const FieldMatrix& other) const {
  if (cols_ != other.rows_) throw Error("matrix dimension mismatch");
  FieldMatrix out(field_, rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < other.cols_; ++j)
        out.at(i, j) = out.at(i, j) + at(i, k) * other.at(k, j);
    }
  return out;
}

FieldElem FieldMatrix::det() const {
  if (rows_ != cols_) throw Error("determinant of non-square matrix");
  FieldMatrix m = *this;
  FieldElem d = FieldElem::one(field_);
  for (int c = 0; c < cols_; ++c) {
    int pivot = -1;
    for (int r = c; r < rows_; ++r)
      if (!m.at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return FieldElem::zero(field_);
    if (pivot != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(c, j));
      d = -d;
    }
    d = d * m.at(c, c);
    FieldElem inv = m.at(c, c).inverse();
    for (int r = c + 1; r < rows_; ++r) {
      if (m.at(r, c).is_zero()) continue;
      FieldElem f = m.at(r, c) * inv;
      for (int j = c; j < cols_; ++j) m.at(r, j) = m.at(r, j) - f * m.at(c, j);
    }
  }
  return d;
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
  if (rows_ != cols_) throw Error("inverse of non-square matrix");
  int n = rows_;
  FieldMatrix m = *this;
  FieldMatrix inv = identity(field_, n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (!m.at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(pivot, j), m.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    FieldElem f = m.at(c, c).inverse();
    for (int j = 0; j < n; ++j) {
      m.at(c, j) = m.at(c, j) * f;
      inv.at(c, j) = inv.at(c, j) * f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c).is_zero()) continue;
      FieldElem g = m.at(r, c);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = m.at(r, j) - g * m.at(c, j);
        inv.at(r, j) = inv.at(r, j) - g * inv.at(c, j);
      }
    }
  }
  return inv;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return false;
  return true;
}

GroupElement GroupElement::from_matrix(const FieldMatrix& m) {
  auto inv = m.inverse();
  if (!inv) throw ValidationError("group element matrix is singular");
  return GroupElement{m, *inv};
}

GroupElement GroupElement::identity(Field field, int n) {
  FieldMatrix id = FieldMatrix::identity(field, n);
  return GroupElement{id, id};
}

namespace {

std::uint64_t splitmix_step(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t s = seed;
  std::uint64_t mixed = splitmix_step(s);
  state_ = mixed ^ (0xA0761D6478BD642Full * (trial + 1));
}

std::uint64_t SampleStream::next_u64() { return splitmix_step(state_); }

std::uint64_t SampleStream::next_below(std::uint64_t n) {
  if (n == 0) throw Error("next_below(0)");
  std::uint64_t limit = ~0ull - (~0ull % n);
  while (true) {
    std::uint64_t r = next_u64();
    if (r < limit) return r % n;
  }
}

FieldElem SampleStream::next_field_elem(const Field& f, long long bound) {
  if (f.is_prime_field())
    return FieldElem::residue(f, static_cast<long long>(next_below(f.characteristic())));
  std::uint64_t span = static_cast<std::uint64_t>(2 * bound + 1);
  long long v = static_cast<long long>(next_below(span)) - bound;
  return FieldElem::from_int(f, v);
}

GroupElement sample_group_element(const SamplerPolicy& policy, const Field& field, int n,
                                  std::uint64_t trial_index) {
  if (policy.max_attempts < 1) throw ValidationError("sampler needs max_attempts >= 1");
  SampleStream stream(policy.seed, trial_index);
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt) {
    FieldMatrix m(field, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = stream.next_field_elem(field, policy.bound);
    auto inv = m.inverse();
    if (inv) return GroupElement{m, *inv};
  }
  throw Error("sampler exhausted attempts without an invertible matrix");
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Lexicographic enumeration.
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

FieldMatrix compound_matrix(const FieldMatrix& g, int k) {
  if (g.rows() != g.cols()) throw Error("compound of non-square matrix");
  int n = g.rows();
  if (k < 1 || k > n) throw Error("compound size out of range");
  auto subsets = k_subsets(n, k);
  int m = static_cast<int>(subsets.size());
  FieldMatrix out(g.field(), m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      FieldMatrix minor(g.field(), k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor.at(i, j) = g.at(subsets[a][i], subsets[b][j]);
      out.at(a, b) = minor.det();
    }
  return out;
}

FieldMatrix substitution_matrix(const GroupElement& g, const ActionSpec& action) {
  switch (action.kind) {
    case ActionSpec::Kind::Linear:
      return g.inv;
    case ActionSpec::Kind::Pluecker:
      if (g.n() != action.n) throw ValidationError("pluecker action: group size mismatch");
      return compound_matrix(g.inv, action.k);
  }
  throw Error("unreachable action kind");
}

RingMap linear_ring_map(const RingPtr& ring, const FieldMatrix& m) {
  if (m.rows() != ring->nvars() || m.cols() != ring->nvars())
    throw ValidationError("action matrix size must match the variable count");
  std::vector<Polynomial> images;
  images.reserve(ring->nvars());
  for (int i = 0; i < m.rows(); ++i) {
    Polynomial f = Polynomial::zero(ring);
    for (int j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).is_zero()) continue;
      f = f + Polynomial::variable(ring, j).scaled(m.at(i, j));
    }
    images.push_back(std::move(f));
  }
  return RingMap(ring, ring, std::move(images));
}

Presentation translate_module(const Presentation& f, const GroupElement& g,
                              const ActionSpec& action) {
  const CoordPtr& coords = f.coords();
  RingMap phi = linear_ring_map(coords->ring, substitution_matrix(g, action));
  std::vector<ModuleElem> cols;
  cols.reserve(f.rel.cols.size());
  for (const auto& c : f.rel.cols) {
    ModuleElem out{coords->ring, {}};
    out.comps.reserve(c.rank());
    for (const auto& p : c.comps) out.comps.push_back(reduce_mod_coords(coords, phi.apply(p)));
    cols.push_back(std::move(out));
  }
  Presentation out;
  out.rel = make_map(f.rel.target, f.rel.source, std::move(cols));
  out.label = f.label;
  return out;
}

}  // namespace torvan
