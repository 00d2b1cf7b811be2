#include "torvan/resolutions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace torvan {

ZPoly ZPoly::from_int(long long n) {
  ZPoly p;
  p.set(0, n);
  return p;
}

ZPoly ZPoly::t_power(int e, long long coeff) {
  ZPoly p;
  p.set(e, coeff);
  return p;
}

long long ZPoly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? 0 : it->second;
}

void ZPoly::set(int e, long long v) {
  if (v == 0)
    c_.erase(e);
  else
    c_[e] = v;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  for (const auto& [e, v] : b.c_) r.set(e, r.coeff(e) + v);
  return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + b.negated(); }

ZPoly ZPoly::negated() const {
  ZPoly r;
  for (const auto& [e, v] : c_) r.c_[e] = -v;
  return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  for (const auto& [ea, va] : a.c_)
    for (const auto& [eb, vb] : b.c_) r.set(ea + eb, r.coeff(ea + eb) + va * vb);
  return r;
}

std::string ZPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : c_) {
    long long a = v;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      a = a < 0 ? -a : a;
    }
    if (e == 0 || a != 1) os << a;
    if (e != 0) {
      if (a != 1) os << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

FreeModule FreeModule::make(CoordPtr coords, std::vector<long long> degs) {
  FreeModule m;
  m.coords = std::move(coords);
  m.gen_degs = std::move(degs);
  return m;
}

bool ModuleMap::is_homogeneous() const {
  for (int j = 0; j < source.rank(); ++j)
    for (int i = 0; i < target.rank(); ++i) {
      const Polynomial& f = entry(i, j);
      if (f.is_zero()) continue;
      auto d = f.homogeneous_degree();
      if (!d || *d != source.gen_degs[j] - target.gen_degs[i]) return false;
    }
  return true;
}

ModuleMap make_map(FreeModule target, FreeModule source, std::vector<ModuleElem> cols) {
  if (static_cast<int>(cols.size()) != source.rank())
    throw Error("module map: column count != source rank");
  for (const auto& c : cols)
    if (c.rank() != target.rank()) throw Error("module map: column rank != target rank");
  ModuleMap m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.cols = std::move(cols);
  return m;
}

std::optional<long long> element_degree(const ModuleElem& v,
                                        const std::vector<long long>& gen_degs) {
  std::optional<long long> deg;
  for (int i = 0; i < v.rank(); ++i) {
    if (v.comps[i].is_zero()) continue;
    auto d = v.comps[i].homogeneous_degree();
    if (!d) return std::nullopt;
    long long total = *d + gen_degs[i];
    if (deg && *deg != total) return std::nullopt;
    deg = total;
  }
  return deg;
}

ModuleMap make_map_inferred(FreeModule target, std::vector<ModuleElem> cols) {
  std::vector<long long> src_degs;
  src_degs.reserve(cols.size());
  for (const auto& c : cols) {
    auto d = element_degree(c, target.gen_degs);
    if (!d && !c.is_zero()) throw ValidationError("column is not homogeneous; give explicit degrees");
    src_degs.push_back(d.value_or(0));
  }
  FreeModule source = FreeModule::make(target.coords, std::move(src_degs));
  return make_map(std::move(target), std::move(source), std::move(cols));
}

ModuleElem apply_map(const ModuleMap& map, const ModuleElem& v) {
  if (v.rank() != map.source.rank()) throw Error("apply_map: rank mismatch");
  ModuleElem out = ModuleElem::zero(v.ring, map.target.rank());
  for (int j = 0; j < v.rank(); ++j) {
    if (v.comps[j].is_zero()) continue;
    for (int i = 0; i < map.target.rank(); ++i)
      out.comps[i] = out.comps[i] + v.comps[j] * map.cols[j].comps[i];
  }
  return out;
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  std::vector<ModuleElem> cols;
  cols.reserve(g.cols.size());
  for (const auto& c : g.cols) cols.push_back(apply_map(f, c));
  return make_map(f.target, g.source, std::move(cols));
}

bool is_zero_map_over(const CoordPtr& coords, const ModuleMap& map) {
  for (const auto& c : map.cols)
    if (!reduce_mod_coords(coords, c).is_zero()) return false;
  return true;
}

Presentation cyclic_presentation(const CoordPtr& coords, const std::vector<Polynomial>& ideal_gens,
                                 long long gen_deg, std::string label) {
  FreeModule target = FreeModule::make(coords, {gen_deg});
  std::vector<ModuleElem> cols;
  std::vector<long long> degs;
  for (const auto& f : ideal_gens) {
    require_same_ring(f.ring(), coords->ring);
    Polynomial r = reduce_mod_coords(coords, f);
    if (r.is_zero()) continue;
    cols.push_back(ModuleElem::wrap(r));
    auto d = r.homogeneous_degree();
    degs.push_back(d ? *d + gen_deg : 0);
  }
  FreeModule source = FreeModule::make(coords, std::move(degs));
  Presentation p;
  p.rel = make_map(std::move(target), std::move(source), std::move(cols));
  p.label = std::move(label);
  return p;
}

Presentation free_presentation(const CoordPtr& coords, std::vector<long long> gen_degs,
                               std::string label) {
  FreeModule target = FreeModule::make(coords, std::move(gen_degs));
  FreeModule source = FreeModule::make(coords, {});
  Presentation p;
  p.rel = make_map(std::move(target), std::move(source), {});
  p.label = std::move(label);
  return p;
}

Presentation present_over_ambient(const Presentation& p) {
  const CoordPtr& coords = p.coords();
  if (coords->is_free()) return p;
  CoordPtr ambient = free_coords(coords->ring);
  FreeModule target = FreeModule::make(ambient, p.rel.target.gen_degs);
  std::vector<ModuleElem> cols = p.rel.cols;
  std::vector<long long> degs = p.rel.source.gen_degs;
  for (const auto& q : coords->relations) {
    auto qd = q.homogeneous_degree();
    for (int i = 0; i < target.rank(); ++i) {
      ModuleElem c = ModuleElem::zero(coords->ring, target.rank());
      c.comps[i] = q;
      cols.push_back(std::move(c));
      degs.push_back((qd ? *qd : 0) + target.gen_degs[i]);
    }
  }
  FreeModule source = FreeModule::make(ambient, std::move(degs));
  Presentation out;
  out.rel = make_map(std::move(target), std::move(source), std::move(cols));
  out.label = p.label;
  return out;
}

const FreeModule& FreeResolution::module_at(int i) const {
  if (i == 0) return maps.front().target;
  return maps[i - 1].source;
}

FreeResolution resolve(const Presentation& p, int max_length) {
  if (max_length < 1) throw Error("resolve: max_length must be >= 1");
  const CoordPtr& coords = p.coords();
  FreeResolution out;
  out.base = p;

  // Normalize the presentation map: entries in normal form, zero and
  // redundant columns dropped.
  bool graded = presentation_is_graded(p);
  std::vector<long long> d1_degs = p.rel.source.gen_degs;
  std::vector<ModuleElem> d1_cols =
      trim_generators(coords, p.rel.cols, p.ngens(), graded ? &d1_degs : nullptr);
  std::vector<long long> degs;
  for (const auto& c : d1_cols) {
    auto d = element_degree(c, p.rel.target.gen_degs);
    degs.push_back(d.value_or(0));
  }
  FreeModule f0 = FreeModule::make(coords, p.rel.target.gen_degs);
  FreeModule f1 = FreeModule::make(coords, degs);
  out.maps.push_back(make_map(f0, f1, d1_cols));
  if (d1_cols.empty()) {
    out.complete = true;
    return out;
  }

  ModuleOrderPtr ambient = ModuleOrder::pot(coords->ring);
  for (int step = 1; step < max_length; ++step) {
    const ModuleMap& last = out.maps.back();
    SubmoduleEngine eng(coords, last.cols, last.target.rank(), ambient);
    std::vector<ModuleElem> syz = eng.syzygy_generators();
    std::vector<long long> syz_degs;
    bool syz_graded = graded;
    for (const auto& s : syz) {
      auto d = element_degree(s, last.source.gen_degs);
      if (!d) syz_graded = false;
      syz_degs.push_back(d.value_or(0));
    }
    std::vector<ModuleElem> trimmed =
        trim_generators(coords, syz, last.source.rank(), syz_graded ? &syz_degs : nullptr);
    if (trimmed.empty()) {
      out.complete = true;
      return out;
    }
    std::vector<long long> next_degs;
    for (const auto& s : trimmed) {
      auto d = element_degree(s, last.source.gen_degs);
      next_degs.push_back(d.value_or(0));
    }
    FreeModule next = FreeModule::make(coords, next_degs);
    out.maps.push_back(make_map(last.source, next, trimmed));
    ambient = eng.induced_order();
  }
  if (coords->is_free() && max_length > coords->ring->nvars())
    throw InvariantError("resolution over a polynomial ring exceeded the syzygy bound");
  out.complete = false;
  return out;
}

bool presentation_is_graded(const Presentation& p) {
  if (!p.rel.is_homogeneous()) return false;
  for (const auto& q : p.coords()->relations)
    if (!q.homogeneous()) return false;
  return true;
}

namespace {

struct MutableResolution {
  std::vector<std::vector<long long>> degs;            // degs[i] = generators of F_i
  std::vector<std::vector<std::vector<Polynomial>>> m; // m[k][i][j]: d_{k+1} entries
};

// Removes generator `r` of F_level together with generator `c` of
// F_{level+1}, assuming d_{level+1} has an invertible entry at (r, c) and
// that its row r and column c have already been cleared elsewhere.
void drop_pair(MutableResolution& R, int level, int r, int c) {
  auto drop_row = [](std::vector<std::vector<Polynomial>>& mat, int row) {
    mat.erase(mat.begin() + row);
  };
  auto drop_col = [](std::vector<std::vector<Polynomial>>& mat, int col) {
    for (auto& row : mat) row.erase(row.begin() + col);
  };
  drop_row(R.m[level], r);
  drop_col(R.m[level], c);
  R.degs[level].erase(R.degs[level].begin() + r);
  R.degs[level + 1].erase(R.degs[level + 1].begin() + c);
  if (level + 1 < static_cast<int>(R.m.size())) drop_row(R.m[level + 1], c);
  if (level > 0) drop_col(R.m[level - 1], r);
}

}  // namespace

FreeResolution minimalize(const FreeResolution& f) {
  const CoordPtr& coords = f.base.coords();
  const RingPtr& ring = coords->ring;
  for (const auto& m : f.maps)
    if (!m.is_homogeneous()) throw ValidationError("minimalize requires a graded resolution");

  MutableResolution R;
  R.degs.push_back(f.maps.front().target.gen_degs);
  for (const auto& m : f.maps) R.degs.push_back(m.source.gen_degs);
  for (const auto& m : f.maps) {
    std::vector<std::vector<Polynomial>> mat(m.target.rank(),
                                             std::vector<Polynomial>(m.source.rank()));
    for (int i = 0; i < m.target.rank(); ++i)
      for (int j = 0; j < m.source.rank(); ++j)
        mat[i][j] = reduce_mod_coords(coords, m.entry(i, j));
    R.m.push_back(std::move(mat));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int level = 0; level < static_cast<int>(R.m.size()); ++level) {
      auto& M = R.m[level];
      int rows = static_cast<int>(M.size());
      int cols_n = rows ? static_cast<int>(M[0].size()) : 0;
      int pr = -1, pc = -1;
      for (int i = 0; i < rows && pr < 0; ++i)
        for (int j = 0; j < cols_n; ++j)
          if (M[i][j].is_unit_constant()) {
            pr = i;
            pc = j;
            break;
          }
      if (pr < 0) continue;
      changed = true;
      FieldElem u = M[pr][pc].lead().coeff;
      FieldElem uinv = u.inverse();
      // Clear row pr by column operations on d_{level+1}; mirror as row
      // operations on d_{level+2}.
      for (int j = 0; j < cols_n; ++j) {
        if (j == pc || M[pr][j].is_zero()) continue;
        Polynomial lambda = M[pr][j].scaled(uinv);
        for (int i = 0; i < rows; ++i)
          M[i][j] = reduce_mod_coords(coords, M[i][j] - lambda * M[i][pc]);
        if (level + 1 < static_cast<int>(R.m.size())) {
          auto& N = R.m[level + 1];
          for (std::size_t t = 0; t < N[pc].size(); ++t)
            N[pc][t] = reduce_mod_coords(coords, N[pc][t] + lambda * N[j][t]);
        }
      }
      // Clear column pc by row operations; mirror as column operations on
      // d_level.
      for (int i = 0; i < rows; ++i) {
        if (i == pr || M[i][pc].is_zero()) continue;
        Polynomial mu = M[i][pc].scaled(uinv);
        for (int j = 0; j < cols_n; ++j)
          M[i][j] = reduce_mod_coords(coords, M[i][j] - mu * M[pr][j]);
        if (level > 0) {
          auto& P = R.m[level - 1];
          for (std::size_t t = 0; t < P.size(); ++t)
            P[t][pr] = reduce_mod_coords(coords, P[t][pr] + mu * P[t][i]);
        }
      }
      // Neighbouring entries against the cancelled pair must now vanish.
      if (level + 1 < static_cast<int>(R.m.size()))
        for (auto& v : R.m[level + 1][pc])
          if (!v.is_zero()) throw InvariantError("minimalize: d^2 != 0 at cancelled column");
      if (level > 0)
        for (auto& row : R.m[level - 1])
          if (!row[pr].is_zero()) throw InvariantError("minimalize: d^2 != 0 at cancelled row");
      drop_pair(R, level, pr, pc);
    }
  }

  // Drop trailing zero-rank stages.
  while (!R.m.empty() && R.degs.back().empty()) {
    R.m.pop_back();
    R.degs.pop_back();
  }

  FreeResolution out;
  out.complete = f.complete;
  std::vector<FreeModule> mods;
  for (auto& d : R.degs) mods.push_back(FreeModule::make(coords, d));
  if (R.m.empty()) {
    // Everything cancelled down to F_0 alone: a free module.
    out.base = free_presentation(coords, R.degs[0], f.base.label);
    out.complete = true;
    return out;
  }
  for (std::size_t k = 0; k < R.m.size(); ++k) {
    std::vector<ModuleElem> cols;
    int rows = mods[k].rank();
    for (int j = 0; j < mods[k + 1].rank(); ++j) {
      ModuleElem c = ModuleElem::zero(ring, rows);
      for (int i = 0; i < rows; ++i) c.comps[i] = R.m[k][i][j];
      cols.push_back(std::move(c));
    }
    out.maps.push_back(make_map(mods[k], mods[k + 1], std::move(cols)));
  }
  Presentation base;
  base.rel = out.maps.front();
  base.label = f.base.label;
  out.base = base;
  return out;
}

ZPoly monomial_quotient_numerator(const std::vector<Monomial>& gens,
                                  const std::vector<int>& weights) {
  // Minimal generators only.
  std::vector<Monomial> min;
  for (const auto& m : gens) {
    bool redundant = false;
    for (const auto& o : gens)
      if (!(o == m) && o.divides(m)) {
        // Equal monomials: keep the first occurrence only.
        redundant = true;
        break;
      }
    if (!redundant && !(std::find(min.begin(), min.end(), m) != min.end())) min.push_back(m);
  }
  if (min.empty()) return ZPoly::from_int(1);
  for (const auto& m : min)
    if (m.is_one()) return ZPoly();
  if (min.size() == 1)
    return ZPoly::from_int(1) - ZPoly::t_power(static_cast<int>(min[0].degree()));
  bool coprime = true;
  for (std::size_t a = 0; a < min.size() && coprime; ++a)
    for (std::size_t b = a + 1; b < min.size() && coprime; ++b)
      if (!Monomial::coprime(min[a], min[b])) coprime = false;
  if (coprime) {
    ZPoly p = ZPoly::from_int(1);
    for (const auto& m : min)
      p = p * (ZPoly::from_int(1) - ZPoly::t_power(static_cast<int>(m.degree())));
    return p;
  }
  // Pivot on the most frequent variable among the minimal generators.
  int n = min[0].nvars();
  std::vector<int> freq(n, 0);
  for (const auto& m : min)
    for (int i = 0; i < n; ++i)
      if (m.exp(i)) ++freq[i];
  int pivot = 0;
  for (int i = 1; i < n; ++i)
    if (freq[i] > freq[pivot]) pivot = i;

  std::vector<Monomial> colon, plus;
  for (const auto& m : min) {
    std::vector<std::uint16_t> e = m.exps();
    if (e[pivot] > 0) --e[pivot];
    colon.push_back(Monomial(std::move(e), weights));
  }
  Monomial xv = Monomial::variable(pivot, n, weights);
  plus = min;
  plus.push_back(xv);
  return ZPoly::t_power(weights[pivot]) * monomial_quotient_numerator(colon, weights) +
         monomial_quotient_numerator(plus, weights);
}

ZPoly k_polynomial(const Presentation& p) {
  if (!presentation_is_graded(p)) throw ValidationError("k_polynomial requires a graded module");
  Presentation amb = present_over_ambient(p);
  const RingPtr& ring = amb.coords()->ring;
  int rank = amb.ngens();
  if (rank == 0) return ZPoly();
  std::vector<ModuleElem> nonzero;
  for (const auto& c : amb.rel.cols)
    if (!c.is_zero()) nonzero.push_back(c);
  auto order = ModuleOrder::pot(ring);
  auto gb = module_gb(nonzero, rank, order);
  std::vector<std::vector<Monomial>> lead_ideals(rank);
  for (const auto& g : gb) {
    auto lm = lead_mono(g, *order);
    lead_ideals[lm->pos].push_back(lm->mono);
  }
  ZPoly total;
  for (int i = 0; i < rank; ++i) {
    ZPoly ni = monomial_quotient_numerator(lead_ideals[i], ring->weights());
    total = total + ZPoly::t_power(static_cast<int>(amb.rel.target.gen_degs[i])) * ni;
  }
  return total;
}

ZPoly k_polynomial_via_resolution(const Presentation& p) {
  if (!presentation_is_graded(p)) throw ValidationError("k_polynomial requires a graded module");
  Presentation amb = present_over_ambient(p);
  FreeResolution res = resolve(amb, amb.coords()->ring->nvars() + 1);
  if (!res.complete) throw InvariantError("ambient resolution did not terminate");
  ZPoly total;
  for (int i = 0; i <= res.length(); ++i) {
    const FreeModule& m = res.module_at(i);
    ZPoly layer;
    for (long long d : m.gen_degs) layer = layer + ZPoly::t_power(static_cast<int>(d));
    total = (i % 2 == 0) ? total + layer : total - layer;
  }
  return total;
}

std::map<std::pair<int, long long>, int> betti_numbers(const FreeResolution& minimal) {
  std::map<std::pair<int, long long>, int> b;
  for (int i = 0; i <= minimal.length(); ++i)
    for (long long d : minimal.module_at(i).gen_degs) ++b[{i, d}];
  return b;
}

std::string betti_table_text(const FreeResolution& minimal) {
  auto b = betti_numbers(minimal);
  if (b.empty()) return "(zero module)\n";
  long long row_min = 0, row_max = 0;
  bool first = true;
  int imax = 0;
  for (const auto& [key, cnt] : b) {
    long long row = key.second - key.first;
    if (first) {
      row_min = row_max = row;
      first = false;
    } else {
      row_min = std::min(row_min, row);
      row_max = std::max(row_max, row);
    }
    imax = std::max(imax, key.first);
  }
  std::ostringstream os;
  os << "      ";
  for (int i = 0; i <= imax; ++i) os << i << "\t";
  os << "\n";
  for (long long row = row_min; row <= row_max; ++row) {
    os << row << ":    ";
    for (int i = 0; i <= imax; ++i) {
      auto it = b.find({i, row + i});
      if (it == b.end())
        os << ".\t";
      else
        os << it->second << "\t";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace torvan
