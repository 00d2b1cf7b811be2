#include "torvan/homology.hpp"

#include <algorithm>

namespace torvan {

ChainComplex complex_from_resolution(const FreeResolution& r) {
  ChainComplex c;
  c.coords = r.base.coords();
  c.terms.push_back(r.maps.front().target);
  for (const auto& m : r.maps) c.terms.push_back(m.source);
  c.diffs = r.maps;
  c.rels.assign(c.terms.size(), {});
  return c;
}

bool is_complex(const ChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.diffs.size(); ++k) {
    ModuleMap comp = compose(c.diffs[k], c.diffs[k + 1]);
    for (const auto& col : comp.cols) {
      // Composition must land in the declared relations of the target term.
      ModuleElem r = normal_form_over(c.coords, col, c.rels[k], comp.target.rank());
      if (!r.is_zero()) return false;
    }
  }
  // Differentials carry declared relations into declared relations.
  for (std::size_t i = 1; i < c.terms.size(); ++i) {
    for (const auto& rel : c.rels[i]) {
      ModuleElem img = apply_map(c.diffs[i - 1], rel);
      ModuleElem r = normal_form_over(c.coords, img, c.rels[i - 1], c.terms[i - 1].rank());
      if (!r.is_zero()) return false;
    }
  }
  return true;
}

namespace {

// Basis pairing for F (x) G: (a, b) -> a * rank(G) + b.
int pair_index(int a, int b, int rank_g) { return a * rank_g + b; }

std::vector<long long> tensor_degs(const FreeModule& f, const FreeModule& g) {
  std::vector<long long> degs;
  degs.reserve(static_cast<std::size_t>(f.rank()) * g.rank());
  for (int a = 0; a < f.rank(); ++a)
    for (int b = 0; b < g.rank(); ++b) degs.push_back(f.gen_degs[a] + g.gen_degs[b]);
  return degs;
}

// d (x) id_G as a map F (x) G -> F' (x) G.
ModuleMap tensor_map_left(const ModuleMap& d, const FreeModule& g) {
  const RingPtr& ring = d.target.coords->ring;
  FreeModule target = FreeModule::make(d.target.coords, tensor_degs(d.target, g));
  FreeModule source = FreeModule::make(d.target.coords, tensor_degs(d.source, g));
  std::vector<ModuleElem> cols;
  cols.reserve(source.rank());
  for (int c = 0; c < d.source.rank(); ++c)
    for (int b = 0; b < g.rank(); ++b) {
      ModuleElem col = ModuleElem::zero(ring, target.rank());
      for (int a = 0; a < d.target.rank(); ++a)
        col.comps[pair_index(a, b, g.rank())] = d.entry(a, c);
      cols.push_back(std::move(col));
    }
  return make_map(std::move(target), std::move(source), std::move(cols));
}

// id_F (x) d as a map F (x) G -> F (x) G'.
ModuleMap tensor_map_right(const FreeModule& f, const ModuleMap& d) {
  const RingPtr& ring = d.target.coords->ring;
  FreeModule target = FreeModule::make(d.target.coords, tensor_degs(f, d.target));
  FreeModule source = FreeModule::make(d.target.coords, tensor_degs(f, d.source));
  std::vector<ModuleElem> cols;
  cols.reserve(source.rank());
  for (int a = 0; a < f.rank(); ++a)
    for (int c = 0; c < d.source.rank(); ++c) {
      ModuleElem col = ModuleElem::zero(ring, target.rank());
      for (int b = 0; b < d.target.rank(); ++b)
        col.comps[pair_index(a, b, d.target.rank())] = d.entry(b, c);
      cols.push_back(std::move(col));
    }
  return make_map(std::move(target), std::move(source), std::move(cols));
}

}  // namespace

ChainComplex tensor_with_module(const ChainComplex& c, const Presentation& n) {
  require_same_ring(c.coords->ring, n.coords()->ring);
  const RingPtr& ring = c.coords->ring;
  const FreeModule& g0 = n.rel.target;
  ChainComplex out;
  out.coords = c.coords;
  for (const auto& t : c.terms)
    out.terms.push_back(FreeModule::make(c.coords, tensor_degs(t, g0)));
  for (const auto& d : c.diffs) out.diffs.push_back(tensor_map_left(d, g0));
  out.rels.resize(out.terms.size());
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    const FreeModule& fi = c.terms[i];
    // id (x) presentation relations.
    for (int a = 0; a < fi.rank(); ++a)
      for (const auto& w : n.rel.cols) {
        ModuleElem col = ModuleElem::zero(ring, out.terms[i].rank());
        for (int b = 0; b < g0.rank(); ++b)
          col.comps[pair_index(a, b, g0.rank())] = w.comps[b];
        if (!col.is_zero()) out.rels[i].push_back(std::move(col));
      }
    // Inherited relations of the complex itself, tensored with G_0.
    for (const auto& r : c.rels[i])
      for (int b = 0; b < g0.rank(); ++b) {
        ModuleElem col = ModuleElem::zero(ring, out.terms[i].rank());
        for (int a = 0; a < fi.rank(); ++a)
          col.comps[pair_index(a, b, g0.rank())] = r.comps[a];
        if (!col.is_zero()) out.rels[i].push_back(std::move(col));
      }
  }
  return out;
}

ChainComplex tensor_with_module(const FreeResolution& r, const Presentation& n) {
  return tensor_with_module(complex_from_resolution(r), n);
}

HomologyModule homology_at(const ChainComplex& c, int i) {
  const CoordPtr& coords = c.coords;
  const RingPtr& ring = coords->ring;
  if (i < 0 || i > c.length()) {
    HomologyModule h;
    h.pres = free_presentation(coords, {});
    h.index = i;
    return h;
  }
  const FreeModule& fi = c.terms[i];
  bool graded = true;
  for (const auto& q : coords->relations)
    if (!q.homogeneous()) graded = false;

  // Numerator: preimage of span(rels[i-1]) under d_i (the whole term when
  // i == 0).
  std::vector<ModuleElem> num_gens;
  if (i == 0) {
    for (int j = 0; j < fi.rank(); ++j) num_gens.push_back(ModuleElem::basis(ring, fi.rank(), j));
  } else {
    const ModuleMap& di = c.diffs[i - 1];
    std::vector<ModuleElem> combined = di.cols;
    for (const auto& r : c.rels[i - 1]) combined.push_back(r);
    SubmoduleEngine eng(coords, combined, di.target.rank());
    for (const auto& s : eng.syzygy_generators()) {
      ModuleElem v{ring, {}};
      v.comps.assign(s.comps.begin(), s.comps.begin() + fi.rank());
      v = reduce_mod_coords(coords, v);
      if (!v.is_zero()) num_gens.push_back(std::move(v));
    }
    std::vector<long long> degs;
    bool all_graded = graded;
    for (const auto& v : num_gens) {
      auto d = element_degree(v, fi.gen_degs);
      if (!d) all_graded = false;
      degs.push_back(d.value_or(0));
    }
    num_gens = trim_generators(coords, num_gens, fi.rank(), all_graded ? &degs : nullptr);
  }

  // Denominator: image of d_{i+1} plus the declared relations in degree i.
  std::vector<ModuleElem> den;
  if (i + 1 <= c.length())
    for (const auto& col : c.diffs[i].cols) den.push_back(col);
  for (const auto& r : c.rels[i]) den.push_back(r);

  SubmoduleEngine num_eng(coords, num_gens, fi.rank());
  std::vector<long long> h_degs;
  bool h_graded = graded;
  for (const auto& v : num_gens) {
    auto d = element_degree(v, fi.gen_degs);
    if (!d) h_graded = false;
    h_degs.push_back(d.value_or(0));
  }
  if (!h_graded) h_degs.assign(num_gens.size(), 0);

  FreeModule target = FreeModule::make(coords, h_degs);
  std::vector<ModuleElem> rel_cols;
  for (const auto& v : den) {
    ModuleElem r = reduce_mod_coords(coords, v);
    if (r.is_zero()) continue;
    auto lifted = num_eng.lift(r);
    if (!lifted)
      throw InvariantError("homology denominator is not contained in the numerator (d^2 != 0?)");
    ModuleElem col{ring, std::move(*lifted)};
    if (!col.is_zero()) rel_cols.push_back(std::move(col));
  }
  for (const auto& s : num_eng.syzygy_generators()) rel_cols.push_back(s);

  std::vector<long long> rel_degs;
  bool rels_graded = h_graded;
  for (const auto& col : rel_cols) {
    auto d = element_degree(col, h_degs);
    if (!d) rels_graded = false;
    rel_degs.push_back(d.value_or(0));
  }
  if (!rels_graded) rel_degs.assign(rel_cols.size(), 0);

  HomologyModule h;
  h.index = i;
  h.pres.rel = make_map(target, FreeModule::make(coords, rel_degs), rel_cols);
  return h;
}

bool module_is_zero(const Presentation& p) {
  const CoordPtr& coords = p.coords();
  if (p.ngens() == 0) return true;
  if (presentation_is_graded(p)) return k_polynomial(p).is_zero();
  for (int j = 0; j < p.ngens(); ++j) {
    ModuleElem e = ModuleElem::basis(coords->ring, p.ngens(), j);
    ModuleElem r = normal_form_over(coords, e, p.rel.cols, p.ngens());
    if (!r.is_zero()) return false;
  }
  return true;
}

bool homology_is_zero(const HomologyModule& h) { return module_is_zero(h.pres); }

DoubleComplex boxed_grid(const FreeResolution& a, const FreeResolution& b) {
  const CoordPtr& coords = a.base.coords();
  require_same_ring(coords->ring, b.base.coords()->ring);
  int rows = a.length() + 1;
  int cols = b.length() + 1;
  DoubleComplex d;
  d.coords = coords;
  d.modules.resize(rows, std::vector<FreeModule>(cols));
  d.horiz.resize(rows, std::vector<ModuleMap>(cols));
  d.vert.resize(rows, std::vector<ModuleMap>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      d.modules[i][j] =
          FreeModule::make(coords, tensor_degs(a.module_at(i), b.module_at(j)));
      if (i >= 1) d.horiz[i][j] = tensor_map_left(a.maps[i - 1], b.module_at(j));
      if (j >= 1) d.vert[i][j] = tensor_map_right(a.module_at(i), b.maps[j - 1]);
    }
  return d;
}

ChainComplex total_complex(const DoubleComplex& d) {
  const CoordPtr& coords = d.coords;
  const RingPtr& ring = coords->ring;
  int rows = d.rows(), cols = d.cols();
  // Exact commutation of every interior square.
  for (int i = 1; i < rows; ++i)
    for (int j = 1; j < cols; ++j) {
      ModuleMap a = compose(d.horiz[i][j - 1], d.vert[i][j]);
      ModuleMap b = compose(d.vert[i - 1][j], d.horiz[i][j]);
      for (std::size_t k = 0; k < a.cols.size(); ++k)
        if (!(a.cols[k] == b.cols[k])) throw Error("double complex squares do not commute");
    }

  int nmax = rows - 1 + cols - 1;
  // Offsets of each block (i, j) with i + j = n inside T_n, i ascending.
  auto blocks_of = [&](int n) {
    std::vector<std::pair<int, int>> blocks;
    for (int i = std::max(0, n - (cols - 1)); i <= std::min(rows - 1, n); ++i)
      blocks.push_back({i, n - i});
    return blocks;
  };

  ChainComplex out;
  out.coords = coords;
  std::vector<std::vector<std::pair<int, int>>> layout;
  for (int n = 0; n <= nmax; ++n) {
    layout.push_back(blocks_of(n));
    std::vector<long long> degs;
    for (auto [i, j] : layout[n])
      for (long long dd : d.modules[i][j].gen_degs) degs.push_back(dd);
    out.terms.push_back(FreeModule::make(coords, degs));
  }
  out.rels.assign(out.terms.size(), {});

  for (int n = 1; n <= nmax; ++n) {
    const auto& src_blocks = layout[n];
    const auto& tgt_blocks = layout[n - 1];
    auto tgt_offset = [&](int bi, int bj) {
      int off = 0;
      for (auto [i, j] : tgt_blocks) {
        if (i == bi && j == bj) return off;
        off += d.modules[i][j].rank();
      }
      return -1;
    };
    std::vector<ModuleElem> cols_out;
    for (auto [i, j] : src_blocks) {
      const FreeModule& block = d.modules[i][j];
      for (int c = 0; c < block.rank(); ++c) {
        ModuleElem col = ModuleElem::zero(ring, out.terms[n - 1].rank());
        if (i >= 1) {
          int off = tgt_offset(i - 1, j);
          const ModuleElem& hc = d.horiz[i][j].cols[c];
          for (int r = 0; r < hc.rank(); ++r) col.comps[off + r] = hc.comps[r];
        }
        if (j >= 1) {
          int off = tgt_offset(i, j - 1);
          const ModuleElem& vc = d.vert[i][j].cols[c];
          bool flip = (i % 2) == 1;  // vertical differential carries (-1)^i
          for (int r = 0; r < vc.rank(); ++r)
            col.comps[off + r] = flip ? -vc.comps[r] : vc.comps[r];
        }
        cols_out.push_back(std::move(col));
      }
    }
    out.diffs.push_back(make_map(out.terms[n - 1], out.terms[n], std::move(cols_out)));
  }
  while (out.terms.size() > 1 && out.terms.back().rank() == 0) {
    out.terms.pop_back();
    out.diffs.pop_back();
    out.rels.pop_back();
  }
  return out;
}

std::vector<HomologyModule> tor(const Presentation& m, const Presentation& n, int i_max) {
  require_same_ring(m.coords()->ring, n.coords()->ring);
  if (i_max < 0) throw Error("tor: i_max must be >= 0");
  FreeResolution res = resolve(m, i_max + 1);
  ChainComplex c = tensor_with_module(res, n);
  std::vector<HomologyModule> out;
  for (int i = 0; i <= i_max; ++i) out.push_back(homology_at(c, i));
  return out;
}

TorSummary summarize(const HomologyModule& h) {
  TorSummary s;
  s.index = h.index;
  if (presentation_is_graded(h.pres)) {
    s.k_poly = k_polynomial(h.pres);
    s.zero = s.k_poly->is_zero();
  } else {
    s.zero = module_is_zero(h.pres);
  }
  return s;
}

std::vector<TorSummary> summarize_all(const std::vector<HomologyModule>& tors) {
  std::vector<TorSummary> out;
  out.reserve(tors.size());
  for (const auto& h : tors) out.push_back(summarize(h));
  return out;
}

BalancedTorReport tor_balanced(const Presentation& m, const Presentation& n, int i_max) {
  BalancedTorReport rep;
  rep.via_left = summarize_all(tor(m, n, i_max));
  rep.via_right = summarize_all(tor(n, m, i_max));
  for (int i = 0; i <= i_max; ++i) {
    const auto& a = rep.via_left[i];
    const auto& b = rep.via_right[i];
    bool same = a.zero == b.zero;
    if (same && a.k_poly && b.k_poly) same = *a.k_poly == *b.k_poly;
    if (!same)
      throw InvariantError("balanced Tor routes disagree at index " + std::to_string(i));
  }
  return rep;
}

FreeResolution map_resolution(const FreeResolution& r, const RingMap& f, const CoordPtr& out) {
  FreeResolution m;
  m.complete = r.complete;
  auto move_module = [&](const FreeModule& fm) {
    return FreeModule::make(out, fm.gen_degs);
  };
  auto move_map = [&](const ModuleMap& map) {
    std::vector<ModuleElem> cols;
    cols.reserve(map.cols.size());
    for (const auto& c : map.cols) {
      ModuleElem col{out->ring, {}};
      for (const auto& p : c.comps)
        col.comps.push_back(reduce_mod_coords(out, f.apply(p)));
      cols.push_back(std::move(col));
    }
    return make_map(move_module(map.target), move_module(map.source), std::move(cols));
  };
  for (const auto& map : r.maps) m.maps.push_back(move_map(map));
  Presentation base;
  base.rel = m.maps.front();
  base.label = r.base.label;
  m.base = base;
  return m;
}

std::vector<HomologyModule> double_complex_tor(const FreeResolution& res_e,
                                               const FreeResolution& res_f,
                                               const RingMap& pull_e, const RingMap& pull_f,
                                               const RingMap& specialize,
                                               const CoordPtr& out, int i_max) {
  if (!res_e.complete || !res_f.complete)
    throw InvariantError("double-complex route requires complete resolutions");
  FreeResolution e2 = map_resolution(res_e, pull_e.then(specialize), out);
  FreeResolution f2 = map_resolution(res_f, pull_f.then(specialize), out);
  DoubleComplex grid = boxed_grid(e2, f2);
  ChainComplex t = total_complex(grid);
  std::vector<HomologyModule> result;
  for (int i = 0; i <= i_max; ++i) result.push_back(homology_at(t, i));
  return result;
}

}  // namespace torvan
