#include "torvan/groebner.hpp"

#include <algorithm>
#include <map>

namespace torvan {

bool ModuleElem::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

ModuleElem ModuleElem::zero(const RingPtr& ring, int rank) {
  ModuleElem v{ring, {}};
  v.comps.assign(rank, Polynomial::zero(ring));
  return v;
}

ModuleElem ModuleElem::basis(const RingPtr& ring, int rank, int pos) {
  ModuleElem v = zero(ring, rank);
  v.comps[pos] = Polynomial::from_int(ring, 1);
  return v;
}

ModuleElem ModuleElem::wrap(const Polynomial& f) { return ModuleElem{f.ring(), {f}}; }

ModuleElem operator+(const ModuleElem& a, const ModuleElem& b) {
  if (a.rank() != b.rank()) throw Error("module rank mismatch");
  ModuleElem r{a.ring, {}};
  r.comps.reserve(a.rank());
  for (int i = 0; i < a.rank(); ++i) r.comps.push_back(a.comps[i] + b.comps[i]);
  return r;
}

ModuleElem operator-(const ModuleElem& a, const ModuleElem& b) { return a + (-b); }

ModuleElem operator-(const ModuleElem& a) {
  ModuleElem r{a.ring, {}};
  r.comps.reserve(a.rank());
  for (const auto& c : a.comps) r.comps.push_back(-c);
  return r;
}

ModuleElem times_term(const ModuleElem& a, const Monomial& m, const FieldElem& c) {
  ModuleElem r{a.ring, {}};
  r.comps.reserve(a.rank());
  for (const auto& p : a.comps) r.comps.push_back(p.times_term(m, c));
  return r;
}

ModuleElem scaled(const ModuleElem& a, const FieldElem& c) {
  ModuleElem r{a.ring, {}};
  r.comps.reserve(a.rank());
  for (const auto& p : a.comps) r.comps.push_back(p.scaled(c));
  return r;
}

bool operator==(const ModuleElem& a, const ModuleElem& b) {
  if (a.rank() != b.rank()) return false;
  for (int i = 0; i < a.rank(); ++i)
    if (!(a.comps[i] == b.comps[i])) return false;
  return true;
}

ModuleOrderPtr ModuleOrder::pot(RingPtr ring) {
  auto o = std::shared_ptr<ModuleOrder>(new ModuleOrder());
  o->kind_ = Kind::Pot;
  o->ring_ = std::move(ring);
  return o;
}

ModuleOrderPtr ModuleOrder::schreyer(ModuleOrderPtr parent, std::vector<ModMono> leads,
                                     RingPtr ring) {
  auto o = std::shared_ptr<ModuleOrder>(new ModuleOrder());
  o->kind_ = Kind::Schreyer;
  o->parent_ = std::move(parent);
  o->leads_ = std::move(leads);
  o->ring_ = std::move(ring);
  return o;
}

ModuleOrderPtr ModuleOrder::two_block(ModuleOrderPtr ambient, ModuleOrderPtr coeff, int split) {
  auto o = std::shared_ptr<ModuleOrder>(new ModuleOrder());
  o->kind_ = Kind::TwoBlock;
  o->parent_ = std::move(ambient);
  o->coeff_ = std::move(coeff);
  o->split_ = split;
  return o;
}

int ModuleOrder::cmp(const ModMono& a, const ModMono& b) const {
  switch (kind_) {
    case Kind::Pot: {
      if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;  // lower position greater
      return ring_->cmp(a.mono, b.mono);
    }
    case Kind::Schreyer: {
      const ModMono& la = leads_[a.pos];
      const ModMono& lb = leads_[b.pos];
      ModMono A{a.mono.times(la.mono, ring_->weights()), la.pos};
      ModMono B{b.mono.times(lb.mono, ring_->weights()), lb.pos};
      int c = parent_->cmp(A, B);
      if (c != 0) return c;
      if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
      return 0;
    }
    case Kind::TwoBlock: {
      bool aa = a.pos < split_, bb = b.pos < split_;
      if (aa != bb) return aa ? 1 : -1;
      if (aa) return parent_->cmp(a, b);
      ModMono as{a.mono, a.pos - split_}, bs{b.mono, b.pos - split_};
      return coeff_->cmp(as, bs);
    }
  }
  throw Error("unreachable module order kind");
}

std::optional<ModMono> lead_mono(const ModuleElem& v, const ModuleOrder& order) {
  std::optional<ModMono> best;
  for (int i = 0; i < v.rank(); ++i) {
    if (v.comps[i].is_zero()) continue;
    ModMono cand{v.comps[i].lead().mono, i};
    if (!best || order.cmp(cand, *best) > 0) best = cand;
  }
  return best;
}

FieldElem coeff_at(const ModuleElem& v, const ModMono& m) {
  for (const auto& t : v.comps[m.pos].terms())
    if (t.mono == m.mono) return t.coeff;
  return FieldElem::zero(v.ring->field());
}

int cmp_total(const ModuleElem& a, const ModuleElem& b, const ModuleOrder& order) {
  auto la = lead_mono(a, order), lb = lead_mono(b, order);
  if (!la && !lb) return 0;
  if (!la) return -1;
  if (!lb) return 1;
  int c = order.cmp(*la, *lb);
  if (c != 0) return c;
  for (int i = 0; i < std::min(a.rank(), b.rank()); ++i) {
    const auto& ta = a.comps[i].terms();
    const auto& tb = b.comps[i].terms();
    for (std::size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
      int cc = a.ring->cmp(ta[k].mono, tb[k].mono);
      if (cc != 0) return cc;
      if (ta[k].coeff != tb[k].coeff) return ta[k].coeff.str() < tb[k].coeff.str() ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  }
  return 0;
}

namespace {

struct LeadInfo {
  ModMono mono;
  FieldElem coeff;
};

LeadInfo require_lead(const ModuleElem& v, const ModuleOrder& order) {
  auto m = lead_mono(v, order);
  if (!m) throw Error("lead of zero module element");
  return LeadInfo{*m, coeff_at(v, *m)};
}

bool divides_mm(const ModMono& a, const ModMono& b) {
  return a.pos == b.pos && a.mono.divides(b.mono);
}

}  // namespace

ModuleDivision divide_module(const ModuleElem& f, const std::vector<ModuleElem>& divisors,
                             const ModuleOrder& order) {
  for (const auto& d : divisors)
    if (d.is_zero()) throw Error("zero divisor in division");
  const RingPtr& ring = f.ring;
  std::vector<LeadInfo> leads;
  leads.reserve(divisors.size());
  for (const auto& d : divisors) leads.push_back(require_lead(d, order));

  ModuleDivision out;
  out.quotients.assign(divisors.size(), Polynomial::zero(ring));
  out.remainder = ModuleElem::zero(ring, f.rank());
  ModuleElem work = f;
  while (true) {
    auto lm = lead_mono(work, order);
    if (!lm) break;
    FieldElem lc = coeff_at(work, *lm);
    bool reduced = false;
    for (std::size_t j = 0; j < divisors.size(); ++j) {
      if (!divides_mm(leads[j].mono, *lm)) continue;
      Monomial q = lm->mono.quotient(leads[j].mono.mono, ring->weights());
      FieldElem c = lc / leads[j].coeff;
      work = work - times_term(divisors[j], q, c);
      out.quotients[j] = out.quotients[j] + Polynomial::term(ring, q, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      ModuleElem t = ModuleElem::zero(ring, f.rank());
      t.comps[lm->pos] = Polynomial::term(ring, lm->mono, lc);
      out.remainder = out.remainder + t;
      work = work - t;
    }
  }
  return out;
}

PolyDivision divide(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  std::vector<ModuleElem> wrapped;
  wrapped.reserve(divisors.size());
  for (const auto& d : divisors) {
    require_same_ring(f.ring(), d.ring());
    wrapped.push_back(ModuleElem::wrap(d));
  }
  auto order = ModuleOrder::pot(f.ring());
  ModuleDivision md = divide_module(ModuleElem::wrap(f), wrapped, *order);
  return PolyDivision{std::move(md.quotients), md.remainder.comps[0]};
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
  if (basis.empty()) return f;
  return divide(f, basis).remainder;
}

namespace {

struct Pair {
  int i, j;             // indices into the basis, i < j
  Monomial lcm;
  long long degree;
};

ModuleElem spoly(const ModuleElem& f, const LeadInfo& lf, const ModuleElem& g,
                 const LeadInfo& lg, const Monomial& lcm) {
  const auto& w = f.ring->weights();
  Monomial mf = lcm.quotient(lf.mono.mono, w);
  Monomial mg = lcm.quotient(lg.mono.mono, w);
  return times_term(f, mf, lf.coeff.inverse()) - times_term(g, mg, lg.coeff.inverse());
}

ModuleElem nf_against(const ModuleElem& v, const std::vector<ModuleElem>& basis,
                      const ModuleOrder& order) {
  if (basis.empty()) return v;
  return divide_module(v, basis, order).remainder;
}

// Buchberger with normal pair selection and Gebauer-Moeller style pruning.
// The coprime (product) criterion is only valid for rank one and is gated
// accordingly.
std::vector<ModuleElem> buchberger_module(const std::vector<ModuleElem>& input, int rank,
                                          const ModuleOrder& order) {
  const RingPtr* ringp = nullptr;
  std::vector<ModuleElem> basis;
  std::vector<LeadInfo> leads;
  std::vector<Pair> pairs;

  auto add_element = [&](ModuleElem g) {
    LeadInfo lg = require_lead(g, order);
    int t = static_cast<int>(basis.size());
    const auto& w = g.ring->weights();
    // New pairs against existing elements with matching lead position.
    std::vector<Pair> fresh;
    for (int i = 0; i < t; ++i) {
      if (leads[i].mono.pos != lg.mono.pos) continue;
      if (rank == 1 && Monomial::coprime(leads[i].mono.mono, lg.mono.mono)) continue;
      Monomial l = Monomial::lcm(leads[i].mono.mono, lg.mono.mono, w);
      fresh.push_back(Pair{i, t, l, l.degree()});
    }
    // Drop old pairs strictly subsumed by the new element (chain rule).
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (const auto& p : pairs) {
      if (leads[p.i].mono.pos == lg.mono.pos && lg.mono.mono.divides(p.lcm)) {
        Monomial li = Monomial::lcm(leads[p.i].mono.mono, lg.mono.mono, w);
        Monomial lj = Monomial::lcm(leads[p.j].mono.mono, lg.mono.mono, w);
        if (li != p.lcm && lj != p.lcm) continue;
      }
      kept.push_back(p);
    }
    pairs = std::move(kept);
    // Drop new pairs whose lcm is strictly divisible by another new lcm.
    for (const auto& p : fresh) {
      bool subsumed = false;
      for (const auto& q : fresh) {
        if (q.i == p.i) continue;
        if (q.lcm.divides(p.lcm) && q.lcm != p.lcm) {
          subsumed = true;
          break;
        }
      }
      if (!subsumed) pairs.push_back(p);
    }
    basis.push_back(std::move(g));
    leads.push_back(std::move(lg));
  };

  for (const auto& g : input) {
    if (g.is_zero()) continue;
    ringp = &g.ring;
    ModuleElem h = nf_against(g, basis, order);
    if (!h.is_zero()) add_element(std::move(h));
  }
  (void)ringp;

  while (!pairs.empty()) {
    // Normal strategy: minimal lcm degree, ties by (i, j).
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const Pair& a = pairs[k];
      const Pair& b = pairs[best];
      if (a.degree < b.degree || (a.degree == b.degree && (a.i < b.i || (a.i == b.i && a.j < b.j))))
        best = k;
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    ModuleElem s = spoly(basis[p.i], leads[p.i], basis[p.j], leads[p.j], p.lcm);
    ModuleElem h = nf_against(s, basis, order);
    if (!h.is_zero()) add_element(std::move(h));
  }
  return basis;
}

// Keep elements with minimal leads, tail-reduce against one another, make
// monic, and sort by descending lead.
std::vector<ModuleElem> reduce_basis(std::vector<ModuleElem> basis, const ModuleOrder& order) {
  if (basis.empty()) return basis;
  std::sort(basis.begin(), basis.end(), [&](const ModuleElem& a, const ModuleElem& b) {
    return cmp_total(a, b, order) < 0;
  });
  std::vector<ModuleElem> minimal;
  std::vector<LeadInfo> leads;
  for (auto& g : basis) {
    LeadInfo lg = require_lead(g, order);
    bool redundant = false;
    for (const auto& l : leads)
      if (divides_mm(l.mono, lg.mono)) {
        redundant = true;
        break;
      }
    if (!redundant) {
      minimal.push_back(std::move(g));
      leads.push_back(std::move(lg));
    }
  }
  std::vector<ModuleElem> reduced = minimal;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ModuleElem> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    ModuleElem r = nf_against(minimal[i], others, order);
    if (r.is_zero()) throw InvariantError("minimal basis element reduced to zero");
    FieldElem lc = require_lead(r, order).coeff;
    reduced[i] = scaled(r, lc.inverse());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const ModuleElem& a, const ModuleElem& b) {
    return cmp_total(a, b, order) > 0;
  });
  return reduced;
}

}  // namespace

std::vector<ModuleElem> module_gb(const std::vector<ModuleElem>& cols, int rank,
                                  const ModuleOrderPtr& order) {
  auto gb = buchberger_module(cols, rank, *order);
  return reduce_basis(std::move(gb), *order);
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return {};
  const RingPtr& ring = gens.front().ring();
  std::vector<ModuleElem> wrapped;
  for (const auto& g : gens) {
    require_same_ring(g.ring(), ring);
    wrapped.push_back(ModuleElem::wrap(g));
  }
  auto order = ModuleOrder::pot(ring);
  auto gb = module_gb(wrapped, 1, order);
  std::vector<Polynomial> out;
  out.reserve(gb.size());
  for (auto& v : gb) out.push_back(std::move(v.comps[0]));
  return out;
}

namespace {

// Rebuilds f over `target`, which must have the same variable list.
Polynomial transport(const Polynomial& f, const RingPtr& target) {
  std::vector<Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms())
    terms.push_back(Term{Monomial(t.mono.exps(), target->weights()), t.coeff});
  return Polynomial(target, std::move(terms));
}

bool uses_only_suffix(const Polynomial& f, int drop_count) {
  for (const auto& t : f.terms())
    for (int i = 0; i < drop_count; ++i)
      if (t.mono.exp(i)) return false;
  return true;
}

}  // namespace

std::vector<Polynomial> eliminate_prefix(const std::vector<Polynomial>& gens, int drop_count) {
  if (gens.empty()) return {};
  const RingPtr& ring = gens.front().ring();
  if (drop_count == 0) return buchberger(gens);
  if (drop_count < 0 || drop_count >= ring->nvars())
    throw ValidationError("eliminate: prefix size out of range");
  RingPtr elim_ring = ring->with_order(MonomialOrder::block_elim(drop_count));
  std::vector<Polynomial> moved;
  moved.reserve(gens.size());
  for (const auto& g : gens) moved.push_back(transport(g, elim_ring));
  auto gb = buchberger(moved);
  std::vector<Polynomial> out;
  for (const auto& g : gb)
    if (uses_only_suffix(g, drop_count)) out.push_back(transport(g, ring));
  return out;
}

std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens,
                                  const std::vector<std::string>& keep) {
  if (gens.empty()) return {};
  const RingPtr& ring = gens.front().ring();
  int n = ring->nvars();
  int k = n - static_cast<int>(keep.size());
  if (k < 0) throw ValidationError("eliminate: more kept variables than the ring has");
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (ring->vars()[k + i] != keep[i])
      throw ValidationError("eliminate: kept variables must be a suffix of the ring");
  return eliminate_prefix(gens, k);
}

std::vector<Polynomial> intersect_ideals(const std::vector<Polynomial>& a,
                                         const std::vector<Polynomial>& b) {
  if (a.empty() || b.empty()) return {};
  const RingPtr& ring = a.front().ring();
  // I cap J = (u*I + (1-u)*J) cap k[x] with a fresh tag variable u first.
  std::vector<std::string> vars = {"_u"};
  for (const auto& v : ring->vars()) vars.push_back(v);
  std::vector<int> weights = {1};
  for (int w : ring->weights()) weights.push_back(w);
  RingPtr big = Ring::make(vars, ring->field(), weights, MonomialOrder::block_elim(1));
  auto up = [&](const Polynomial& f) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
      std::vector<std::uint16_t> e;
      e.push_back(0);
      e.insert(e.end(), t.mono.exps().begin(), t.mono.exps().end());
      terms.push_back(Term{Monomial(std::move(e), big->weights()), t.coeff});
    }
    return Polynomial(big, std::move(terms));
  };
  Polynomial u = Polynomial::variable(big, 0);
  Polynomial one_minus_u = Polynomial::from_int(big, 1) - u;
  std::vector<Polynomial> gens;
  for (const auto& f : a) gens.push_back(u * up(f));
  for (const auto& f : b) gens.push_back(one_minus_u * up(f));
  auto gb = buchberger(gens);
  std::vector<Polynomial> out;
  for (const auto& g : gb) {
    bool has_u = false;
    for (const auto& t : g.terms())
      if (t.mono.exp(0)) has_u = true;
    if (has_u) continue;
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      std::vector<std::uint16_t> e(t.mono.exps().begin() + 1, t.mono.exps().end());
      terms.push_back(Term{Monomial(std::move(e), ring->weights()), t.coeff});
    }
    out.push_back(Polynomial(ring, std::move(terms)));
  }
  return out;
}

Polynomial reduce_mod_coords(const CoordPtr& coords, const Polynomial& f) {
  if (coords->relations.empty()) return f;
  return normal_form(f, coords->relations);
}

ModuleElem reduce_mod_coords(const CoordPtr& coords, const ModuleElem& v) {
  if (coords->relations.empty()) return v;
  ModuleElem r{v.ring, {}};
  r.comps.reserve(v.rank());
  for (const auto& c : v.comps) r.comps.push_back(reduce_mod_coords(coords, c));
  return r;
}

SubmoduleEngine::SubmoduleEngine(CoordPtr coords, std::vector<ModuleElem> cols, int rank,
                                 ModuleOrderPtr ambient)
    : coords_(std::move(coords)), cols_(std::move(cols)), rank_(rank),
      ncols_(static_cast<int>(cols_.size())) {
  const RingPtr& ring = coords_->ring;
  if (!ambient) ambient = ModuleOrder::pot(ring);

  // Schreyer order on the coefficient block, induced by the column leads.
  // Zero columns get a placeholder lead; they contribute the trivial syzygy
  // e_j and are excluded from the basis.
  std::vector<ModMono> leads;
  leads.reserve(cols_.size());
  for (int j = 0; j < ncols_; ++j) {
    if (cols_[j].is_zero()) {
      zero_cols_.push_back(j);
      leads.push_back(ModMono{Monomial::one(ring->nvars(), ring->weights()), 0});
    } else {
      leads.push_back(*lead_mono(cols_[j], *ambient));
    }
  }
  induced_ = ModuleOrder::schreyer(ambient, leads, ring);
  aug_order_ = ModuleOrder::two_block(ambient, induced_, rank_);

  int big = rank_ + ncols_;
  std::vector<ModuleElem> aug;
  for (int j = 0; j < ncols_; ++j) {
    if (cols_[j].is_zero()) continue;
    ModuleElem h = ModuleElem::zero(ring, big);
    for (int i = 0; i < rank_; ++i) h.comps[i] = cols_[j].comps[i];
    h.comps[rank_ + j] = Polynomial::from_int(ring, 1);
    aug.push_back(std::move(h));
  }
  for (const auto& q : coords_->relations)
    for (int i = 0; i < rank_; ++i) {
      ModuleElem h = ModuleElem::zero(ring, big);
      h.comps[i] = q;
      aug.push_back(std::move(h));
    }
  gb_ = module_gb(aug, big, aug_order_);

  for (const auto& g : gb_) {
    bool ambient_zero = true;
    for (int i = 0; i < rank_; ++i)
      if (!g.comps[i].is_zero()) {
        ambient_zero = false;
        break;
      }
    if (!ambient_zero) continue;
    ModuleElem s{ring, {}};
    s.comps.assign(g.comps.begin() + rank_, g.comps.end());
    s = reduce_mod_coords(coords_, s);
    if (!s.is_zero()) syzygies_.push_back(std::move(s));
  }
  for (int j : zero_cols_) syzygies_.push_back(ModuleElem::basis(ring, ncols_, j));
  std::sort(syzygies_.begin(), syzygies_.end(), [&](const ModuleElem& a, const ModuleElem& b) {
    return cmp_total(a, b, *induced_) > 0;
  });
}

std::optional<std::vector<Polynomial>> SubmoduleEngine::lift(const ModuleElem& target) const {
  const RingPtr& ring = coords_->ring;
  if (target.rank() != rank_) throw Error("lift target has wrong rank");
  ModuleElem padded = ModuleElem::zero(ring, rank_ + ncols_);
  for (int i = 0; i < rank_; ++i) padded.comps[i] = target.comps[i];
  ModuleElem rem = divide_module(padded, gb_, *aug_order_).remainder;
  for (int i = 0; i < rank_; ++i)
    if (!rem.comps[i].is_zero()) return std::nullopt;
  std::vector<Polynomial> out;
  out.reserve(ncols_);
  for (int j = 0; j < ncols_; ++j) out.push_back(-rem.comps[rank_ + j]);
  return out;
}

bool SubmoduleEngine::contains(const ModuleElem& target) const {
  return lift(target).has_value();
}

std::vector<ModuleElem> syzygies(const std::vector<ModuleElem>& cols, int rank) {
  if (cols.empty()) return {};
  SubmoduleEngine eng(free_coords(cols.front().ring), cols, rank);
  return eng.syzygy_generators();
}

ModuleElem normal_form_over(const CoordPtr& coords, const ModuleElem& v,
                            const std::vector<ModuleElem>& cols, int rank) {
  const RingPtr& ring = coords->ring;
  std::vector<ModuleElem> all = cols;
  for (const auto& q : coords->relations)
    for (int i = 0; i < rank; ++i) {
      ModuleElem h = ModuleElem::zero(ring, rank);
      h.comps[i] = q;
      all.push_back(std::move(h));
    }
  std::vector<ModuleElem> nonzero;
  for (auto& c : all)
    if (!c.is_zero()) nonzero.push_back(std::move(c));
  auto order = ModuleOrder::pot(ring);
  auto gb = module_gb(nonzero, rank, order);
  if (gb.empty()) return v;
  return divide_module(v, gb, *order).remainder;
}

std::vector<ModuleElem> trim_generators(const CoordPtr& coords,
                                        const std::vector<ModuleElem>& gens, int rank,
                                        const std::vector<long long>* degrees) {
  const RingPtr& ring = coords->ring;
  auto order = ModuleOrder::pot(ring);
  struct Entry {
    ModuleElem elem;
    long long degree;
  };
  std::vector<Entry> sorted;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    ModuleElem r = reduce_mod_coords(coords, gens[k]);
    if (r.is_zero()) continue;
    long long d = degrees ? (*degrees)[k] : 0;
    sorted.push_back(Entry{std::move(r), d});
  }
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Entry& a, const Entry& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return cmp_total(a.elem, b.elem, *order) < 0;
  });
  std::vector<ModuleElem> kept;
  for (const auto& g : sorted) {
    if (kept.empty()) {
      kept.push_back(g.elem);
      continue;
    }
    ModuleElem r = normal_form_over(coords, g.elem, kept, rank);
    if (!r.is_zero()) kept.push_back(g.elem);
  }
  return kept;
}

}  // namespace torvan
