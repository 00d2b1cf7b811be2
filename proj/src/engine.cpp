#include "torvan/engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

namespace torvan {

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

Polynomial poly_det(const PolyMatrix& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) throw Error("determinant of empty matrix");
  const RingPtr& ring = m[0][0].ring();
  // Laplace expansion over column subsets, memoized.
  std::map<std::uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, int row, std::uint32_t cols_left) -> Polynomial {
    if (row == n) return Polynomial::from_int(ring, 1);
    auto it = memo.find(cols_left);
    if (it != memo.end()) return it->second;
    Polynomial acc = Polynomial::zero(ring);
    int sign = 1;
    for (int j = 0; j < n; ++j) {
      if (!(cols_left & (1u << j))) continue;
      if (!m[row][j].is_zero()) {
        Polynomial sub = self(self, row + 1, cols_left & ~(1u << j));
        Polynomial term = m[row][j] * sub;
        acc = (sign > 0) ? acc + term : acc - term;
      }
      sign = -sign;
    }
    memo.emplace(cols_left, acc);
    return acc;
  };
  return rec(rec, 0, (1u << n) - 1);
}

PolyMatrix poly_minor_matrix(const PolyMatrix& m, int drop_row, int drop_col) {
  int n = static_cast<int>(m.size());
  PolyMatrix out;
  for (int i = 0; i < n; ++i) {
    if (i == drop_row) continue;
    std::vector<Polynomial> row;
    for (int j = 0; j < n; ++j) {
      if (j == drop_col) continue;
      row.push_back(m[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

PolyMatrix poly_adjugate(const PolyMatrix& m) {
  int n = static_cast<int>(m.size());
  const RingPtr& ring = m[0][0].ring();
  PolyMatrix adj(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
  if (n == 1) {
    adj[0][0] = Polynomial::from_int(ring, 1);
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Polynomial cof = poly_det(poly_minor_matrix(m, i, j));
      adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return adj;
}

PolyMatrix poly_compound(const PolyMatrix& m, int k) {
  int n = static_cast<int>(m.size());
  const RingPtr& ring = m[0][0].ring();
  auto subsets = k_subsets(n, k);
  int cnt = static_cast<int>(subsets.size());
  PolyMatrix out(cnt, std::vector<Polynomial>(cnt, Polynomial::zero(ring)));
  for (int a = 0; a < cnt; ++a)
    for (int b = 0; b < cnt; ++b) {
      PolyMatrix minor(k, std::vector<Polynomial>(k, Polynomial::zero(ring)));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor[i][j] = m[subsets[a][i]][subsets[b][j]];
      out[a][b] = poly_det(minor);
    }
  return out;
}

std::vector<std::vector<std::string>> matrix_strings(const FieldMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i].push_back(m.at(i, j).str());
  return out;
}

// Rebuilds a polynomial over a ring whose variable list contains the source
// variables at offset `shift`.
Polynomial shift_vars(const Polynomial& f, const RingPtr& target, int shift) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    std::vector<std::uint16_t> e(target->nvars(), 0);
    for (int i = 0; i < t.mono.nvars(); ++i) e[i + shift] = t.mono.exp(i);
    terms.push_back(Term{Monomial(std::move(e), target->weights()), t.coeff});
  }
  return Polynomial(target, std::move(terms));
}

// Restricts a polynomial supported on a variable range back to a smaller
// ring (throws if other variables occur).
Polynomial restrict_vars(const Polynomial& f, const RingPtr& target, int offset) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    std::vector<std::uint16_t> e(target->nvars(), 0);
    for (int i = 0; i < t.mono.nvars(); ++i) {
      if (!t.mono.exp(i)) continue;
      int k = i - offset;
      if (k < 0 || k >= target->nvars())
        throw Error("polynomial is not supported on the expected variables");
      e[k] = t.mono.exp(i);
    }
    terms.push_back(Term{Monomial(std::move(e), target->weights()), t.coeff});
  }
  return Polynomial(target, std::move(terms));
}

// A pure power of a linear form (or of a monomial): the visible signature of
// a non-reduced coordinate ring.
bool looks_like_pure_power(const Polynomial& r) {
  if (r.is_zero() || r.is_constant()) return false;
  const RingPtr& ring = r.ring();
  if (r.terms().size() == 1) {
    int g = 0;
    for (int i = 0; i < ring->nvars(); ++i) {
      int e = r.terms()[0].mono.exp(i);
      g = e ? std::gcd(g, e) : g;
    }
    return g >= 2;
  }
  auto hd = r.homogeneous_degree();
  if (!hd || *hd < 2) return false;
  int d = static_cast<int>(*hd);
  std::uint32_t p = ring->field().characteristic();
  if (p == 0 || d % static_cast<int>(p) != 0) {
    // Reconstruct l from the x_j^d and x_j^{d-1} x_i coefficients.
    for (int j = 0; j < ring->nvars(); ++j) {
      FieldElem cj = FieldElem::zero(ring->field());
      bool found = false;
      for (const auto& t : r.terms())
        if (t.mono.exp(j) == d) {
          cj = t.coeff;
          found = true;
        }
      if (!found || cj.is_zero()) continue;
      FieldElem dc = FieldElem::from_int(ring->field(), d) * cj;
      Polynomial ell = Polynomial::variable(ring, j);
      for (int i = 0; i < ring->nvars(); ++i) {
        if (i == j) continue;
        for (const auto& t : r.terms())
          if (t.mono.exp(j) == d - 1 && t.mono.exp(i) == 1)
            ell = ell + Polynomial::variable(ring, i).scaled(t.coeff / dc);
      }
      if (r == ell.pow(d).scaled(cj)) return true;
    }
    return false;
  }
  if (d == static_cast<int>(p)) {
    // Frobenius power: every term must be c_i x_i^p.
    Polynomial ell = Polynomial::zero(ring);
    for (const auto& t : r.terms()) {
      int which = -1;
      for (int i = 0; i < ring->nvars(); ++i) {
        if (!t.mono.exp(i)) continue;
        if (which >= 0 || t.mono.exp(i) != d) return false;
        which = i;
      }
      if (which < 0) return false;
      ell = ell + Polynomial::variable(ring, which).scaled(t.coeff);
    }
    return r == ell.pow(d);
  }
  return false;
}

}  // namespace

GroupSpec GroupSpec::gl(int n) {
  GroupSpec g;
  g.kind = Kind::GL;
  g.n = n;
  return g;
}

GroupSpec GroupSpec::parametric(RingPtr param_ring, std::vector<std::vector<Polynomial>> matrix) {
  GroupSpec g;
  g.kind = Kind::Parametric;
  g.n = static_cast<int>(matrix.size());
  g.param_ring = std::move(param_ring);
  g.matrix = std::move(matrix);
  return g;
}

std::optional<int> Scenario::projective_n() const {
  if (coords->is_free()) return coords->ring->nvars() - 1;
  return std::nullopt;
}

Scenario validate_scenario(const Scenario& input) {
  Scenario s = input;
  const RingPtr& ring = s.ring();
  const Field& field = ring->field();

  if (s.sampler.max_attempts < 1) throw ValidationError("sampler max_attempts must be >= 1");
  if (s.i_max < 0) throw ValidationError("i_max must be >= 0");

  // Relations: homogeneous, visibly radical-looking, then normalized to a
  // reduced basis.
  for (const auto& r : s.x_relations) {
    require_same_ring(r.ring(), ring);
    if (!r.homogeneous())
      throw ValidationError("coordinate-ring relation is not homogeneous: " + r.str());
  }
  for (const auto& r : s.x_relations) {
    if (r.is_zero()) continue;
    if (!looks_like_pure_power(r)) continue;
    bool divided = false;
    for (const auto& other : s.x_relations) {
      if (&other == &r || other.is_zero() || other == r) continue;
      if (divide(r, {other}).remainder.is_zero()) {
        divided = true;
        break;
      }
    }
    if (!divided)
      throw ValidationError(
          "relation '" + r.str() +
          "' is a pure power of a linear form: the coordinate ring is not reduced, so no "
          "group action on it is transitive (dual numbers are the standard counterexample)");
  }
  {
    auto coords = std::make_shared<CoordRing>();
    coords->ring = ring;
    std::vector<Polynomial> nonzero;
    for (const auto& r : s.x_relations)
      if (!r.is_zero()) nonzero.push_back(r);
    coords->relations = buchberger(nonzero);
    for (const auto& g : coords->relations)
      if (g.is_constant())
        throw ValidationError("coordinate relations generate the unit ideal");
    s.coords = coords;
  }

  // Action and group compatibility.
  int acting_size = 0;
  switch (s.action.kind) {
    case ActionSpec::Kind::Linear:
      acting_size = ring->nvars();
      if (s.group.n != acting_size)
        throw ValidationError("linear action needs a group of size = variable count");
      break;
    case ActionSpec::Kind::Pluecker: {
      if (binomial(s.action.n, s.action.k) != ring->nvars())
        throw ValidationError("pluecker action needs C(n,k) = variable count");
      if (s.group.n != s.action.n)
        throw ValidationError("pluecker action: group size must be n");
      acting_size = s.action.n;
      break;
    }
  }
  if (s.group.kind == GroupSpec::Kind::Parametric) {
    if (!s.group.param_ring || s.group.param_ring->nvars() < 1)
      throw ValidationError("parametric group needs at least one parameter");
    if (s.group.param_ring->field() != field)
      throw ValidationError("parameter ring field must match the scenario field");
    if (static_cast<int>(s.group.matrix.size()) != s.group.n)
      throw ValidationError("parametric matrix must be square of the declared size");
    for (const auto& row : s.group.matrix) {
      if (static_cast<int>(row.size()) != s.group.n)
        throw ValidationError("parametric matrix must be square of the declared size");
      for (const auto& e : row) require_same_ring(e.ring(), s.group.param_ring);
    }
    Polynomial det = poly_det(s.group.matrix);
    if (det.is_zero())
      throw ValidationError("parametric group matrix is identically singular");
  }

  // Presentations live over the ambient ring, reduced and homogeneous.
  auto normalize_presentation = [&](Presentation p, const char* which) {
    require_same_ring(p.rel.target.coords->ring, ring);
    std::vector<ModuleElem> cols;
    for (const auto& c : p.rel.cols) cols.push_back(reduce_mod_coords(s.coords, c));
    FreeModule target = FreeModule::make(s.coords, p.rel.target.gen_degs);
    FreeModule source = FreeModule::make(s.coords, p.rel.source.gen_degs);
    Presentation out;
    out.rel = make_map(target, source, cols);
    out.label = p.label;
    if (!out.rel.is_homogeneous())
      throw ValidationError(std::string(which) +
                            " presentation is not homogeneous for the declared grading");
    return out;
  };
  s.E = normalize_presentation(s.E, "E");
  s.F = normalize_presentation(s.F, "F");

  if (s.crosscheck && !s.coords->is_free())
    throw ValidationError(
        "crosscheck requires a free coordinate ring (complete resolutions feed the "
        "double-complex route)");

  // The action must preserve the variety: spot-check one seeded sample.
  if (!s.coords->relations.empty()) {
    ScenarioSample probe = scenario_sample(s, 0x70b5u);
    RingMap phi = linear_ring_map(ring, substitution_matrix(probe.g, s.action));
    for (const auto& q : s.coords->relations) {
      Polynomial image = reduce_mod_coords(s.coords, phi.apply(q));
      if (!image.is_zero())
        throw ValidationError("group action does not preserve the variety's relations");
    }
  }
  return s;
}

GroupElement scenario_identity(const Scenario& s) {
  int n = (s.action.kind == ActionSpec::Kind::Pluecker) ? s.action.n : s.ring()->nvars();
  return GroupElement::identity(s.ring()->field(), n);
}

std::optional<GroupElement> evaluate_group_at(const Scenario& s,
                                              const std::vector<FieldElem>& point) {
  if (s.group.kind != GroupSpec::Kind::Parametric)
    throw Error("evaluate_group_at needs a parametric group");
  const Field& field = s.ring()->field();
  FieldMatrix m(field, s.group.n, s.group.n);
  for (int i = 0; i < s.group.n; ++i)
    for (int j = 0; j < s.group.n; ++j) m.at(i, j) = s.group.matrix[i][j].eval(point);
  auto inv = m.inverse();
  if (!inv) return std::nullopt;
  return GroupElement{m, *inv};
}

ScenarioSample scenario_sample(const Scenario& s, std::uint64_t trial_index) {
  const Field& field = s.ring()->field();
  if (s.group.kind == GroupSpec::Kind::GL) {
    GroupElement g = sample_group_element(s.sampler, field, s.group.n, trial_index);
    return ScenarioSample{g, {}};
  }
  SampleStream stream(s.sampler.seed, trial_index);
  int m = s.group.param_ring->nvars();
  for (int attempt = 0; attempt < s.sampler.max_attempts; ++attempt) {
    std::vector<FieldElem> point;
    point.reserve(m);
    for (int i = 0; i < m; ++i) point.push_back(stream.next_field_elem(field, s.sampler.bound));
    auto g = evaluate_group_at(s, point);
    if (g) return ScenarioSample{*g, point};
  }
  throw Error("parametric sampler exhausted attempts without an invertible matrix");
}

GammaFamily build_gamma_family(const Scenario& s) {
  const RingPtr& xring = s.ring();
  int nx = xring->nvars();
  const Field& field = xring->field();

  std::vector<std::string> param_names;
  if (s.group.kind == GroupSpec::Kind::GL) {
    for (int i = 0; i < s.group.n; ++i)
      for (int j = 0; j < s.group.n; ++j)
        param_names.push_back("g" + std::to_string(i) + "_" + std::to_string(j));
  } else {
    param_names = s.group.param_ring->vars();
  }
  for (const auto& nm : param_names)
    if (xring->var_index(nm))
      throw ValidationError("parameter name collides with a coordinate: " + nm);

  auto build_ring = [&](bool with_handle) {
    std::vector<std::string> vars = xring->vars();
    vars.insert(vars.end(), param_names.begin(), param_names.end());
    if (with_handle) vars.push_back("dinv");
    return Ring::make(vars, field, {}, MonomialOrder::block_elim(nx));
  };

  RingPtr prelim = build_ring(false);
  // The acting family matrix over the preliminary ring.
  PolyMatrix group_mat(s.group.n, std::vector<Polynomial>(s.group.n, Polynomial::zero(prelim)));
  for (int i = 0; i < s.group.n; ++i)
    for (int j = 0; j < s.group.n; ++j) {
      if (s.group.kind == GroupSpec::Kind::GL) {
        group_mat[i][j] = Polynomial::variable(prelim, nx + i * s.group.n + j);
      } else {
        group_mat[i][j] = shift_vars(s.group.matrix[i][j], prelim, nx);
      }
    }
  PolyMatrix acting = (s.action.kind == ActionSpec::Kind::Pluecker)
                          ? poly_compound(group_mat, s.action.k)
                          : group_mat;
  Polynomial det = poly_det(acting);
  if (det.is_zero()) throw ValidationError("family acting matrix is identically singular");

  bool handle = !det.is_constant();
  RingPtr family = handle ? build_ring(true) : prelim;
  auto move_to_family = [&](const Polynomial& f) {
    return handle ? shift_vars(f, family, 0) : f;
  };
  PolyMatrix adj = poly_adjugate(acting);
  // Substitution matrix: the inverse of the acting matrix, with dinv standing
  // in for det^{-1} when the determinant is not constant.
  PolyMatrix subst(acting.size(), std::vector<Polynomial>(acting.size(),
                                                          Polynomial::zero(family)));
  Polynomial det_f = move_to_family(det);
  for (std::size_t i = 0; i < acting.size(); ++i)
    for (std::size_t j = 0; j < acting.size(); ++j) {
      Polynomial a = move_to_family(adj[i][j]);
      if (handle)
        subst[i][j] = a * Polynomial::variable(family, family->nvars() - 1);
      else
        subst[i][j] = a.scaled(det.lead().coeff.inverse());
    }

  GammaFamily fam;
  fam.n_x = nx;
  fam.det_handle = handle;
  fam.det_poly = det_f;
  {
    auto coords = std::make_shared<CoordRing>();
    coords->ring = family;
    std::vector<Polynomial> rels;
    for (const auto& q : s.coords->relations) rels.push_back(shift_vars(q, family, 0));
    coords->relations = rels;  // already a reduced basis in the x block
    fam.family_coords = coords;
  }
  std::vector<Polynomial> p1_images, p2_images;
  for (int i = 0; i < nx; ++i) p1_images.push_back(Polynomial::variable(family, i));
  for (int i = 0; i < nx; ++i) {
    Polynomial img = Polynomial::zero(family);
    for (int j = 0; j < nx; ++j)
      img = img + subst[i][j] * Polynomial::variable(family, j);
    p2_images.push_back(img);
  }
  fam.p1 = RingMap(xring, family, std::move(p1_images));
  fam.p2 = RingMap(xring, family, std::move(p2_images));
  return fam;
}

RingMap gamma_specialization(const GammaFamily& fam, const Scenario& s, const GroupElement& g,
                             const std::optional<std::vector<FieldElem>>& param_point) {
  const RingPtr& xring = s.ring();
  const RingPtr& family = fam.family_coords->ring;
  std::vector<Polynomial> images;
  for (int i = 0; i < fam.n_x; ++i) images.push_back(Polynomial::variable(xring, i));
  if (s.group.kind == GroupSpec::Kind::GL) {
    for (int i = 0; i < s.group.n; ++i)
      for (int j = 0; j < s.group.n; ++j)
        images.push_back(Polynomial::constant(xring, g.mat.at(i, j)));
  } else {
    std::optional<std::vector<FieldElem>> point = param_point;
    if (!point) {
      // Try the all-zeros parameter point (the identity of translation
      // families passes through it).
      std::vector<FieldElem> zeros(s.group.param_ring->nvars(),
                                   FieldElem::zero(xring->field()));
      auto at_zero = evaluate_group_at(s, zeros);
      if (at_zero && at_zero->mat == g.mat) point = zeros;
    }
    if (!point)
      throw ValidationError(
          "double-complex specialization of a parametric family needs the parameter point");
    for (const auto& v : *point) images.push_back(Polynomial::constant(xring, v));
  }
  if (fam.det_handle) {
    FieldMatrix acting = (s.action.kind == ActionSpec::Kind::Pluecker)
                             ? compound_matrix(g.mat, s.action.k)
                             : g.mat;
    images.push_back(Polynomial::constant(xring, acting.det().inverse()));
  }
  return RingMap(family, xring, std::move(images));
}

VanishingReport check_vanishing(const Scenario& s, const GroupElement& g,
                                const std::optional<std::vector<FieldElem>>& param_point) {
  auto t0 = std::chrono::steady_clock::now();
  VanishingReport rep;
  rep.scenario = s.name;
  rep.g = matrix_strings(g.mat);

  Presentation gf = translate_module(s.F, g, s.action);
  std::vector<HomologyModule> tors = tor(s.E, gf, s.i_max);
  rep.verdict = true;
  for (int i = 0; i <= s.i_max; ++i) {
    TorSummary sum = summarize(tors[i]);
    TorLine line;
    line.index = i;
    line.k_poly = sum.k_poly;
    line.zero = sum.zero;
    if (i >= 1 && !line.zero) rep.verdict = false;
    rep.tors.push_back(std::move(line));
  }

  if (s.crosscheck && s.i_max >= 1) {
    GammaFamily fam = build_gamma_family(s);
    RingMap spec = gamma_specialization(fam, s, g, param_point);
    int full = s.ring()->nvars() + 1;
    FreeResolution res_e = resolve(s.E, full);
    FreeResolution res_f = resolve(s.F, full);
    std::vector<HomologyModule> via_family =
        double_complex_tor(res_e, res_f, fam.p1, fam.p2, spec, s.coords, 1);
    TorSummary direct = summarize(tors[1]);
    TorSummary family = summarize(via_family[1]);
    bool same = direct.zero == family.zero;
    if (same && direct.k_poly && family.k_poly) same = *direct.k_poly == *family.k_poly;
    if (!same)
      throw InvariantError("direct and double-complex Tor_1 disagree on scenario " + s.name);
    rep.crosschecked = true;
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

DensityReport monte_carlo_density(const Scenario& s, int trials,
                                  const SamplerOverride& override_sampler) {
  if (trials < 1) throw ValidationError("density estimation needs trials >= 1");
  auto t0 = std::chrono::steady_clock::now();
  DensityReport rep;
  rep.scenario = s.name;
  rep.seed = s.sampler.seed;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    ScenarioSample sample = override_sampler ? override_sampler(static_cast<std::uint64_t>(t))
                                             : scenario_sample(s, static_cast<std::uint64_t>(t));
    std::optional<std::vector<FieldElem>> point;
    if (!sample.params.empty()) point = sample.params;
    VanishingReport r = check_vanishing(s, sample.g, point);
    if (r.verdict) {
      ++rep.passed;
    } else {
      rep.failing_trials.push_back(static_cast<std::uint64_t>(t));
      rep.failing_g.push_back(r.g);
    }
  }
  rep.density = static_cast<double>(rep.passed) / trials;
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

namespace {

// Head data of a module Groebner basis element over the x-dominant block
// order: the maximal x-part at the lead position, and its coefficient in A.
struct HeadData {
  Monomial x_part;   // over the x subring
  int pos = 0;
  Polynomial coeff;  // over the parameter ring
};

RingPtr x_subring(const RingPtr& family, int n_x) {
  std::vector<std::string> vars(family->vars().begin(), family->vars().begin() + n_x);
  std::vector<int> weights(family->weights().begin(), family->weights().begin() + n_x);
  return Ring::make(vars, family->field(), weights, MonomialOrder::grevlex());
}

RingPtr param_subring(const RingPtr& family, int n_x) {
  std::vector<std::string> vars(family->vars().begin() + n_x, family->vars().end());
  return Ring::make(vars, family->field());
}

HeadData head_of(const ModuleElem& g, int n_x, const RingPtr& xring, const RingPtr& aring,
                 const ModuleOrder& order) {
  auto lm = lead_mono(g, order);
  if (!lm) throw Error("head of zero element");
  HeadData h;
  h.pos = lm->pos;
  std::vector<std::uint16_t> xe(lm->mono.exps().begin(), lm->mono.exps().begin() + n_x);
  h.x_part = Monomial(xe, xring->weights());
  std::vector<Term> coeff_terms;
  for (const auto& t : g.comps[lm->pos].terms()) {
    bool same_x = true;
    for (int i = 0; i < n_x && same_x; ++i)
      if (t.mono.exp(i) != xe[i]) same_x = false;
    if (!same_x) continue;
    std::vector<std::uint16_t> pe(t.mono.exps().begin() + n_x, t.mono.exps().end());
    coeff_terms.push_back(Term{Monomial(std::move(pe), aring->weights()), t.coeff});
  }
  h.coeff = Polynomial(aring, std::move(coeff_terms));
  return h;
}

// Counts the monomials outside a zero-dimensional monomial ideal; nullopt
// when the quotient is infinite-dimensional.
std::optional<long long> count_standard_monomials(const std::vector<Monomial>& gens,
                                                  const RingPtr& xring) {
  int n = xring->nvars();
  std::vector<int> bound(n, -1);
  for (const auto& m : gens) {
    int which = -1;
    bool pure = true;
    for (int i = 0; i < n; ++i) {
      if (!m.exp(i)) continue;
      if (which >= 0) pure = false;
      which = i;
    }
    if (m.is_one()) return 0;
    if (pure && which >= 0) {
      int e = m.exp(which);
      if (bound[which] < 0 || e < bound[which]) bound[which] = e;
    }
  }
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    if (bound[i] < 0) return std::nullopt;
    total *= bound[i];
    if (total > 2'000'000) throw Error("standard monomial count too large");
  }
  // Enumerate the box and drop multiples of the generators.
  long long count = 0;
  std::vector<int> e(n, 0);
  while (true) {
    bool inside = false;
    for (const auto& m : gens) {
      bool div = true;
      for (int i = 0; i < n && div; ++i)
        if (m.exp(i) > e[i]) div = false;
      if (div) {
        inside = true;
        break;
      }
    }
    if (!inside) ++count;
    int k = 0;
    while (k < n) {
      if (++e[k] < bound[k]) break;
      e[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return count;
}

struct FreenessData {
  RingPtr param_ring;
  Polynomial f;
  std::vector<Polynomial> heads;  // distinct, non-constant
  FreenessCertificate cert;
};

FreenessData generic_freeness_analysis(const FamilyModule& fam) {
  const RingPtr& family = fam.ring;
  RingPtr xring = x_subring(family, fam.n_x);
  RingPtr aring = param_subring(family, fam.n_x);
  FreenessData out;
  out.param_ring = aring;
  out.cert.param_vars = aring->vars();

  std::vector<ModuleElem> nonzero;
  for (const auto& c : fam.relations)
    if (!c.is_zero()) nonzero.push_back(c);
  auto order = ModuleOrder::pot(family);
  auto gb = module_gb(nonzero, fam.rank, order);

  std::vector<Polynomial> distinct;
  std::vector<std::vector<Monomial>> lead_ideals(fam.rank);
  for (const auto& g : gb) {
    HeadData h = head_of(g, fam.n_x, xring, aring, *order);
    lead_ideals[h.pos].push_back(h.x_part);
    Polynomial hc = h.coeff;
    {
      std::ostringstream line;
      line << Polynomial::term(xring, h.x_part, FieldElem::one(xring->field())).str() << " @"
           << h.pos << " : " << hc.str();
      out.cert.head_audit.push_back(line.str());
    }
    bool seen = false;
    for (const auto& d : distinct)
      if (d == hc) seen = true;
    if (!seen) distinct.push_back(hc);
  }
  Polynomial f = Polynomial::from_int(aring, 1);
  for (const auto& d : distinct) f = f * d;
  out.f = f;
  for (const auto& d : distinct)
    if (!d.is_constant()) out.heads.push_back(d);
  out.cert.f = f.str();

  ZPoly sig;
  std::optional<long long> rank_total = 0;
  for (int i = 0; i < fam.rank; ++i) {
    sig = sig + ZPoly::t_power(static_cast<int>(fam.gen_degs[i])) *
                    monomial_quotient_numerator(lead_ideals[i], xring->weights());
    auto c = count_standard_monomials(lead_ideals[i], xring);
    if (rank_total && c)
      *rank_total += *c;
    else
      rank_total = std::nullopt;
  }
  out.cert.generic_signature = sig;
  out.cert.generic_rank = rank_total;
  return out;
}

}  // namespace

FreenessCertificate generic_freeness_certificate(const FamilyModule& fam) {
  return generic_freeness_analysis(fam).cert;
}

ZPoly fiber_signature(const FamilyModule& fam, const std::vector<FieldElem>& params) {
  const RingPtr& family = fam.ring;
  RingPtr xring = x_subring(family, fam.n_x);
  if (static_cast<int>(params.size()) != family->nvars() - fam.n_x)
    throw Error("fiber_signature: wrong number of parameter values");
  std::vector<Polynomial> images;
  for (int i = 0; i < fam.n_x; ++i) images.push_back(Polynomial::variable(xring, i));
  for (const auto& v : params) images.push_back(Polynomial::constant(xring, v));
  RingMap spec(family, xring, std::move(images));

  std::vector<ModuleElem> cols;
  for (const auto& c : fam.relations) {
    ModuleElem v{xring, {}};
    for (const auto& p : c.comps) v.comps.push_back(spec.apply(p));
    if (!v.is_zero()) cols.push_back(std::move(v));
  }
  auto order = ModuleOrder::pot(xring);
  auto gb = module_gb(cols, fam.rank, order);
  std::vector<std::vector<Monomial>> lead_ideals(fam.rank);
  for (const auto& g : gb) {
    auto lm = lead_mono(g, *order);
    lead_ideals[lm->pos].push_back(lm->mono);
  }
  ZPoly sig;
  for (int i = 0; i < fam.rank; ++i)
    sig = sig + ZPoly::t_power(static_cast<int>(fam.gen_degs[i])) *
                    monomial_quotient_numerator(lead_ideals[i], xring->weights());
  return sig;
}

namespace {

// Ideal quotient (span(cols) : e_k) over the coordinate ring, by reading the
// e_k-coefficients of the syzygies of [e_k | cols].
std::vector<Polynomial> span_colon_generator(const CoordPtr& coords,
                                             const std::vector<ModuleElem>& cols, int rank,
                                             int k) {
  std::vector<ModuleElem> combined;
  combined.push_back(ModuleElem::basis(coords->ring, rank, k));
  for (const auto& c : cols) combined.push_back(c);
  SubmoduleEngine eng(coords, combined, rank);
  std::vector<Polynomial> out;
  for (const auto& s : eng.syzygy_generators()) {
    Polynomial a = reduce_mod_coords(coords, s.comps[0]);
    if (!a.is_zero()) out.push_back(a);
  }
  return out;
}

std::vector<Polynomial> annihilator_of(const Presentation& p) {
  const CoordPtr& coords = p.coords();
  std::vector<Polynomial> running;
  for (int k = 0; k < p.ngens(); ++k) {
    std::vector<Polynomial> qk = span_colon_generator(coords, p.rel.cols, p.ngens(), k);
    if (k == 0)
      running = qk;
    else
      running = intersect_ideals(running, qk);
    if (running.empty()) return {};  // annihilator is zero
  }
  return running;
}

// Solves h = 0 for seeded parameter points. Tries the exact linear solve in
// the last occurring variable first, then brute scanning for small prime
// fields and small-integer probing otherwise.
std::vector<std::vector<FieldElem>> points_on_hypersurface(const Polynomial& h,
                                                           std::uint64_t seed, int want) {
  const RingPtr& aring = h.ring();
  const Field& field = aring->field();
  int m = aring->nvars();
  int target = -1;
  for (const auto& t : h.terms())
    for (int i = 0; i < m; ++i)
      if (t.mono.exp(i)) target = std::max(target, i);
  std::vector<std::vector<FieldElem>> points;
  if (target < 0) return points;  // constant: no hypersurface
  SampleStream stream(seed, 0xbad10cu);
  for (int attempt = 0; attempt < 60 && static_cast<int>(points.size()) < want; ++attempt) {
    std::vector<FieldElem> point(m, FieldElem::zero(field));
    for (int i = 0; i < m; ++i)
      if (i != target) point[i] = stream.next_field_elem(field, 10);
    // Collapse to a univariate in the target variable.
    std::map<int, FieldElem> univ;
    for (const auto& t : h.terms()) {
      FieldElem c = t.coeff;
      for (int i = 0; i < m; ++i)
        if (i != target && t.mono.exp(i)) c = c * point[i].pow(t.mono.exp(i));
      int e = t.mono.exp(target);
      auto it = univ.find(e);
      if (it == univ.end())
        univ[e] = c;
      else
        it->second = it->second + c;
    }
    for (auto it = univ.begin(); it != univ.end();)
      it = it->second.is_zero() ? univ.erase(it) : std::next(it);
    auto push_point = [&](const FieldElem& root) {
      point[target] = root;
      for (const auto& p : points)
        if (p == point) return;
      points.push_back(point);
    };
    if (univ.empty()) {
      push_point(stream.next_field_elem(field, 10));
      continue;
    }
    int deg = univ.rbegin()->first;
    if (deg == 0) continue;  // no root on this slice
    if (deg == 1) {
      FieldElem c1 = univ[1];
      FieldElem c0 = univ.count(0) ? univ[0] : FieldElem::zero(field);
      push_point(-(c0 / c1));
      continue;
    }
    auto eval_univ = [&](const FieldElem& v) {
      FieldElem acc = FieldElem::zero(field);
      for (const auto& [e, c] : univ) acc = acc + c * v.pow(e);
      return acc;
    };
    if (field.is_prime_field() && field.characteristic() <= 65536) {
      for (std::uint32_t v = 0; v < field.characteristic(); ++v) {
        FieldElem fv = FieldElem::residue(field, v);
        if (eval_univ(fv).is_zero()) {
          push_point(fv);
          if (static_cast<int>(points.size()) >= want) break;
        }
      }
    } else {
      for (long long v = -30; v <= 30; ++v) {
        FieldElem fv = FieldElem::from_int(field, v);
        if (eval_univ(fv).is_zero()) {
          push_point(fv);
          if (static_cast<int>(points.size()) >= want) break;
        }
      }
    }
  }
  return points;
}

}  // namespace

BadLocusReport bad_locus(const Scenario& s) {
  auto t0 = std::chrono::steady_clock::now();
  if (s.group.kind != GroupSpec::Kind::Parametric)
    throw ValidationError("bad_locus needs a parametric group");
  int m = s.group.param_ring->nvars();
  int nx = s.ring()->nvars();
  if (m > 3 || nx > 8 || s.i_max > 4) {
    std::ostringstream msg;
    msg << "bad_locus tractability gate: parameters <= 3 (got " << m
        << "), ambient variables <= 8 (got " << nx << "), i_max <= 4 (got " << s.i_max << ")";
    throw ValidationError(msg.str());
  }

  BadLocusReport rep;
  rep.param_vars = s.group.param_ring->vars();

  // Family ring: x block first, then the parameters.
  std::vector<std::string> vars = s.ring()->vars();
  for (const auto& v : rep.param_vars) {
    if (s.ring()->var_index(v))
      throw ValidationError("parameter name collides with a coordinate: " + v);
    vars.push_back(v);
  }
  RingPtr family = Ring::make(vars, s.ring()->field(), {}, MonomialOrder::block_elim(nx));
  auto fam_coords = std::make_shared<CoordRing>();
  fam_coords->ring = family;
  for (const auto& q : s.coords->relations)
    fam_coords->relations.push_back(shift_vars(q, family, 0));
  CoordPtr fcoords = fam_coords;
  RingPtr aring = param_subring(family, nx);

  // Substitution matrix over the family ring: exact inverse when the
  // determinant is a constant, the adjugate action otherwise.
  PolyMatrix group_mat(s.group.n, std::vector<Polynomial>(s.group.n, Polynomial::zero(family)));
  for (int i = 0; i < s.group.n; ++i)
    for (int j = 0; j < s.group.n; ++j)
      group_mat[i][j] = shift_vars(s.group.matrix[i][j], family, nx);
  PolyMatrix acting = (s.action.kind == ActionSpec::Kind::Pluecker)
                          ? poly_compound(group_mat, s.action.k)
                          : group_mat;
  Polynomial det = poly_det(acting);
  PolyMatrix subst = poly_adjugate(acting);
  if (det.is_constant()) {
    FieldElem c = det.lead().coeff.inverse();
    for (auto& row : subst)
      for (auto& e : row) e = e.scaled(c);
  } else {
    rep.det_note = "adjugate action used (non-constant determinant " + det.str() +
                   "); results are valid off its vanishing locus";
  }
  std::vector<Polynomial> p1_images, p2_images;
  for (int i = 0; i < nx; ++i) p1_images.push_back(Polynomial::variable(family, i));
  for (int i = 0; i < nx; ++i) {
    Polynomial img = Polynomial::zero(family);
    for (int j = 0; j < nx; ++j) img = img + subst[i][j] * Polynomial::variable(family, j);
    p2_images.push_back(img);
  }
  RingMap p1(s.ring(), family, std::move(p1_images));
  RingMap p2(s.ring(), family, std::move(p2_images));

  // Family total complex through homological degree 2 (enough for H_1).
  FreeResolution res_e = resolve(s.E, 2);
  FreeResolution res_f = resolve(s.F, 2);
  FreeResolution fam_e = map_resolution(res_e, p1, fcoords);
  FreeResolution fam_f = map_resolution(res_f, p2, fcoords);
  ChainComplex total = total_complex(boxed_grid(fam_e, fam_f));
  HomologyModule fam_h1 = homology_at(total, 1);

  std::vector<std::vector<Polynomial>> pieces;  // ideals over aring, union of zero loci
  if (!module_is_zero(fam_h1.pres)) {
    std::vector<Polynomial> ann = annihilator_of(fam_h1.pres);
    for (const auto& q : fcoords->relations) ann.push_back(q);
    std::vector<Polynomial> elim = eliminate_prefix(ann, nx);
    if (elim.empty()) {
      rep.whole_space = true;
    } else {
      std::vector<Polynomial> in_a;
      for (const auto& g : elim) in_a.push_back(restrict_vars(g, aring, nx));
      pieces.push_back(in_a);
    }
  }

  // Generic-freeness candidates from the H_0 family and the structure ring.
  std::vector<Polynomial> candidates;
  auto add_candidates = [&](const FamilyModule& fm) {
    FreenessData data = generic_freeness_analysis(fm);
    for (const auto& h : data.heads) {
      Polynomial moved = shift_vars(h, family, nx);
      bool seen = false;
      for (const auto& c : candidates)
        if (c == moved) seen = true;
      if (!seen) candidates.push_back(moved);
    }
  };
  {
    FamilyModule fm;
    fm.ring = family;
    fm.n_x = nx;
    fm.rank = total.terms[0].rank();
    fm.gen_degs = total.terms[0].gen_degs;
    fm.relations = total.diffs[0].cols;
    for (const auto& q : fcoords->relations)
      for (int i = 0; i < fm.rank; ++i) {
        ModuleElem col = ModuleElem::zero(family, fm.rank);
        col.comps[i] = q;
        fm.relations.push_back(std::move(col));
      }
    add_candidates(fm);
  }
  if (!fcoords->relations.empty()) {
    FamilyModule fm;
    fm.ring = family;
    fm.n_x = nx;
    fm.rank = 1;
    fm.gen_degs = {0};
    for (const auto& q : fcoords->relations) fm.relations.push_back(ModuleElem::wrap(q));
    add_candidates(fm);
  }

  // Audit each candidate component with seeded points on it.
  Scenario probe = s;
  probe.crosscheck = false;
  for (std::size_t ci = 0; ci < candidates.size() && !rep.whole_space; ++ci) {
    Polynomial h_a = restrict_vars(candidates[ci], aring, nx);
    auto points = points_on_hypersurface(h_a, s.sampler.seed ^ (0xC0FFEEull + ci), 3);
    bool any_valid = false;
    bool any_bad = false;
    for (const auto& pt : points) {
      auto g = evaluate_group_at(s, pt);
      if (!g) continue;  // outside the group chart
      any_valid = true;
      VanishingReport r = check_vanishing(probe, *g, pt);
      if (!r.verdict) {
        any_bad = true;
        break;
      }
    }
    if (any_bad || !any_valid) {
      rep.kept_candidates.push_back(h_a.str() + (any_valid ? "" : " (unverified)"));
      pieces.push_back({h_a});
    } else {
      rep.dropped_candidates.push_back(h_a.str());
    }
  }

  if (rep.whole_space) {
    rep.ideal_generators = {"0"};
  } else if (pieces.empty()) {
    rep.ideal_generators = {"1"};
  } else {
    std::vector<Polynomial> ideal = pieces[0];
    for (std::size_t i = 1; i < pieces.size(); ++i) ideal = intersect_ideals(ideal, pieces[i]);
    ideal = buchberger(ideal);
    if (ideal.empty()) {
      rep.whole_space = true;
      rep.ideal_generators = {"0"};
    } else {
      for (const auto& g : ideal) rep.ideal_generators.push_back(g.str());
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

KClass scenario_euler_sum(const Scenario& s, const GroupElement& g) {
  return euler_tor_sum(s.E, s.F, g, s.action, s.i_max, s.projective_n());
}

ProductReport generic_product(const Scenario& s) {
  ProductReport rep{kclass_cone(ZPoly()), 0, {}};
  for (int t = 0; t < s.sampler.max_attempts; ++t) {
    ScenarioSample sample = scenario_sample(s, static_cast<std::uint64_t>(t));
    std::optional<std::vector<FieldElem>> point;
    if (!sample.params.empty()) point = sample.params;
    VanishingReport r = check_vanishing(s, sample.g, point);
    if (!r.verdict) {
      rep.resampled_trials.push_back(static_cast<std::uint64_t>(t));
      continue;
    }
    Presentation gf = translate_module(s.F, sample.g, s.action);
    std::vector<HomologyModule> t0 = tor(s.E, gf, 0);
    rep.product = kclass_of_module(t0[0].pres, s.projective_n());
    rep.used_trial = static_cast<std::uint64_t>(t);
    return rep;
  }
  std::ostringstream msg;
  msg << "generic_product: sampler cap exhausted; failing trials:";
  for (auto t : rep.resampled_trials) msg << " " << t;
  throw Error(msg.str());
}

}  // namespace torvan
