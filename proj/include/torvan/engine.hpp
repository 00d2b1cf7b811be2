#ifndef TORVAN_ENGINE_HPP
#define TORVAN_ENGINE_HPP

#include <functional>

#include "torvan/ktheory.hpp"

namespace torvan {

struct GroupSpec {
  enum class Kind { GL, Parametric };
  Kind kind = Kind::GL;
  int n = 0;  // matrix size
  // Parametric subgroups: a matrix of polynomials in the parameters.
  RingPtr param_ring;
  std::vector<std::vector<Polynomial>> matrix;

  static GroupSpec gl(int n);
  static GroupSpec parametric(RingPtr param_ring, std::vector<std::vector<Polynomial>> matrix);
};

// A full experiment description. Build one, run it through
// validate_scenario, then feed it to the experiment operations.
struct Scenario {
  std::string name;
  CoordPtr coords;                      // ambient ring + X-relations GB
  std::vector<Polynomial> x_relations;  // defining relations as given
  GroupSpec group;
  ActionSpec action;
  Presentation E, F;
  SamplerPolicy sampler;
  int i_max = 0;
  bool crosscheck = false;

  const RingPtr& ring() const { return coords->ring; }
  // Projective reduction dimension for K-classes: set for free coordinate
  // rings (P^{n-1} cones), unset for proper cones (full polynomials).
  std::optional<int> projective_n() const;
};

// Normalizes and checks a scenario: recomputes the relations basis, rejects
// visibly non-reduced coordinate rings (pure powers of linear forms among
// the relations), enforces homogeneity, action compatibility, and sampler
// sanity. Returns the validated copy; throws ValidationError otherwise.
Scenario validate_scenario(const Scenario& s);

GroupElement scenario_identity(const Scenario& s);

// A sampled group element together with the parameter point it came from
// (empty for GL groups, where the entries are the parameters).
struct ScenarioSample {
  GroupElement g;
  std::vector<FieldElem> params;
};

// Trial-indexed deterministic sampling; parametric groups draw parameter
// values and evaluate the matrix, retrying while singular.
ScenarioSample scenario_sample(const Scenario& s, std::uint64_t trial_index);

// Evaluates a parametric group matrix at a parameter point; nullopt when
// singular there.
std::optional<GroupElement> evaluate_group_at(const Scenario& s,
                                              const std::vector<FieldElem>& point);

struct TorLine {
  int index = 0;
  std::optional<ZPoly> k_poly;
  bool zero = true;
};

struct VanishingReport {
  std::string scenario;
  std::vector<std::vector<std::string>> g;  // row-major matrix entries
  std::vector<TorLine> tors;                // indices 0..i_max
  bool verdict = false;                     // all Tor_i vanish for i >= 1
  bool crosschecked = false;
  double elapsed_ms = 0;                    // excluded from canonical serialization
};

// The per-sample Main-Theorem check. For parametric scenarios with the
// crosscheck flag the double-complex route needs the parameter point of g;
// samples carry it, and the identity falls back to the all-zeros point when
// the family passes through it.
VanishingReport check_vanishing(const Scenario& s, const GroupElement& g,
                                const std::optional<std::vector<FieldElem>>& param_point =
                                    std::nullopt);

using SamplerOverride = std::function<ScenarioSample(std::uint64_t trial)>;

struct DensityReport {
  std::string scenario;
  std::uint64_t seed = 0;
  int trials = 0;
  int passed = 0;
  double density = 0.0;
  std::vector<std::uint64_t> failing_trials;
  std::vector<std::vector<std::vector<std::string>>> failing_g;
  double elapsed_ms = 0;
};

// Runs check_vanishing over seeded independent trials; the override hook
// replaces the sampler (tests pin adversarial group elements through it).
DensityReport monte_carlo_density(const Scenario& s, int trials,
                                  const SamplerOverride& override_sampler = nullptr);

// The family of sheaves on Gamma = X x G over the enlarged coordinate ring:
// X variables followed by group parameters (plus an inverse-determinant
// handle when the parametric determinant is not a constant).
struct GammaFamily {
  CoordPtr family_coords;  // X-relations transported to the family ring
  int n_x = 0;
  RingMap p1;  // X-ring -> family ring, x -> x
  RingMap p2;  // X-ring -> family ring, x -> (family inverse action) x
  bool det_handle = false;
  Polynomial det_poly;  // determinant of the acting family matrix
};

GammaFamily build_gamma_family(const Scenario& s);
// Specialization at a concrete group element: parameters to its entries (GL)
// or to the supplied parameter point, the determinant handle to det^{-1}.
RingMap gamma_specialization(const GammaFamily& fam, const Scenario& s, const GroupElement& g,
                             const std::optional<std::vector<FieldElem>>& param_point =
                                 std::nullopt);

// A finitely presented module over A[x] with A the parameter polynomial
// ring; the ring's leading block is the x block.
struct FamilyModule {
  RingPtr ring;  // block order, x variables first
  int n_x = 0;
  int rank = 1;
  std::vector<long long> gen_degs;  // x-degrees of the generators
  std::vector<ModuleElem> relations;
};

struct FreenessCertificate {
  std::vector<std::string> param_vars;
  std::string f;                    // product of the distinct head coefficients
  std::vector<std::string> head_audit;  // "x-monomial : head coefficient" lines
  ZPoly generic_signature;          // lead-term numerator of the generic fiber
  std::optional<long long> generic_rank;  // finite fiber dimension when defined
};

// Constructive generic freeness: a Groebner basis of the family relations
// under the x-dominant block order; off V(f) the lead-term module is
// constant, so the fibers share the generic signature.
FreenessCertificate generic_freeness_certificate(const FamilyModule& fam);

// Lead-term signature of the fiber at a parameter point (same twists as the
// family generators).
ZPoly fiber_signature(const FamilyModule& fam, const std::vector<FieldElem>& params);

struct BadLocusReport {
  std::vector<std::string> param_vars;
  // Generators of the ideal in A cutting out the bad parameters; {"1"} for
  // an empty bad locus, {"0"} when every parameter is bad. Set-theoretic
  // semantics; radicality is not guaranteed.
  std::vector<std::string> ideal_generators;
  bool whole_space = false;
  std::vector<std::string> kept_candidates, dropped_candidates;
  std::string det_note;  // set when the adjugate action stands in for the inverse
  double elapsed_ms = 0;
};

// Exact bad locus for tiny parametric families (gates: <= 3 parameters,
// <= 8 ambient variables, i_max <= 4). Candidates come from the family
// homology support and from generic-freeness head coefficients; each
// candidate component is audited by seeded specializations.
BadLocusReport bad_locus(const Scenario& s);

struct ProductReport {
  KClass product;
  std::uint64_t used_trial = 0;
  std::vector<std::uint64_t> resampled_trials;
};

// Sample a group element, insist on the vanishing verdict (resampling up to
// the policy cap), and return the class of Tor_0 alone.
ProductReport generic_product(const Scenario& s);

// Euler alternating sum for a scenario-supplied g (identity or sample).
KClass scenario_euler_sum(const Scenario& s, const GroupElement& g);

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace torvan

#endif
