#include "torvan/scenario_io.hpp"

#include <fstream>
#include <sstream>

namespace torvan {

using nlohmann::json;

namespace {

Field field_from_json(const json& j, const ScenarioOverrides& o) {
  if (o.prime) return Field::prime(*o.prime);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind == "Fp") return Field::prime(j.at("p").get<std::uint32_t>());
  throw ValidationError("field kind must be 'Q' or 'Fp'");
}

Presentation presentation_from_json(const json& j, const CoordPtr& coords,
                                    const std::string& label) {
  const RingPtr& ring = coords->ring;
  std::vector<long long> target_degs;
  if (j.contains("target_degrees"))
    target_degs = j.at("target_degrees").get<std::vector<long long>>();
  const json& mat = j.at("matrix");
  int rows = static_cast<int>(mat.size());
  if (target_degs.empty()) target_degs.assign(std::max(rows, 1), 0);
  if (rows == 0) return free_presentation(coords, target_degs, label);
  if (static_cast<int>(target_degs.size()) != rows)
    throw ValidationError(label + ": target_degrees length must match the row count");
  int cols = static_cast<int>(mat.at(0).size());
  std::vector<ModuleElem> columns;
  for (int c = 0; c < cols; ++c) {
    ModuleElem col = ModuleElem::zero(ring, rows);
    for (int r = 0; r < rows; ++r) {
      const json& row = mat.at(r);
      if (static_cast<int>(row.size()) != cols)
        throw ValidationError(label + ": ragged presentation matrix");
      col.comps[r] = parse_polynomial(ring, row.at(c).get<std::string>());
    }
    columns.push_back(std::move(col));
  }
  FreeModule target = FreeModule::make(coords, target_degs);
  ModuleMap rel = make_map_inferred(target, columns);
  Presentation p;
  p.rel = rel;
  p.label = label;
  return p;
}

}  // namespace

Scenario scenario_from_json(const json& j, const ScenarioOverrides& o) {
  Scenario s;
  s.name = j.value("name", "unnamed");
  Field field = field_from_json(j.at("field"), o);

  const json& jr = j.at("ring");
  std::vector<std::string> vars = jr.at("vars").get<std::vector<std::string>>();
  std::vector<int> weights;
  if (jr.contains("weights")) weights = jr.at("weights").get<std::vector<int>>();
  RingPtr ring = Ring::make(vars, field, weights);
  CoordPtr coords = free_coords(ring);
  s.coords = coords;

  if (j.contains("x_relations"))
    for (const auto& rs : j.at("x_relations"))
      s.x_relations.push_back(parse_polynomial(ring, rs.get<std::string>()));

  const json& jg = j.at("group");
  std::string gkind = jg.at("kind").get<std::string>();
  if (gkind == "GL") {
    s.group = GroupSpec::gl(jg.at("n").get<int>());
  } else if (gkind == "parametric") {
    std::vector<std::string> params = jg.at("params").get<std::vector<std::string>>();
    RingPtr aring = Ring::make(params, field);
    std::vector<std::vector<Polynomial>> mat;
    for (const auto& row : jg.at("matrix")) {
      std::vector<Polynomial> r;
      for (const auto& e : row) r.push_back(parse_polynomial(aring, e.get<std::string>()));
      mat.push_back(std::move(r));
    }
    s.group = GroupSpec::parametric(aring, std::move(mat));
  } else {
    throw ValidationError("group kind must be 'GL' or 'parametric'");
  }

  const json& ja = j.at("action");
  std::string akind = ja.at("kind").get<std::string>();
  if (akind == "linear") {
    s.action = ActionSpec::linear();
  } else if (akind == "pluecker") {
    s.action = ActionSpec::pluecker(ja.at("k").get<int>(), ja.at("n").get<int>());
  } else {
    throw ValidationError("action kind must be 'linear' or 'pluecker'");
  }

  s.E = presentation_from_json(j.at("E"), coords, "E");
  s.F = presentation_from_json(j.at("F"), coords, "F");

  if (j.contains("sampler")) {
    const json& js = j.at("sampler");
    s.sampler.seed = js.value("seed", 0ull);
    s.sampler.bound = js.value("bound", 10ll);
    s.sampler.max_attempts = js.value("max_attempts", 16);
  }
  s.i_max = j.value("i_max", ring->nvars());
  s.crosscheck = j.value("crosscheck", false);

  if (o.seed) s.sampler.seed = *o.seed;
  if (o.i_max) s.i_max = *o.i_max;
  if (o.crosscheck) s.crosscheck = *o.crosscheck;
  return s;
}

Scenario load_scenario_file(const std::string& path, const ScenarioOverrides& o) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("scenario JSON parse error in " + path + ": " + e.what());
  }
  try {
    return validate_scenario(scenario_from_json(j, o));
  } catch (const json::exception& e) {
    throw ValidationError("scenario schema error in " + path + ": " + e.what());
  }
}

namespace {

json tor_lines_json(const std::vector<TorLine>& tors) {
  json arr = json::array();
  for (const auto& t : tors) {
    json line;
    line["i"] = t.index;
    line["k_polynomial"] = t.k_poly ? json(t.k_poly->str()) : json(nullptr);
    line["zero"] = t.zero;
    arr.push_back(line);
  }
  return arr;
}

}  // namespace

json report_to_json(const VanishingReport& r, bool with_timings) {
  json j;
  j["command"] = "check";
  j["engine_version"] = kEngineVersion;
  j["scenario"] = r.scenario;
  j["g"] = r.g;
  j["tor"] = tor_lines_json(r.tors);
  j["verdict"] = r.verdict;
  j["crosschecked"] = r.crosschecked;
  if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

json report_to_json(const DensityReport& r, bool with_timings) {
  json j;
  j["command"] = "density";
  j["engine_version"] = kEngineVersion;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["passed"] = r.passed;
  j["density"] = r.density;
  json fails = json::array();
  for (std::size_t i = 0; i < r.failing_trials.size(); ++i) {
    json f;
    f["trial"] = r.failing_trials[i];
    f["g"] = r.failing_g[i];
    fails.push_back(f);
  }
  j["failing"] = fails;
  if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

json report_to_json(const BadLocusReport& r, bool with_timings) {
  json j;
  j["command"] = "badlocus";
  j["engine_version"] = kEngineVersion;
  j["param_vars"] = r.param_vars;
  j["ideal"] = r.ideal_generators;
  j["whole_space"] = r.whole_space;
  j["kept_candidates"] = r.kept_candidates;
  j["dropped_candidates"] = r.dropped_candidates;
  j["det_note"] = r.det_note;
  if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

json certificate_to_json(const FreenessCertificate& c) {
  json j;
  j["param_vars"] = c.param_vars;
  j["f"] = c.f;
  j["head_audit"] = c.head_audit;
  j["generic_signature"] = c.generic_signature.str();
  j["generic_rank"] = c.generic_rank ? json(*c.generic_rank) : json("infinite");
  return j;
}

std::string density_csv(const DensityReport& r) {
  std::ostringstream os;
  os << "scenario,seed,trials,passed,density\n";
  os << r.scenario << "," << r.seed << "," << r.trials << "," << r.passed << ","
     << r.density << "\n";
  return os.str();
}

}  // namespace torvan
