#include "torvan/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "torvan/scenario_io.hpp"

namespace torvan {

namespace {

struct CommonOpts {
  std::string scenario_path;
  std::string out_path;
  bool timings = false;
  ScenarioOverrides overrides;
  // CLI11 needs stable storage for optional numeric flags.
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
  int imax = -1;
  bool crosscheck = false;
  bool seed_set = false, prime_set = false, imax_set = false, crosscheck_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("scenario", o.scenario_path, "scenario JSON file")->required();
  cmd->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
  cmd->add_flag("--timings", o.timings, "include wall-clock timings in the report");
  cmd->add_option("--seed", o.seed, "override the sampler seed")
      ->each([&](const std::string&) { o.seed_set = true; });
  cmd->add_option("--prime", o.prime, "override the field with F_p")
      ->each([&](const std::string&) { o.prime_set = true; });
  cmd->add_option("--imax", o.imax, "override i_max")
      ->each([&](const std::string&) { o.imax_set = true; });
  cmd->add_flag("--crosscheck", o.crosscheck,
                "force the double-complex crosscheck on")
      ->each([&](const std::string&) { o.crosscheck_set = true; });
}

Scenario load(const CommonOpts& o) {
  ScenarioOverrides ov;
  if (o.seed_set) ov.seed = o.seed;
  if (o.prime_set) ov.prime = o.prime;
  if (o.imax_set) ov.i_max = o.imax;
  if (o.crosscheck_set) ov.crosscheck = o.crosscheck;
  return load_scenario_file(o.scenario_path, ov);
}

void emit(const nlohmann::json& j, const CommonOpts& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw ValidationError("cannot write report to " + o.out_path);
  f << j.dump(2) << "\n";
}

// --g accepts "identity", "sample:<k>", or an inline JSON matrix of field
// element strings.
std::pair<GroupElement, std::optional<std::vector<FieldElem>>> parse_g(
    const Scenario& s, const std::string& text) {
  if (text == "identity") return {scenario_identity(s), std::nullopt};
  if (text.rfind("sample:", 0) == 0) {
    std::uint64_t k = std::stoull(text.substr(7));
    ScenarioSample sample = scenario_sample(s, k);
    std::optional<std::vector<FieldElem>> point;
    if (!sample.params.empty()) point = sample.params;
    return {sample.g, point};
  }
  nlohmann::json j = nlohmann::json::parse(text);
  int n = static_cast<int>(j.size());
  FieldMatrix m(s.ring()->field(), n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(j.at(i).size()) != n)
      throw ValidationError("--g matrix must be square");
    for (int c = 0; c < n; ++c)
      m.at(i, c) = FieldElem::parse(s.ring()->field(), j.at(i).at(c).get<std::string>());
  }
  return {GroupElement::from_matrix(m), std::nullopt};
}

int cmd_check(const CommonOpts& o, const std::string& gspec, std::ostream& out) {
  Scenario s = load(o);
  auto [g, point] = parse_g(s, gspec);
  VanishingReport r = check_vanishing(s, g, point);
  emit(report_to_json(r, o.timings), o, out);
  return r.verdict ? 0 : 1;
}

int cmd_density(const CommonOpts& o, int trials, const std::string& csv_path,
                std::ostream& out) {
  if (trials < 1) throw ValidationError("--trials must be >= 1");
  Scenario s = load(o);
  DensityReport r = monte_carlo_density(s, trials);
  emit(report_to_json(r, o.timings), o, out);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw ValidationError("cannot write CSV to " + csv_path);
    f << density_csv(r);
  }
  return r.failing_trials.empty() ? 0 : 1;
}

int cmd_badlocus(const CommonOpts& o, std::ostream& out) {
  Scenario s = load(o);
  BadLocusReport r = bad_locus(s);
  emit(report_to_json(r, o.timings), o, out);
  return 0;
}

int cmd_kprod(const CommonOpts& o, int samples, std::ostream& out) {
  Scenario s = load(o);
  nlohmann::json classes = nlohmann::json::array();
  std::vector<KClass> values;
  {
    KClass k = scenario_euler_sum(s, scenario_identity(s));
    nlohmann::json e;
    e["g"] = "identity";
    e["class"] = k.str();
    classes.push_back(e);
    values.push_back(std::move(k));
  }
  for (int t = 0; t < samples; ++t) {
    ScenarioSample sample = scenario_sample(s, static_cast<std::uint64_t>(t));
    KClass k = scenario_euler_sum(s, sample.g);
    nlohmann::json e;
    e["g"] = "sample:" + std::to_string(t);
    e["class"] = k.str();
    classes.push_back(e);
    values.push_back(std::move(k));
  }
  bool invariant = true;
  for (const auto& v : values)
    if (!(v == values.front())) invariant = false;
  nlohmann::json j;
  j["command"] = "kprod";
  j["engine_version"] = kEngineVersion;
  j["scenario"] = s.name;
  j["classes"] = classes;
  j["invariant"] = invariant;
  emit(j, o, out);
  return invariant ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Tor-vanishing experiments for group translates"};
  app.require_subcommand(1);

  CommonOpts check_o, density_o, badlocus_o, kprod_o;
  std::string gspec = "sample:0";
  int trials = 0;
  std::string csv_path;
  int samples = 3;

  CLI::App* check = app.add_subcommand("check", "certify vanishing for one group element");
  add_common(check, check_o);
  check->add_option("--g", gspec, "identity | sample:<k> | JSON matrix");

  CLI::App* density = app.add_subcommand("density", "Monte Carlo density of the good set");
  add_common(density, density_o);
  density->add_option("--trials", trials, "number of trials")->required();
  density->add_option("--csv", csv_path, "also write a CSV summary here");

  CLI::App* badlocus = app.add_subcommand("badlocus", "exact bad locus of a parametric family");
  add_common(badlocus, badlocus_o);

  CLI::App* kprod = app.add_subcommand("kprod", "K-theory product via Euler Tor sums");
  add_common(kprod, kprod_o);
  kprod->add_option("--samples", samples, "number of sampled group elements");

  std::vector<const char*> argv;
  argv.push_back("torvan");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(check_o, gspec, out);
    if (density->parsed()) return cmd_density(density_o, trials, csv_path, out);
    if (badlocus->parsed()) return cmd_badlocus(badlocus_o, out);
    if (kprod->parsed()) return cmd_kprod(kprod_o, samples, out);
    err << "no subcommand given\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace torvan
