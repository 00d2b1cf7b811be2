#ifndef TORVAN_SCENARIO_IO_HPP
#define TORVAN_SCENARIO_IO_HPP

#include <json.hpp>

#include "torvan/engine.hpp"

namespace torvan {

// Optional command-line overrides applied before the ring is built.
struct ScenarioOverrides {
  std::optional<std::uint32_t> prime;
  std::optional<std::uint64_t> seed;
  std::optional<int> i_max;
  std::optional<bool> crosscheck;
};

// Builds (but does not validate) a scenario from its JSON document.
Scenario scenario_from_json(const nlohmann::json& j, const ScenarioOverrides& o = {});
// Reads, builds, and validates.
Scenario load_scenario_file(const std::string& path, const ScenarioOverrides& o = {});

// Canonical report serializations: deterministic for fixed inputs. Wall
// times are attached only when with_timings is set.
nlohmann::json report_to_json(const VanishingReport& r, bool with_timings = false);
nlohmann::json report_to_json(const DensityReport& r, bool with_timings = false);
nlohmann::json report_to_json(const BadLocusReport& r, bool with_timings = false);
nlohmann::json certificate_to_json(const FreenessCertificate& c);

std::string density_csv(const DensityReport& r);

}  // namespace torvan

#endif
