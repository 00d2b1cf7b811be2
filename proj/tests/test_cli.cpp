#include <doctest.h>

#include <fstream>
#include <sstream>

#include "torvan/cli.hpp"
#include "torvan/scenario_io.hpp"

using namespace torvan;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(TORVAN_SCENARIO_DIR) + "/" + name;
}

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return RunResult{code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("scenario files load and validate") {
  for (const char* name :
       {"planes-p3.json", "lines-p3.json", "twisted-cubic-vs-plane.json",
        "plane-family-1param.json", "gr24-schubert-sigma1.json"}) {
    CHECK_NOTHROW(load_scenario_file(scenario_path(name)));
  }
}

TEST_CASE("check: exit codes track the verdict") {
  RunResult bad = run({"check", scenario_path("planes-p3.json"), "--g", "identity"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("\"verdict\": false") != std::string::npos);
  RunResult good = run({"check", scenario_path("planes-p3.json"), "--g", "sample:0"});
  CHECK(good.code == 0);
  RunResult free_like = run({"check", scenario_path("planes-p3.json"), "--g",
                             R"([["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["1","0","0","1"]])"});
  CHECK(free_like.code == 0);  // a shear moves the plane off itself
}

TEST_CASE("check: usage and validation failures exit 2") {
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", "/nonexistent/scenario.json"}).code == 2);
  CHECK(run({"bogus-subcommand"}).code == 2);
  SUBCASE("malformed scenario JSON") {
    std::string path = "/tmp/torvan_bad_scenario.json";
    std::ofstream(path) << "{ not json";
    CHECK(run({"check", path}).code == 2);
  }
  SUBCASE("schema violation") {
    std::string path = "/tmp/torvan_bad_schema.json";
    std::ofstream(path) << R"({"name":"x","field":{"kind":"Fp","p":7}})";
    CHECK(run({"check", path}).code == 2);
  }
}

TEST_CASE("density: determinism and exit codes") {
  RunResult a = run({"density", scenario_path("planes-p3.json"), "--trials", "6"});
  RunResult b = run({"density", scenario_path("planes-p3.json"), "--trials", "6"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);  // byte-identical reports
  CHECK(a.out.find("\"density\": 1.0") != std::string::npos);
  RunResult zero = run({"density", scenario_path("planes-p3.json"), "--trials", "0"});
  CHECK(zero.code == 2);
}

TEST_CASE("density: seed override changes samples but stays deterministic") {
  RunResult a =
      run({"density", scenario_path("planes-p3.json"), "--trials", "4", "--seed", "7"});
  RunResult b =
      run({"density", scenario_path("planes-p3.json"), "--trials", "4", "--seed", "7"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("badlocus command") {
  RunResult r = run({"badlocus", scenario_path("plane-family-1param.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"ideal\"") != std::string::npos);
  CHECK(r.out.find("\"t\"") != std::string::npos);
  SUBCASE("gate refusal carries the gate values and exits 2") {
    std::string path = "/tmp/torvan_gate.json";
    std::ofstream(path) << R"({
      "name": "too-many-params",
      "field": {"kind": "Fp", "p": 32003},
      "ring": {"vars": ["x0", "x1", "x2", "x3"]},
      "group": {"kind": "parametric", "params": ["a", "b", "c", "d"],
        "matrix": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["a","b","c","1"]]},
      "action": {"kind": "linear"},
      "E": {"target_degrees": [0], "matrix": [["x3"]]},
      "F": {"target_degrees": [0], "matrix": [["x3"]]},
      "sampler": {"seed": 1}, "i_max": 2
    })";
    RunResult g = run({"badlocus", path});
    CHECK(g.code == 2);
    CHECK(g.err.find("gate") != std::string::npos);
  }
}

TEST_CASE("kprod command is invariant on the bundled scenarios") {
  RunResult planes = run({"kprod", scenario_path("planes-p3.json"), "--samples", "2"});
  CHECK(planes.code == 0);
  CHECK(planes.out.find("\"invariant\": true") != std::string::npos);
  RunResult lines = run({"kprod", scenario_path("lines-p3.json"), "--samples", "2"});
  CHECK(lines.code == 0);
}

TEST_CASE("reports are byte-identical across runs and exclude timings by default") {
  RunResult a = run({"check", scenario_path("planes-p3.json"), "--g", "identity"});
  RunResult b = run({"check", scenario_path("planes-p3.json"), "--g", "identity"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("elapsed_ms") == std::string::npos);
  RunResult timed = run({"check", scenario_path("planes-p3.json"), "--g", "identity",
                         "--timings"});
  CHECK(timed.out.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  std::string path = "/tmp/torvan_report.json";
  RunResult r = run({"check", scenario_path("planes-p3.json"), "--g", "sample:0", "--out",
                     path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("\"verdict\": true") != std::string::npos);
}

TEST_CASE("prime override re-reads the scenario over another field") {
  RunResult r = run({"check", scenario_path("planes-p3.json"), "--g", "sample:0", "--prime",
                     "101"});
  CHECK(r.code == 0);
}

TEST_CASE("csv summary") {
  std::string path = "/tmp/torvan_density.csv";
  RunResult r = run({"density", scenario_path("planes-p3.json"), "--trials", "3", "--csv",
                     path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "scenario,seed,trials,passed,density");
}

TEST_SUITE_END();
