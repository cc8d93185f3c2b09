#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

struct RunResult {
  std::string out;
  int code = -1;
};

// run the installed binary from the repository root, stderr discarded
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string("cd '") + ORTHOGRAD_SOURCE_DIR +
                          "' && '" + ORTHOGRAD_CLI_PATH + "' " + args +
                          " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {};
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(ORTHOGRAD_SOURCE_DIR) + "/tests/golden/" + name,
                   std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("command outputs match their golden files byte for byte", "[cli]") {
  struct Case {
    const char* file;
    const char* args;
    int code;
  };
  const Case cases[] = {
      {"demo_d13.txt", "demo-d13", 0},
      {"demo_d13.json", "demo-d13 --json", 0},
      {"design_pg23.txt", "design pg23", 0},
      {"design_search_13.json", "design search --n 13 --json", 0},
      {"design_validate_pg23.txt", "design validate data/pg23.design", 0},
      {"design_develop_13.txt", "design develop --n 13 --blocks 0,1,3,9", 0},
      {"design_validate_broken.txt", "design validate tests/data/broken.design", 1},
      {"grade_design_pg23.txt", "grade --design data/pg23.design --verify", 0},
      {"grade_sub_d4.json", "grade --subgroup data/d4.sub --verify --json", 0},
      {"nongroup_d4.json", "nongroup --design data/d4_single.design --json", 0},
      {"nongroup_pg23.txt", "nongroup --design data/pg23.design", 1},
      {"pure_d6.txt", "pure --subgroup data/d6.sub", 0},
      {"pure_q4.json", "pure --subgroup data/q4.sub --json", 0},
      {"snf_d13e.txt", "snf data/d13_e.matrix", 0},
      {"snf_identity3_transforms.txt",
       "snf tests/data/identity3.matrix --transforms", 0},
  };
  for (const Case& c : cases) {
    INFO(c.args);
    RunResult r = run_cli(c.args);
    CHECK(r.code == c.code);
    CHECK(r.out == golden(c.file));
  }
}

TEST_CASE("json reports carry the envelope and echo their inputs", "[cli]") {
  RunResult r = run_cli("grade --subgroup data/d4.sub --verify --json");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["command"] == "grade");
  CHECK(rep["exit_code"] == 0);
  CHECK(rep["verdict"] == "Ok");
  CHECK(rep["inputs"]["parameters"]["seed"] == 0);
  CHECK(rep["inputs"]["parameters"]["verify"] == true);
  std::string digest = rep["inputs"]["files"]["subgroup"]["fnv1a64"];
  CHECK(digest.size() == 16);
  CHECK(rep["results"]["component_count"] == 13);

  RunResult seeded = run_cli("design pg23 --json --seed 7");
  REQUIRE(seeded.code == 0);
  json srep = json::parse(seeded.out);
  CHECK(srep["inputs"]["parameters"]["seed"] == 7);

  // input failures still produce a parseable envelope
  RunResult bad = run_cli("design validate no_such_file.design --json");
  CHECK(bad.code == 2);
  json brep = json::parse(bad.out);
  CHECK(brep["command"] == "design validate");
  CHECK(brep["exit_code"] == 2);
  CHECK_THAT(brep["error"].get<std::string>(), ContainsSubstring("no_such_file"));
}

TEST_CASE("exit codes distinguish success, negative verdicts, and bad input",
          "[cli]") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("design --help").code == 0);
  CHECK(run_cli("").code == 2);                    // a subcommand is required
  CHECK(run_cli("frobnicate").code == 2);          // unknown command
  CHECK(run_cli("design search").code == 2);       // missing --n
  CHECK(run_cli("design search --n 14").code == 2);
  CHECK(run_cli("design search --n 16").code == 2);
  CHECK(run_cli("grade").code == 2);               // neither input given
  CHECK(run_cli("grade --design data/pg23.design --subgroup data/d4.sub").code == 2);
  CHECK(run_cli("grade --subgroup data/d4.sub --n 5").code == 2);
  CHECK(run_cli("snf data/pg23.design").code == 2);  // not a matrix file
  CHECK(run_cli("design develop --n 13 --blocks 0,1,2,4").code == 2);
  CHECK(run_cli("nongroup --design tests/data/broken.design").code == 2);
}

TEST_CASE("reports are byte-identical across runs", "[cli]") {
  RunResult a = run_cli("demo-d13 --json");
  RunResult b = run_cli("demo-d13 --json");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  RunResult c = run_cli("design search --n 13 --json");
  RunResult d = run_cli("design search --n 13 --json");
  REQUIRE(c.code == 0);
  CHECK(c.out == d.out);

  // the seed is echoed but drives nothing
  json j1 = json::parse(run_cli("design search --n 13 --json --seed 1").out);
  json j2 = json::parse(run_cli("design search --n 13 --json --seed 2").out);
  CHECK(j1["inputs"]["parameters"]["seed"] == 1);
  CHECK(j2["inputs"]["parameters"]["seed"] == 2);
  j1["inputs"]["parameters"].erase("seed");
  j2["inputs"]["parameters"].erase("seed");
  CHECK(j1 == j2);
}
