#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <coshom/cli.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = coshom::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_doc(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("coshom_cli_" + name);
  std::ofstream file(path);
  file << content;
  return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const char* kCircleDoc = R"({
  "kind": "simplicial-complex",
  "vertices": ["a", "b", "c"],
  "simplices": [["a", "b"], ["a", "c"], ["b", "c"]],
  "groups": {
    "a": {"gens": 1}, "b": {"gens": 1}, "c": {"gens": 1},
    "a,b": {"gens": 1}, "a,c": {"gens": 1}, "b,c": {"gens": 1}
  },
  "maps": {
    "a,b>a": [[1]], "a,b>b": [[1]],
    "a,c>a": [[1]], "a,c>c": [[1]],
    "b,c>b": [[1]], "b,c>c": [[1]]
  }
})";

}  // namespace

TEST_CASE("check validates a document and reports its size") {
  const std::string path = tmp_doc("circle.json", kCircleDoc);
  CliResult r = run({"check", path});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "ok: 6 elements, 6 covering pairs"));
  REQUIRE(r.err.empty());
}

TEST_CASE("bm emits a report with torsion as decimal strings") {
  const std::string path = tmp_doc("z6.json", R"({
    "kind": "simplicial-complex", "vertices": ["v"], "simplices": [],
    "groups": {"v": {"gens": 1, "relations": [[6]]}}
  })");
  CliResult r = run({"bm", path});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "\"pipeline\": \"bm\""));
  REQUIRE(contains(r.out, "\"6\""));
  REQUIRE(contains(r.out, "\"rank\": 0"));
}

TEST_CASE("cech and bm agree on the circle through the CLI") {
  const std::string path = tmp_doc("circle.json", kCircleDoc);
  CliResult bm = run({"bm", path});
  CliResult cech = run({"cech", path});
  REQUIRE(bm.code == 0);
  REQUIRE(cech.code == 0);
  // same degreewise classes, different pipeline tag
  std::string bm_stripped = bm.out, cech_stripped = cech.out;
  const auto scrub = [](std::string s, const std::string& tag) {
    const auto at = s.find(tag);
    REQUIRE(at != std::string::npos);
    return s.erase(at, tag.size());
  };
  REQUIRE(scrub(bm_stripped, "\"bm\"") == scrub(cech_stripped, "\"cech\""));
}

TEST_CASE("crosscheck exits cleanly when all pipelines agree") {
  const std::string path = tmp_doc("circle.json", kCircleDoc);
  CliResult r = run({"crosscheck", path});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "\"agree\": true"));
  REQUIRE(contains(r.out, "\"subdivision\""));
  REQUIRE(r.err.empty());
}

TEST_CASE("derived honors --max-degree and defaults to the chain length") {
  const std::string path = tmp_doc("toppoint.json", R"({
    "kind": "poset",
    "elements": ["a", "b", "c"],
    "hasse": [["a", "b"], ["a", "c"]],
    "groups": {"a": {"gens": 1}, "b": {"gens": 0}, "c": {"gens": 0}},
    "maps": {"a>b": [], "a>c": []}
  })");
  CliResult full = run({"derived", path});
  REQUIRE(full.code == 0);
  REQUIRE(contains(full.out, "\"degree\": 2"));  // default reports through dim + 1

  CliResult cut = run({"derived", path, "--max-degree", "1"});
  REQUIRE(cut.code == 0);
  REQUIRE(contains(cut.out, "\"degree\": 1"));
  REQUIRE(!contains(cut.out, "\"degree\": 2"));
  REQUIRE(contains(cut.out, "\"rank\": 1"));  // the obstruction class in degree one
}

TEST_CASE("cosheafify evaluates on the up-closure of the given elements") {
  const std::string path = tmp_doc("circle.json", kCircleDoc);
  CliResult r = run({"cosheafify", path, "--open", "a"});
  REQUIRE(r.code == 0);
  // the open star of a vertex on the circle contracts onto the vertex
  REQUIRE(contains(r.out, "\"rank\": 1"));
  REQUIRE(contains(r.out, "\"a,b\""));
  REQUIRE(contains(r.out, "\"a,c\""));

  CliResult bad = run({"cosheafify", path, "--open", "nope"});
  REQUIRE(bad.code == 1);
  REQUIRE(contains(bad.err, "\"kind\": \"input\""));
  REQUIRE(contains(bad.err, "nope"));
}

TEST_CASE("the bundled kernel example shows the failed cosheaf identity") {
  CliResult r = run({"example", "paper-kernel"});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "not a cosheaf"));
  REQUIRE(contains(r.out, "rank 1"));
  REQUIRE(contains(r.out, "rank 2"));
  REQUIRE(contains(r.out, "Z^2"));

  CliResult bad = run({"example", "unknown-demo"});
  REQUIRE(bad.code == 1);
  REQUIRE(contains(bad.err, "unknown example"));
}

TEST_CASE("fuzz is reproducible and honors the environment default") {
  CliResult a = run({"fuzz", "--seed", "5", "--count", "4"});
  CliResult b = run({"fuzz", "--seed", "5", "--count", "4"});
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(contains(a.out, "\"instances\": 4"));
  REQUIRE(contains(a.out, "\"failures\": 0"));

  setenv("COSHOM_FUZZ_COUNT", "2", 1);
  CliResult env = run({"fuzz", "--seed", "5"});
  unsetenv("COSHOM_FUZZ_COUNT");
  REQUIRE(env.code == 0);
  REQUIRE(contains(env.out, "\"instances\": 2"));

  setenv("COSHOM_FUZZ_COUNT", "zero", 1);
  CliResult badenv = run({"fuzz", "--seed", "5"});
  unsetenv("COSHOM_FUZZ_COUNT");
  REQUIRE(badenv.code == 1);
  REQUIRE(contains(badenv.err, "COSHOM_FUZZ_COUNT"));
}

TEST_CASE("input problems exit 1 with a structured error record") {
  CliResult missing = run({"check", "/no/such/file.json"});
  REQUIRE(missing.code == 1);
  REQUIRE(contains(missing.err, "\"kind\": \"input\""));
  REQUIRE(contains(missing.err, "cannot read file"));

  const std::string broken = tmp_doc("broken.json", "{\"kind\": ");
  CliResult syntax = run({"check", broken});
  REQUIRE(syntax.code == 1);
  REQUIRE(contains(syntax.err, "syntax error"));

  // a diamond whose two composites disagree is rejected at parse time
  const std::string diamond = tmp_doc("diamond.json", R"({
    "kind": "poset",
    "elements": ["t", "m1", "m2", "b"],
    "hasse": [["t", "m1"], ["t", "m2"], ["m1", "b"], ["m2", "b"]],
    "groups": {"t": {"gens": 1}, "m1": {"gens": 1}, "m2": {"gens": 1}, "b": {"gens": 1}},
    "maps": {"t>m1": [[1]], "t>m2": [[1]], "m1>b": [[1]], "m2>b": [[2]]}
  })");
  CliResult bad = run({"check", diamond});
  REQUIRE(bad.code == 1);
  REQUIRE(contains(bad.err, "\"kind\": \"input\""));

  CliResult wrongkind = run({"bm", tmp_doc("poset.json", R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": 1}}
  })")});
  REQUIRE(wrongkind.code == 1);
  REQUIRE(contains(wrongkind.err, "simplicial-complex"));
}

TEST_CASE("help and usage errors go through the standard channels") {
  CliResult help = run({"--help"});
  REQUIRE(help.code == 0);
  REQUIRE(contains(help.out, "crosscheck"));
  REQUIRE(contains(help.out, "fuzz"));

  CliResult none = run({});
  REQUIRE(none.code == 1);

  CliResult unknown = run({"frobnicate"});
  REQUIRE(unknown.code == 1);
}
