#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <coshom/errors.hpp>
#include <coshom/io.hpp>

#include <string>

using namespace coshom;

namespace {

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

void check_throws_with(const std::string& text, const std::string& fragment) {
  try {
    parse_document(text);
    FAIL("expected input_error mentioning '" << fragment << "'");
  } catch (const input_error& e) {
    REQUIRE(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("a boundary-of-triangle document parses to six cells") {
  InputDocument doc = parse_document(kCircleDoc);
  REQUIRE(doc.simplicial);
  REQUIRE(doc.poset.size() == 6);
  REQUIRE(doc.poset.cover_pairs().size() == 6);
  REQUIRE(doc.complex.dim() == 1);
  for (int x = 0; x < 6; ++x) REQUIRE(doc.cosheaf.at(x).iso_class() == IsoClass{1, {}});

  HomologyReport r = homology(bm_complex(doc.complex, doc.cosheaf), Pipeline::bm);
  REQUIRE(r.class_at(0) == IsoClass{1, {}});
  REQUIRE(r.class_at(1) == IsoClass{1, {}});
}

TEST_CASE("simplex lists are closed under faces and deduplicated") {
  // the filled triangle given only by its top cell, with every face group Z
  InputDocument doc = parse_document(R"({
    "kind": "simplicial-complex",
    "vertices": ["a", "b", "c"],
    "simplices": [["a", "b", "c"], ["b", "c"], ["b", "c"]],
    "groups": {
      "a": {"gens": 1}, "b": {"gens": 1}, "c": {"gens": 1},
      "a,b": {"gens": 1}, "a,c": {"gens": 1}, "b,c": {"gens": 1},
      "a,b,c": {"gens": 1}
    },
    "maps": {
      "a,b>a": [[1]], "a,b>b": [[1]],
      "a,c>a": [[1]], "a,c>c": [[1]],
      "b,c>b": [[1]], "b,c>c": [[1]],
      "a,b,c>a,b": [[1]], "a,b,c>a,c": [[1]], "a,b,c>b,c": [[1]]
    }
  })");
  REQUIRE(doc.poset.size() == 7);
  REQUIRE(doc.complex.dim() == 2);
}

TEST_CASE("poset documents parse and validate") {
  InputDocument doc = parse_document(R"({
    "kind": "poset",
    "elements": ["top", "left", "right"],
    "hasse": [["top", "left"], ["top", "right"]],
    "groups": {
      "top": {"gens": 1},
      "left": {"gens": 1, "relations": [[2]]},
      "right": {"gens": 0}
    },
    "maps": {"top>left": [[1]], "top>right": []}
  })");
  REQUIRE(!doc.simplicial);
  REQUIRE(doc.poset.size() == 3);
  REQUIRE(doc.cosheaf.at(doc.poset.index_of("left")).iso_class() == IsoClass{0, {2}});
  REQUIRE(doc.cosheaf.at(doc.poset.index_of("right")).is_trivial());
}

TEST_CASE("malformed documents fail with named diagnostics") {
  check_throws_with("", "syntax error at line 1");
  check_throws_with("{\n  \"kind\": \"poset\",\n  oops\n}", "line 3");
  check_throws_with(R"({"vertices": []})", "kind");
  check_throws_with(R"({"kind": "graph"})", "unknown kind 'graph'");

  // dangling references
  check_throws_with(R"({
    "kind": "simplicial-complex", "vertices": ["a"], "simplices": [["a", "z"]],
    "groups": {"a": {"gens": 1}}
  })", "z");
  check_throws_with(R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": 1}, "ghost": {"gens": 1}}
  })", "unknown element 'ghost'");

  // missing entries
  check_throws_with(R"({
    "kind": "poset", "elements": ["a", "b"], "hasse": [["a", "b"]],
    "groups": {"a": {"gens": 1}},
    "maps": {"a>b": [[1]]}
  })", "no entry for element 'b'");
  std::string no_edge_map = R"({
    "kind": "simplicial-complex",
    "vertices": ["a", "b"], "simplices": [["a", "b"]],
    "groups": {"a": {"gens": 1}, "b": {"gens": 1}, "a,b": {"gens": 1}},
    "maps": {"a,b>a": [[1]]}
  })";
  check_throws_with(no_edge_map, "no entry for covering pair 'a,b>b'");

  // bad map keys
  check_throws_with(R"({
    "kind": "poset", "elements": ["a", "b"], "hasse": [["a", "b"]],
    "groups": {"a": {"gens": 1}, "b": {"gens": 1}},
    "maps": {"a>b": [[1]], "b>a": [[1]]}
  })", "'b>a' is not a covering pair");

  // dimension mismatch in a matrix
  check_throws_with(R"({
    "kind": "poset", "elements": ["a", "b"], "hasse": [["a", "b"]],
    "groups": {"a": {"gens": 2}, "b": {"gens": 1}},
    "maps": {"a>b": [[1]]}
  })", "expected 2 columns, got 1");
  check_throws_with(R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": 2, "relations": [[1], [0], [0]]}}
  })", "expected 2 rows, got 3");
  check_throws_with(R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": 2, "relations": [[1, 0], [0]]}}
  })", "unequal lengths");

  // entries must be exact integers
  check_throws_with(R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": 1, "relations": [[2.5]]}}
  })", "expected an integer");
  check_throws_with(R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": 1, "relations": [["12x"]]}}
  })", "'12x' is not an integer");
  check_throws_with(R"({
    "kind": "poset", "elements": ["a"], "hasse": [],
    "groups": {"a": {"gens": -1}}
  })", "nonnegative");

  // a map that is not well defined on the presented groups
  check_throws_with(R"({
    "kind": "poset", "elements": ["a", "b"], "hasse": [["a", "b"]],
    "groups": {"a": {"gens": 1, "relations": [[2]]}, "b": {"gens": 1}},
    "maps": {"a>b": [[1]]}
  })", "maps.a>b");

  // names that would collide with the map-key syntax
  check_throws_with(R"({
    "kind": "poset", "elements": ["x>y"], "hasse": [],
    "groups": {"x>y": {"gens": 0}}
  })", "may not contain '>'");
}

TEST_CASE("matrix entries beyond 64 bits survive as decimal strings") {
  const std::string big = "18446744073709551617";  // 2^64 + 1
  InputDocument doc = parse_document(R"({
    "kind": "simplicial-complex", "vertices": ["a"], "simplices": [],
    "groups": {"a": {"gens": 1, "relations": [[")" + big + R"("]]}}
  })");
  REQUIRE(doc.cosheaf.at(0).iso_class() == IsoClass{0, {Int(big)}});

  HomologyReport r = homology(bm_complex(doc.complex, doc.cosheaf), Pipeline::bm);
  std::string text = report_to_json(r);
  REQUIRE(text.find("\"" + big + "\"") != std::string::npos);
  HomologyReport back = report_from_json(text);
  REQUIRE(back.class_at(0) == IsoClass{0, {Int(big)}});
}

TEST_CASE("homology reports round-trip through their own format") {
  HomologyReport r;
  r.tag = Pipeline::derived;
  r.classes = {IsoClass{2, {Int(2), Int(6)}}, IsoClass{0, {}}, IsoClass{1, {Int(3)}}};
  HomologyReport back = report_from_json(report_to_json(r));
  REQUIRE(back.tag == r.tag);
  REQUIRE(back.classes.size() == r.classes.size());
  for (std::size_t n = 0; n < r.classes.size(); ++n) REQUIRE(back.classes[n] == r.classes[n]);

  // emitted text is stable under a second round trip
  REQUIRE(report_to_json(back) == report_to_json(r));

  REQUIRE_THROWS_AS(report_from_json("not json"), input_error);
  REQUIRE_THROWS_AS(report_from_json(R"({"pipeline": "magic", "H": []})"), input_error);
  REQUIRE_THROWS_AS(report_from_json(R"({"pipeline": "bm", "H": [{"degree": 0, "rank": -1}]})"),
                    input_error);
  REQUIRE_THROWS_AS(
      report_from_json(R"({"pipeline": "bm", "H": [{"degree": 0, "rank": 0, "torsion": ["1"]}]})"),
      input_error);
}

TEST_CASE("crosscheck records round-trip through their own format") {
  InputDocument doc = parse_document(kCircleDoc);
  CrosscheckRecord r = crosscheck(doc.complex, doc.cosheaf);
  REQUIRE(r.agree);

  std::string text = crosscheck_to_json(r);
  CrosscheckRecord back = crosscheck_from_json(text);
  REQUIRE(back.agree == r.agree);
  REQUIRE(back.first_mismatch == r.first_mismatch);
  REQUIRE(back.note == r.note);
  REQUIRE(back.bm.class_at(1) == IsoClass{1, {}});
  REQUIRE(back.cech.class_at(1) == IsoClass{1, {}});
  REQUIRE(back.derived.class_at(0) == IsoClass{1, {}});
  REQUIRE(back.subdivided.class_at(1) == IsoClass{1, {}});
  REQUIRE(crosscheck_to_json(back) == text);

  REQUIRE_THROWS_AS(crosscheck_from_json(R"({"agree": true})"), input_error);
  REQUIRE_THROWS_AS(crosscheck_from_json("[]"), input_error);
}

TEST_CASE("load_document reports unreadable paths") {
  REQUIRE_THROWS_AS(load_document("/no/such/file.json"), input_error);
}
