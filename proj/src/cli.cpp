#include <coshom/cli.hpp>

#include <coshom/corpus.hpp>
#include <coshom/errors.hpp>
#include <coshom/io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace coshom {

namespace {

using nlohmann::json;

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
}

/// Length of the longest chain minus one; the dimension of the order complex,
/// and the degree past which homology must vanish.
int poset_dim(const FinPoset& p) {
  std::vector<std::vector<int>> below(p.size());
  for (const auto& pr : p.cover_pairs()) below[pr.first].push_back(pr.second);
  std::vector<int> memo(p.size(), -1);
  std::function<int(int)> depth = [&](int x) {
    if (memo[x] >= 0) return memo[x];
    int best = 0;
    for (int y : below[x]) best = std::max(best, 1 + depth(y));
    return memo[x] = best;
  };
  int dim = p.size() == 0 ? -1 : 0;
  for (int x = 0; x < p.size(); ++x) dim = std::max(dim, depth(x));
  return dim;
}

void require_simplicial(const InputDocument& doc, const std::string& command) {
  if (!doc.simplicial)
    throw input_error(command + ": the document must have kind \"simplicial-complex\"" +
                      " (cell chains need the complex's vertex order)");
}

json iso_json(const IsoClass& c) {
  json torsion = json::array();
  for (const Int& d : c.torsion) torsion.push_back(d.str());
  return json{{"rank", c.free_rank}, {"torsion", torsion}};
}

/// The three-point space whose opens are {}, {a}, {a,b}, {a,c} and the whole
/// space, with the kernel of the comparison map from the constant cosheaf
/// onto the top point.  The open-level kernel violates the cosheaf identity
/// even though every costalk is fine.
int run_kernel_example(std::ostream& out) {
  FinPoset p = FinPoset::make({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  CellularCosheaf f = constant_cosheaf(p, AbGroup::free_group(1));
  CellularCosheaf g = CellularCosheaf::make(
      p, {AbGroup::free_group(1), AbGroup(), AbGroup()},
      {{{0, 1}, zero_hom(AbGroup::free_group(1), AbGroup())},
       {{0, 2}, zero_hom(AbGroup::free_group(1), AbGroup())}});
  NatTrans alpha = NatTrans::make(
      f, g, {identity_hom(AbGroup::free_group(1)), zero_hom(AbGroup::free_group(1), AbGroup()),
             zero_hom(AbGroup::free_group(1), AbGroup())});

  std::vector<OpenSet> opens = {p.empty_open(), p.principal_open(0), p.principal_open(1),
                                p.principal_open(2), p.full_open()};
  PrecosheafTable k = kernel_table(alpha, opens);
  Cover c = make_cover({p.principal_open(1), p.principal_open(2)}, p.full_open());
  AxiomCheck check = cosheaf_axiom_check(k, p.full_open(), c);
  CellularCosheaf corrected = cosheafify(k);
  IsoClass fixed = hat_eval(corrected, p.full_open()).group.iso_class();

  out << "kernel of the collapse-to-top-point map on the space {a > b, a > c}\n";
  out << "  value on the whole space:       " << check.value_class.to_string() << "  (rank "
      << check.value_class.free_rank << ")\n";
  out << "  nerve colimit over {a,b},{a,c}: " << check.nerve_class.to_string() << "  (rank "
      << check.nerve_class.free_rank << ")\n";
  out << "  cosheaf identity: " << (check.holds ? "holds" : "fails -- not a cosheaf") << "\n";
  out << "  cosheafification on the whole space: " << fixed.to_string() << "\n";
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact homology of cellular cosheaves on finite posets"};
  app.require_subcommand(1);

  std::string check_file;
  auto* check = app.add_subcommand("check", "parse a document and validate the cosheaf");
  check->add_option("file", check_file, "input document")->required();

  std::string bm_file;
  auto* bm = app.add_subcommand("bm", "cell-chain homology of a simplicial document");
  bm->add_option("file", bm_file, "input document")->required();

  std::string cech_file;
  auto* cech = app.add_subcommand("cech", "vertex-star cover homology of a simplicial document");
  cech->add_option("file", cech_file, "input document")->required();

  std::string derived_file;
  int max_degree = -1;
  auto* derived = app.add_subcommand("derived", "resolution homology of any document");
  derived->add_option("file", derived_file, "input document")->required();
  derived->add_option("--max-degree", max_degree,
                      "highest degree to report (default: longest chain)");

  std::string cross_file;
  auto* cross = app.add_subcommand("crosscheck",
                                   "run all four pipelines and compare degreewise");
  cross->add_option("file", cross_file, "input document")->required();

  std::string cosh_file;
  std::vector<std::string> open_members;
  auto* cosh = app.add_subcommand("cosheafify", "value of the induced cosheaf on an open set");
  cosh->add_option("file", cosh_file, "input document")->required();
  cosh->add_option("--open", open_members, "elements spanning the open (their up-closure)")
      ->required()
      ->expected(-1);

  std::string example_name;
  auto* example = app.add_subcommand("example", "run a bundled demonstration");
  example->add_option("name", example_name, "which one (available: paper-kernel)")->required();

  std::uint64_t seed = 0;
  int count = -1;
  auto* fuzz = app.add_subcommand("fuzz", "random cross-check corpus");
  fuzz->add_option("--seed", seed, "corpus seed (default 0)");
  fuzz->add_option("--count", count, "instances (default: COSHOM_FUZZ_COUNT or 25)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (*check) {
    InputDocument doc = load_document(check_file);
    out << "ok: " << doc.poset.size() << " elements, " << doc.poset.cover_pairs().size()
        << " covering pairs\n";
    return 0;
  }
  if (*bm) {
    InputDocument doc = load_document(bm_file);
    require_simplicial(doc, "bm");
    out << report_to_json(homology(bm_complex(doc.complex, doc.cosheaf), Pipeline::bm));
    return 0;
  }
  if (*cech) {
    InputDocument doc = load_document(cech_file);
    require_simplicial(doc, "cech");
    out << report_to_json(vertex_cover_cech(doc.complex, doc.cosheaf));
    return 0;
  }
  if (*derived) {
    InputDocument doc = load_document(derived_file);
    if (max_degree < 0) max_degree = std::max(poset_dim(doc.poset) + 1, 1);
    out << report_to_json(derived_homology(doc.cosheaf, max_degree + 1));
    return 0;
  }
  if (*cross) {
    InputDocument doc = load_document(cross_file);
    require_simplicial(doc, "crosscheck");
    CrosscheckRecord r = crosscheck(doc.complex, doc.cosheaf);
    out << crosscheck_to_json(r);
    if (!r.agree) {
      emit_error(err, "mismatch", "pipelines disagree (" + r.note + ")");
      return 3;
    }
    return 0;
  }
  if (*cosh) {
    InputDocument doc = load_document(cosh_file);
    std::vector<int> members;
    for (const std::string& name : open_members) members.push_back(doc.poset.index_of(name));
    OpenSet u = doc.poset.up_closure(members);
    json j{{"open", json::array()}, {"value", iso_json(hat_eval(doc.cosheaf, u).group.iso_class())}};
    for (int x : u.members()) j["open"].push_back(doc.poset.name(x));
    out << j.dump(2) << "\n";
    return 0;
  }
  if (*example) {
    if (example_name != "paper-kernel")
      throw input_error("example: unknown example '" + example_name +
                        "' (available: paper-kernel)");
    return run_kernel_example(out);
  }
  if (*fuzz) {
    if (count < 0) {
      count = 25;
      if (const char* env = std::getenv("COSHOM_FUZZ_COUNT")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed <= 0)
          throw input_error("COSHOM_FUZZ_COUNT must be a positive integer");
        count = static_cast<int>(parsed);
      }
    }
    CorpusOutcome o = run_crosscheck_corpus(seed, count);
    out << json{{"seed", seed},
                {"instances", o.instances},
                {"failures", o.failures},
                {"first_failure", o.first_failure}}
               .dump(2)
        << "\n";
    if (o.failures > 0) {
      emit_error(err, "mismatch", o.first_failure);
      return 3;
    }
    return 0;
  }
  return 0;  // unreachable: require_subcommand(1)
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const input_error& e) {
    emit_error(err, "input", e.what());
    return 1;
  } catch (const contract_error& e) {
    emit_error(err, "contract", e.what());
    return 2;
  }
}

}  // namespace coshom
