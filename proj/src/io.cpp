#include <coshom/io.hpp>

#include <coshom/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace coshom {

namespace {

using nlohmann::json;

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(what + ": syntax error at line " +
                      std::to_string(line_of(text, e.byte)));
  }
}

/// Matrix entries may be JSON integers or decimal strings; strings keep
/// values beyond double precision exact.
Int int_entry(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t digits_from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == digits_from) throw input_error(where + ": '" + s + "' is not an integer");
    for (std::size_t i = digits_from; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw input_error(where + ": '" + s + "' is not an integer");
    return Int(s);
  }
  throw input_error(where + ": expected an integer or a decimal string");
}

/// Array-of-rows matrix.  `cols` = -1 accepts any column count.  An empty
/// array stands for whichever degenerate shape fits (no rows, or no columns
/// when the column count is free or zero).
IntMatrix matrix_entry(const json& v, int rows, int cols, const std::string& where) {
  if (!v.is_array()) throw input_error(where + ": expected an array of rows");
  std::vector<std::vector<Int>> parsed;
  for (const auto& row : v) {
    if (!row.is_array()) throw input_error(where + ": each row must be an array");
    std::vector<Int> r;
    for (const auto& e : row) r.push_back(int_entry(e, where));
    parsed.push_back(std::move(r));
  }
  if (parsed.empty()) {
    if (rows == 0) return IntMatrix(0, cols < 0 ? 0 : cols);
    if (cols <= 0) return IntMatrix(rows, 0);
    throw input_error(where + ": expected " + std::to_string(rows) + " rows, got 0");
  }
  if (static_cast<int>(parsed.size()) != rows)
    throw input_error(where + ": expected " + std::to_string(rows) + " rows, got " +
                      std::to_string(parsed.size()));
  const int got_cols = static_cast<int>(parsed[0].size());
  for (const auto& r : parsed)
    if (static_cast<int>(r.size()) != got_cols)
      throw input_error(where + ": rows have unequal lengths");
  if (cols >= 0 && got_cols != cols)
    throw input_error(where + ": expected " + std::to_string(cols) + " columns, got " +
                      std::to_string(got_cols));
  IntMatrix m(rows, got_cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < got_cols; ++j) m.at(i, j) = parsed[i][j];
  return m;
}

std::string string_entry(const json& v, const std::string& where) {
  if (!v.is_string()) throw input_error(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> name_list(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc[field].is_array())
    throw input_error("document: missing \"" + field + "\" array");
  std::vector<std::string> out;
  for (const auto& v : doc[field]) {
    std::string s = string_entry(v, field);
    if (s.find('>') != std::string::npos)
      throw input_error(field + ": name '" + s + "' may not contain '>'");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<AbGroup> parse_groups(const json& doc, const FinPoset& p) {
  if (!doc.contains("groups") || !doc["groups"].is_object())
    throw input_error("document: missing \"groups\" object");
  const json& groups = doc["groups"];
  for (const auto& item : groups.items())
    if (!p.has_element(item.key()))
      throw input_error("groups: unknown element '" + item.key() + "'");
  std::vector<AbGroup> out;
  for (int i = 0; i < p.size(); ++i) {
    const std::string& name = p.name(i);
    if (!groups.contains(name))
      throw input_error("groups: no entry for element '" + name + "'");
    const json& g = groups[name];
    if (!g.is_object() || !g.contains("gens") || !g["gens"].is_number_integer() ||
        g["gens"].get<long long>() < 0)
      throw input_error("groups." + name + ": \"gens\" must be a nonnegative integer");
    const int gens = static_cast<int>(g["gens"].get<long long>());
    IntMatrix rel(gens, 0);
    if (g.contains("relations"))
      rel = matrix_entry(g["relations"], gens, -1, "groups." + name + ".relations");
    out.emplace_back(gens, std::move(rel));
  }
  return out;
}

std::map<std::pair<int, int>, AbHom> parse_maps(const json& doc, const FinPoset& p,
                                                const std::vector<AbGroup>& groups) {
  const auto& pairs = p.cover_pairs();
  std::map<std::pair<int, int>, AbHom> out;
  if (!doc.contains("maps")) {
    if (pairs.empty()) return out;
    throw input_error("document: missing \"maps\" object");
  }
  if (!doc["maps"].is_object()) throw input_error("document: \"maps\" must be an object");
  const json& maps = doc["maps"];
  for (const auto& item : maps.items()) {
    const std::string& key = item.key();
    const std::size_t gt = key.find('>');
    if (gt == std::string::npos || key.find('>', gt + 1) != std::string::npos)
      throw input_error("maps: key '" + key + "' must look like \"upper>lower\"");
    const std::string upper = key.substr(0, gt), lower = key.substr(gt + 1);
    if (!p.has_element(upper)) throw input_error("maps: unknown element '" + upper + "'");
    if (!p.has_element(lower)) throw input_error("maps: unknown element '" + lower + "'");
    const std::pair<int, int> pr{p.index_of(upper), p.index_of(lower)};
    if (std::find(pairs.begin(), pairs.end(), pr) == pairs.end())
      throw input_error("maps: '" + key + "' is not a covering pair");
  }
  for (const auto& pr : pairs) {
    const std::string key = p.name(pr.first) + ">" + p.name(pr.second);
    if (!maps.contains(key))
      throw input_error("maps: no entry for covering pair '" + key + "'");
    IntMatrix m = matrix_entry(maps[key], groups[pr.second].gens(),
                               groups[pr.first].gens(), "maps." + key);
    try {
      out.emplace(pr, make_hom(groups[pr.first], groups[pr.second], std::move(m)));
    } catch (const input_error& e) {
      throw input_error("maps." + key + ": " + e.what());
    }
  }
  return out;
}

json report_json(const HomologyReport& r) {
  json h = json::array();
  for (int n = 0; n <= r.top_degree(); ++n) {
    const IsoClass& c = r.classes[n];
    json torsion = json::array();
    for (const Int& d : c.torsion) torsion.push_back(d.str());
    h.push_back({{"degree", n}, {"rank", c.free_rank}, {"torsion", torsion}});
  }
  return json{{"pipeline", pipeline_name(r.tag)}, {"H", h}};
}

HomologyReport report_from(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("pipeline") || !j.contains("H") || !j["H"].is_array())
    throw input_error(where + ": expected {\"pipeline\", \"H\"}");
  HomologyReport r;
  const std::string tag = string_entry(j["pipeline"], where + ".pipeline");
  bool known = false;
  for (Pipeline t : {Pipeline::bm, Pipeline::cech, Pipeline::derived})
    if (pipeline_name(t) == tag) {
      r.tag = t;
      known = true;
    }
  if (!known) throw input_error(where + ": unknown pipeline '" + tag + "'");
  for (const auto& row : j["H"]) {
    if (!row.is_object() || !row.contains("degree") || !row.contains("rank"))
      throw input_error(where + ".H: each entry needs \"degree\" and \"rank\"");
    if (!row["degree"].is_number_integer() || row["degree"].get<long long>() < 0)
      throw input_error(where + ".H: \"degree\" must be a nonnegative integer");
    if (!row["rank"].is_number_integer() || row["rank"].get<long long>() < 0)
      throw input_error(where + ".H: \"rank\" must be a nonnegative integer");
    const int degree = static_cast<int>(row["degree"].get<long long>());
    IsoClass c;
    c.free_rank = static_cast<int>(row["rank"].get<long long>());
    if (row.contains("torsion")) {
      if (!row["torsion"].is_array())
        throw input_error(where + ".H: \"torsion\" must be an array");
      for (const auto& d : row["torsion"]) {
        Int val = int_entry(d, where + ".H.torsion");
        if (val < 2) throw input_error(where + ".H: torsion entries must be at least 2");
        c.torsion.push_back(std::move(val));
      }
    }
    if (degree >= static_cast<int>(r.classes.size())) r.classes.resize(degree + 1);
    r.classes[degree] = std::move(c);
  }
  return r;
}

}  // namespace

InputDocument parse_document(const std::string& text) {
  const json doc = parse_json(text, "document");
  if (!doc.is_object()) throw input_error("document: expected a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw input_error("document: missing \"kind\"");
  const std::string kind = doc["kind"].get<std::string>();

  InputDocument out;
  if (kind == "simplicial-complex") {
    out.simplicial = true;
    std::vector<std::string> vertices = name_list(doc, "vertices");
    std::vector<std::vector<std::string>> simplices;
    if (doc.contains("simplices")) {
      if (!doc["simplices"].is_array())
        throw input_error("document: \"simplices\" must be an array");
      for (const auto& s : doc["simplices"]) {
        if (!s.is_array()) throw input_error("simplices: each simplex must be an array");
        std::vector<std::string> names;
        for (const auto& v : s) names.push_back(string_entry(v, "simplices"));
        simplices.push_back(std::move(names));
      }
    }
    out.complex = SimplicialComplex::make(std::move(vertices), simplices);
    out.poset = out.complex.face_poset();
  } else if (kind == "poset") {
    std::vector<std::string> elements = name_list(doc, "elements");
    std::vector<std::pair<std::string, std::string>> hasse;
    if (doc.contains("hasse")) {
      if (!doc["hasse"].is_array()) throw input_error("document: \"hasse\" must be an array");
      for (const auto& e : doc["hasse"]) {
        if (!e.is_array() || e.size() != 2)
          throw input_error("hasse: each relation must be a pair [upper, lower]");
        hasse.emplace_back(string_entry(e[0], "hasse"), string_entry(e[1], "hasse"));
      }
    }
    out.poset = FinPoset::make(std::move(elements), hasse);
  } else {
    throw input_error("document: unknown kind '" + kind + "'");
  }

  std::vector<AbGroup> groups = parse_groups(doc, out.poset);
  auto maps = parse_maps(doc, out.poset, groups);
  out.cosheaf = CellularCosheaf::make(out.poset, std::move(groups), maps);
  return out;
}

InputDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string report_to_json(const HomologyReport& r) { return report_json(r).dump(2) + "\n"; }

HomologyReport report_from_json(const std::string& text) {
  return report_from(parse_json(text, "report"), "report");
}

std::string crosscheck_to_json(const CrosscheckRecord& r) {
  json j{{"agree", r.agree},
         {"first_mismatch", r.first_mismatch},
         {"note", r.note},
         {"reports",
          {{"bm", report_json(r.bm)},
           {"cech", report_json(r.cech)},
           {"derived", report_json(r.derived)},
           {"subdivision", report_json(r.subdivided)}}}};
  return j.dump(2) + "\n";
}

CrosscheckRecord crosscheck_from_json(const std::string& text) {
  const json j = parse_json(text, "crosscheck");
  if (!j.is_object() || !j.contains("agree") || !j["agree"].is_boolean() ||
      !j.contains("reports") || !j["reports"].is_object())
    throw input_error("crosscheck: expected {\"agree\", \"first_mismatch\", \"note\", \"reports\"}");
  CrosscheckRecord r;
  r.agree = j["agree"].get<bool>();
  if (j.contains("first_mismatch")) {
    if (!j["first_mismatch"].is_number_integer())
      throw input_error("crosscheck: \"first_mismatch\" must be an integer");
    r.first_mismatch = static_cast<int>(j["first_mismatch"].get<long long>());
  }
  if (j.contains("note")) r.note = string_entry(j["note"], "crosscheck.note");
  const json& reports = j["reports"];
  for (const char* key : {"bm", "cech", "derived", "subdivision"})
    if (!reports.contains(key))
      throw input_error(std::string("crosscheck.reports: missing \"") + key + "\"");
  r.bm = report_from(reports["bm"], "crosscheck.reports.bm");
  r.cech = report_from(reports["cech"], "crosscheck.reports.cech");
  r.derived = report_from(reports["derived"], "crosscheck.reports.derived");
  r.subdivided = report_from(reports["subdivision"], "crosscheck.reports.subdivision");
  return r;
}

}  // namespace coshom
