#pragma once

#include <coshom/cosheaf.hpp>
#include <coshom/homology.hpp>

#include <string>

namespace coshom {

/// Parsed toolkit input: a base space together with a validated cosheaf on
/// its cell poset.  For simplicial documents the poset is the face poset of
/// the complex; for poset documents it is the poset itself.
struct InputDocument {
  bool simplicial = false;
  SimplicialComplex complex;  // meaningful only when `simplicial`
  FinPoset poset;
  CellularCosheaf cosheaf;
};

/// Parse a JSON document.  Two kinds:
///   {"kind": "simplicial-complex", "vertices": [...], "simplices": [[...]], ...}
///   {"kind": "poset", "elements": [...], "hasse": [["upper","lower"], ...], ...}
/// both followed by
///   "groups": {element: {"gens": g, "relations": [[...]]}}   (relations optional)
///   "maps":   {"upper>lower": [[...]]}                       (one per covering pair)
/// Matrices are arrays of rows; a map matrix has one column per generator of
/// the upper group and one row per generator of the lower one.  Matrix
/// entries may be JSON integers or decimal strings (for values beyond 2^53).
/// For simplicial documents the group/map keys use face-poset element names
/// (vertex names joined by the poset's separator character).  Throws
/// input_error with line/field context on malformed input; the returned
/// cosheaf has passed full functoriality validation.
InputDocument parse_document(const std::string& text);

/// Read a file and parse it; an unreadable file is an input_error.
InputDocument load_document(const std::string& path);

/// {"pipeline": name, "H": [{"degree": n, "rank": r, "torsion": [d...]}, ...]}
/// with torsion coefficients as decimal strings.  Deterministic (keys sorted,
/// two-space indent); parse and emit are mutually inverse.
std::string report_to_json(const HomologyReport& r);
HomologyReport report_from_json(const std::string& text);

/// {"agree": bool, "first_mismatch": n, "note": s, "reports": {"bm": ...,
/// "cech": ..., "derived": ..., "subdivision": ...}} with each report in the
/// report_to_json shape.
std::string crosscheck_to_json(const CrosscheckRecord& r);
CrosscheckRecord crosscheck_from_json(const std::string& text);

}  // namespace coshom
