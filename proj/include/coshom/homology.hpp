#pragma once

#include <coshom/abgroup.hpp>
#include <coshom/cosheaf.hpp>
#include <coshom/poset.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace coshom {

/// Non-negatively graded chain complex of presented groups.  Construction
/// verifies that consecutive boundaries compose to zero; every verified
/// square bumps a process-wide counter so a run can prove the checks fired.
class ChainComplex {
 public:
  ChainComplex() = default;  // the zero complex

  /// groups[n] sits in degree n; boundaries[n-1] maps degree n to n-1, so
  /// there must be exactly one fewer boundary than groups (none for a
  /// single degree).
  static ChainComplex make(std::vector<AbGroup> groups, std::vector<AbHom> boundaries);

  int top_degree() const;                // -1 for the zero complex
  const AbGroup& group(int n) const;     // trivial beyond the top degree
  const AbHom& boundary(int n) const;    // 1 <= n <= top_degree

  /// Number of boundary squares verified to compose to zero since the
  /// process started.
  static long verified_squares();

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Which pipeline produced a homology report.
enum class Pipeline { bm, cech, derived };

std::string pipeline_name(Pipeline t);

struct HomologyReport {
  Pipeline tag = Pipeline::bm;
  std::vector<IsoClass> classes;  // index = degree

  IsoClass class_at(int n) const;  // trivial outside the stored range
  int top_degree() const { return static_cast<int>(classes.size()) - 1; }
};

/// Degree-wise homology of a verified complex.
HomologyReport homology(const ChainComplex& c, Pipeline tag);

/// Signs [s:t] for the codimension-one faces of each simplex: deleting the
/// i-th vertex (in the fixed vertex order) contributes (-1)^i.  Construction
/// checks that the signs cancel along every codimension-two flag.
class OrderedIncidence {
 public:
  explicit OrderedIncidence(const SimplicialComplex& k);

  /// sigma and tau are face-poset indices with tau a codimension-one face.
  int sign(int sigma, int tau) const;

 private:
  std::map<std::pair<int, int>, int> signs_;
};

/// Chain complex of the complex's cells with coefficients in f: degree n is
/// the sum of f over the n-simplices, and the boundary applies structure
/// maps with incidence signs.
ChainComplex bm_complex(const SimplicialComplex& k, const CellularCosheaf& f);

/// Values and extension maps indexed by open sets, as the Cech construction
/// consumes them.  extension(v, u) maps the value at v into the value at u
/// for v inside u.
class OpenEvaluator {
 public:
  virtual ~OpenEvaluator() = default;
  virtual AbGroup value(const OpenSet& u) = 0;
  virtual AbHom extension(const OpenSet& v, const OpenSet& u) = 0;
};

/// Evaluation of a cosheaf, memoized; safe to share across threads.
class HatEvaluator final : public OpenEvaluator {
 public:
  explicit HatEvaluator(CellularCosheaf f);
  AbGroup value(const OpenSet& u) override;
  AbHom extension(const OpenSet& v, const OpenSet& u) override;

 private:
  const Colimit& colim(const OpenSet& u);
  CellularCosheaf f_;
  std::mutex mu_;
  std::map<OpenSet, Colimit> memo_;
};

/// Reads a stored table; missing entries surface as input errors.
class TableEvaluator final : public OpenEvaluator {
 public:
  explicit TableEvaluator(PrecosheafTable t);
  AbGroup value(const OpenSet& u) override;
  AbHom extension(const OpenSet& v, const OpenSet& u) override;

 private:
  PrecosheafTable t_;
};

/// Cech complex of a cover: degree n sums the values on the intersections of
/// strictly increasing (n+1)-tuples of cover members, and the boundary
/// alternates the delete-one-index extension maps.
ChainComplex cech_complex(const Cover& c, OpenEvaluator& t);

/// Cech homology of the vertex-star cover with evaluated coefficients.
HomologyReport vertex_cover_cech(const SimplicialComplex& k, const CellularCosheaf& f);

/// Coefficients for the barycentric subdivision: a chain's value is the value
/// at its top element; dropping a lower vertex is the identity and dropping
/// the top applies the structure map.  Lives on the face poset of
/// order_complex(p).
CellularCosheaf delta_cosheaf(const FinPoset& p, const CellularCosheaf& f);

/// Truncated resolution by sums of down-set blocks.  stages[0] covers the
/// target via maps[0]; each later stage covers the kernel of the previous
/// map, composed back into the previous stage.  Exactness at every value is
/// certified through depth-1 during construction.
struct Resolution {
  CellularCosheaf target;
  std::vector<CellularCosheaf> stages;  // size depth+1
  std::vector<NatTrans> maps;           // maps[0]: stages[0] -> target, maps[n]: stages[n] -> stages[n-1]
  std::vector<std::vector<std::pair<int, int>>> summands;  // (element, rank) blocks per stage
  int depth = 0;
};

/// element_order permutes which block comes first inside every stage; the
/// default is ascending element index.  Homology read off the resolution is
/// independent of that choice.
Resolution projective_resolution(const CellularCosheaf& f, int depth);
Resolution projective_resolution(const CellularCosheaf& f, int depth,
                                 const std::vector<int>& element_order);

/// Homology of the resolution evaluated on the whole space, reported in
/// degrees 0..depth-1 (degree depth is cut off by the truncation).
HomologyReport derived_homology(const CellularCosheaf& f, int depth);
HomologyReport derived_homology(const CellularCosheaf& f, int depth,
                                const std::vector<int>& element_order);

/// The three pipelines plus the barycentric subdivision run on one input,
/// with the degreewise verdict.  The four computations share nothing and run
/// concurrently; the record is deterministic regardless of scheduling.
struct CrosscheckRecord {
  HomologyReport bm;
  HomologyReport cech;
  HomologyReport derived;
  HomologyReport subdivided;
  bool agree = false;
  int first_mismatch = -1;  // lowest disagreeing degree, -1 when all agree
  std::string note;         // classes at the first mismatch, empty when all agree
};

CrosscheckRecord crosscheck(const SimplicialComplex& k, const CellularCosheaf& f);

}  // namespace coshom
