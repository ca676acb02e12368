#pragma once

#include <coshom/abgroup.hpp>
#include <coshom/poset.hpp>

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace coshom {

/// Cosheaf of abelian groups on the cells of a finite poset: one group per
/// element, one structure map per covering pair running from the upper
/// element to the lower one.  Construction validates endpoints and path
/// independence (every two chains between comparable elements compose to
/// equal maps), then caches all composite maps.  Immutable, cheap to copy.
class CellularCosheaf {
 public:
  CellularCosheaf() = default;

  /// `maps` is keyed by covering pairs (upper, lower) of `base`; exactly the
  /// covering pairs must be present.  Throws input_error on shape problems
  /// and on non-commuting diamonds (the message names the two chains).
  static CellularCosheaf make(FinPoset base, std::vector<AbGroup> groups,
                              const std::map<std::pair<int, int>, AbHom>& maps);

  const FinPoset& base() const;
  const AbGroup& at(int x) const;
  /// Composite structure map for any comparable pair upper >= lower
  /// (identity when equal).  Cached at construction.
  const AbHom& structure_map(int upper, int lower) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Constant cosheaf: the same group everywhere, identities on every pair.
CellularCosheaf constant_cosheaf(const FinPoset& p, const AbGroup& a);

/// Value A on the down-set {y : y <= x} with identity maps inside, trivial
/// groups outside.  These are the projective building blocks: evaluating on
/// an open U collapses to A when x is a member and to 0 otherwise.
CellularCosheaf skyscraper(const FinPoset& p, int x, const AbGroup& a);

/// Pointwise direct sum; all parts must share a base.
CellularCosheaf direct_sum_cosheaf(const std::vector<CellularCosheaf>& parts);

/// Presented colimit of the restriction of a cosheaf to a subset of the base
/// (any subset; the diagram is the induced subposet).  Generators are the
/// summed generators of the member groups; relations identify each upper
/// generator with its image below, one block per covering pair of the
/// induced order.
struct Colimit {
  AbGroup group;
  std::vector<int> elements;      // ascending member indices
  std::vector<int> offsets;       // generator offset per member
  std::vector<AbHom> injections;  // cocone legs, parallel to `elements`
};
Colimit colim_over(const CellularCosheaf& f, const std::vector<int>& elements);

/// The cosheaf associated to F evaluated on an open: the colimit of F over
/// the members of U.  On a principal open this collapses to the group at the
/// generating element (costalks need no extra computation).
Colimit hat_eval(const CellularCosheaf& f, const OpenSet& u);

/// Canonical map between colimits over nested subsets (every element of the
/// small diagram must appear in the large one).
AbHom colimit_extension(const Colimit& small, const Colimit& large);

/// Canonical map between evaluations on nested opens, V inside U.
AbHom hat_extend(const CellularCosheaf& f, const OpenSet& v, const OpenSet& u);

/// Natural transformation between cosheaves on one base, stored by
/// components on elements only; construction checks every naturality square.
class NatTrans {
 public:
  NatTrans() = default;

  static NatTrans make(CellularCosheaf source, CellularCosheaf target,
                       std::vector<AbHom> components);

  const CellularCosheaf& source() const;
  const CellularCosheaf& target() const;
  const AbHom& component(int x) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Induced map on evaluations over an open, assembled from the components.
AbHom hat_map(const NatTrans& a, const OpenSet& u);

/// Zero and identity transformations.
NatTrans zero_nat(const CellularCosheaf& source, const CellularCosheaf& target);
NatTrans identity_nat(const CellularCosheaf& f);

/// Pointwise kernel of a transformation, with compressed presentations and
/// the inclusion back into the source.  Structure maps are the restrictions
/// of the source's maps; naturality makes them land in the kernels, and the
/// construction re-verifies that (contract_error on failure).
struct KernelCosheaf {
  CellularCosheaf cosheaf;
  NatTrans incl;
};
KernelCosheaf kernel_functor(const NatTrans& a);

/// Pointwise cokernel with the projection from the target.  Always functorial;
/// presentations are compressed.
struct CokernelCosheaf {
  CellularCosheaf cosheaf;
  NatTrans proj;
};
CokernelCosheaf cokernel_functor(const NatTrans& a);

/// Pointwise composition g after f.
NatTrans compose(const NatTrans& g, const NatTrans& f);

/// The transformation out of skyscraper(base, x, h.source()) determined by
/// h into the value at x: below x it is the structure map from x composed
/// with h, elsewhere zero.  h must land in target's value at x; any h from a
/// free group is automatically valid, which is what makes these the
/// projective building blocks.
NatTrans point_transformation(const CellularCosheaf& target, int x, const AbHom& h);

/// Combine transformations with a common target into one map out of the
/// direct sum of their sources.
NatTrans sum_transformations(const std::vector<NatTrans>& parts);

/// Explicit table of values on opens with extension maps along inclusions.
/// May be partial; validation checks endpoints, stored identities, and
/// composition over every stored triple.  Immutable.
class PrecosheafTable {
 public:
  PrecosheafTable() = default;

  struct Entries {
    std::map<OpenSet, AbGroup> values;
    std::map<std::pair<OpenSet, OpenSet>, AbHom> extends;  // key: (V, U), V inside U
  };
  static PrecosheafTable make(FinPoset base, Entries entries);

  const FinPoset& base() const;
  bool has_value(const OpenSet& u) const;
  const AbGroup& value(const OpenSet& u) const;  // throws when absent
  bool has_extend(const OpenSet& v, const OpenSet& u) const;
  const AbHom& extend(const OpenSet& v, const OpenSet& u) const;
  std::vector<OpenSet> stored_opens() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Table of hat evaluations of a cosheaf on the given opens, with extension
/// maps for every nested pair among them.
PrecosheafTable hat_table(const CellularCosheaf& f, const std::vector<OpenSet>& opens);

/// hat_table on all principal opens.
PrecosheafTable principal_hat_table(const CellularCosheaf& f);

/// Open-level kernel of a transformation as a table: value at U is
/// ker(hat_map(a, U)), extensions are the induced maps.  This is the object
/// that can fail to be a cosheaf even though every costalk behaves.
PrecosheafTable kernel_table(const NatTrans& a, const std::vector<OpenSet>& opens);

/// Does the table satisfy the cosheaf identity for this cover of U?  Builds
/// the colimit over the poset of distinct nonempty intersections and checks
/// the canonical comparison into the stored value at U: `holds` means the
/// isomorphism classes agree and the comparison map is an isomorphism.
/// Missing table entries throw input_error.
struct AxiomCheck {
  bool holds;
  IsoClass nerve_class;
  IsoClass value_class;
};
AxiomCheck cosheaf_axiom_check(const PrecosheafTable& t, const OpenSet& u, const Cover& c);

/// Cosheafification of a table: value at x is the stored value at the
/// principal open of x, structure maps are the stored extensions between
/// principal opens.  Requires those entries; throws input_error otherwise.
CellularCosheaf cosheafify(const PrecosheafTable& t);

/// True iff every extension map between enumerated opens is injective.
/// Enumerates the open lattice, so inherits the cap behavior.
bool is_flasque(const CellularCosheaf& f, int cap = 4096);

}  // namespace coshom
