#pragma once

#include <coshom/intmat.hpp>

#include <memory>
#include <string>
#include <vector>

namespace coshom {

/// Isomorphism type of a finitely generated abelian group: free rank plus
/// torsion coefficients d_i >= 2 with d_i | d_{i+1}.  Two groups are
/// isomorphic iff these match, so every isomorphism claim in the toolkit
/// bottoms out in comparing IsoClass values.
struct IsoClass {
  int free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const IsoClass&) const = default;
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;  // e.g. "Z^2 + Z/4", "0" when trivial
};

/// Finitely generated abelian group carried as a presentation: the group is
/// Z^gens modulo the column lattice of `relations`.  Presentations are never
/// eagerly normalized; IsoClass is computed (and cached) only when compared.
/// Immutable and cheap to copy.
class AbGroup {
 public:
  AbGroup();  // trivial group (zero generators)
  AbGroup(int gens, IntMatrix relations);

  static AbGroup free_group(int rank);
  static AbGroup cyclic(const Int& order);  // order 0 gives the infinite cyclic group

  int gens() const;
  const IntMatrix& relations() const;
  const IsoClass& iso_class() const;
  bool is_trivial() const { return iso_class().is_trivial(); }

  /// True iff v (length = gens) lies in the relation lattice, i.e. represents
  /// zero in the group.  Reuses one cached Smith reduction across queries.
  bool represents_zero(const IntVec& v) const;

  /// Structural equality: same generator count and same relation matrix.
  /// This is identity of presentations, not isomorphism.
  bool operator==(const AbGroup& o) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

class AbHom;

namespace detail {
/// Constructs a homomorphism without the well-definedness check.  Callers
/// must guarantee matrix * (each source relation) lies in the target lattice.
AbHom unchecked_hom(AbGroup source, AbGroup target, IntMatrix matrix);
}  // namespace detail

/// Homomorphism between presented groups.  Column j of the matrix is the
/// image of source generator j written in target generators; matrices act on
/// the left of column vectors.
class AbHom {
 public:
  AbHom() = default;  // empty shell; assign a real hom before use

  const AbGroup& source() const { return src_; }
  const AbGroup& target() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }

  /// Image of a representative vector (length = source gens).
  IntVec apply(const IntVec& x) const { return m_.apply(x); }

  /// True iff this equals the zero homomorphism.
  bool is_zero() const;

 private:
  AbHom(AbGroup src, AbGroup tgt, IntMatrix m);
  friend AbHom detail::unchecked_hom(AbGroup, AbGroup, IntMatrix);

  AbGroup src_, tgt_;
  IntMatrix m_;
};

/// Validated construction: checks dimensions and that every source relation
/// maps into the target relation lattice.  Rejections name the offending
/// relation column.
AbHom make_hom(AbGroup source, AbGroup target, IntMatrix matrix);

AbHom zero_hom(AbGroup source, AbGroup target);
AbHom identity_hom(AbGroup g);

/// Equality as homomorphisms: same endpoints and the difference kills every
/// source generator in the target group.
bool hom_equal(const AbHom& f, const AbHom& g);

/// g after f.  The composite of well-defined homs is well-defined.
AbHom compose(const AbHom& g, const AbHom& f);

struct DirectSum {
  AbGroup group;
  std::vector<AbHom> injections;  // one per summand
  std::vector<int> offsets;       // generator offset of each summand block
};
DirectSum direct_sum(const std::vector<AbGroup>& parts);

/// Kernel as a presented group with its inclusion.  The inclusion matrix
/// columns generate exactly the preimage of the target relation lattice.
struct Kernel {
  AbGroup group;
  AbHom incl;
};
Kernel kernel(const AbHom& f);

/// Cokernel: target generators, target relations plus the image columns.
struct Cokernel {
  AbGroup group;
  AbHom proj;
};
Cokernel cokernel(const AbHom& f);

/// Image of f as a subgroup of the target (kernel of the cokernel projection).
struct Image {
  AbGroup group;
  AbHom incl;
};
Image image(const AbHom& f);

/// ker(g)/im(f) for a composable pair with g∘f = 0; throws contract_error
/// when the pair does not compose to zero.
IsoClass homology_at(const AbHom& f, const AbHom& g);

/// True iff f has trivial kernel and trivial cokernel.
bool is_isomorphism(const AbHom& f);

/// Isomorphic copy with the fewest generators (free rank + torsion count),
/// together with mutually inverse change-of-presentation maps.
struct Minimized {
  AbGroup group;
  AbHom to;    // original -> minimized
  AbHom from;  // minimized -> original
};
Minimized minimize_presentation(const AbGroup& g);

}  // namespace coshom
