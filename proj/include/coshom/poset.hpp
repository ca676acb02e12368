#pragma once

#include <boost/dynamic_bitset.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace coshom {

class OpenSet;

/// Finite poset with elements identified by opaque strings.  The stored
/// covering pairs are always the transitive reduction of the order, whatever
/// the caller supplied.  Opens are up-closed subsets: the smallest open
/// containing x is {y : y >= x}, and structure maps of cosheaves later run
/// from upper elements to lower ones, making x terminal inside its own
/// principal open.  Immutable and cheap to copy.
class FinPoset {
 public:
  FinPoset() = default;  // empty poset

  /// Validates and closes: `hasse` pairs are (upper, lower).  Rejects
  /// duplicate identifiers, unknown names, and cycles.  Redundant (already
  /// implied) pairs are accepted and reduced away.
  static FinPoset make(std::vector<std::string> elements,
                       const std::vector<std::pair<std::string, std::string>>& hasse);

  int size() const;
  const std::vector<std::string>& elements() const;
  const std::string& name(int i) const;
  int index_of(const std::string& element) const;  // throws on unknown name
  bool has_element(const std::string& element) const;

  bool leq(int x, int y) const;  // x <= y
  /// Transitive reduction as (upper, lower) index pairs, lexicographic order.
  const std::vector<std::pair<int, int>>& cover_pairs() const;
  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;

  OpenSet principal_open(int x) const;
  OpenSet principal_open(const std::string& element) const;
  OpenSet empty_open() const;
  OpenSet full_open() const;
  /// Smallest open containing the given elements.
  OpenSet up_closure(const std::vector<int>& members) const;
  /// Open with exactly these members; throws if the set is not up-closed.
  OpenSet make_open(const std::vector<int>& members) const;

  /// Every up-closed subset.  Throws "open lattice too large" once the count
  /// exceeds `cap`; antichains make the count exponential.
  std::vector<OpenSet> enumerate_opens(int cap = 4096) const;

  /// Same poset: shared representation, or equal elements with equal order.
  bool same_as(const FinPoset& o) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  friend class OpenSet;
};

/// Up-closed subset of a fixed poset.  Carries its ambient poset; binary
/// operations insist the ambients agree.
class OpenSet {
 public:
  OpenSet() = default;

  const FinPoset& poset() const { return poset_; }
  bool contains(int x) const { return bits_.test(x); }
  bool empty() const { return bits_.none(); }
  int count() const { return static_cast<int>(bits_.count()); }
  std::vector<int> members() const;  // ascending indices

  bool operator==(const OpenSet& o) const;
  bool operator<(const OpenSet& o) const;  // arbitrary total order, for map keys
  bool subset_of(const OpenSet& o) const;

  std::string to_string() const;  // "{a,b}" with member names

 private:
  friend class FinPoset;
  friend OpenSet intersect(const OpenSet&, const OpenSet&);
  friend OpenSet unite(const OpenSet&, const OpenSet&);

  OpenSet(FinPoset p, boost::dynamic_bitset<> bits)
      : poset_(std::move(p)), bits_(std::move(bits)) {}

  FinPoset poset_;
  boost::dynamic_bitset<> bits_;
};

OpenSet intersect(const OpenSet& u, const OpenSet& v);
OpenSet unite(const OpenSet& u, const OpenSet& v);

/// Finite abstract simplicial complex over an ordered vertex set.  Simplices
/// are stored as sorted vertex-index vectors in a canonical order (dimension,
/// then lexicographic); the fixed vertex order drives every sign convention.
/// Construction closes the input under faces and includes a 0-simplex for
/// each listed vertex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  static SimplicialComplex make(std::vector<std::string> vertices,
                                const std::vector<std::vector<std::string>>& simplices);

  const std::vector<std::string>& vertices() const;
  const std::vector<std::vector<int>>& simplices() const;
  int dim() const;  // -1 when empty

  /// Poset of simplices ordered by inclusion (face below coface), so the
  /// principal open of a simplex is its open star.  Element names join the
  /// vertex names with a separator not occurring in them.  Cached.
  const FinPoset& face_poset() const;
  /// Index in face_poset() of a simplex given by sorted vertex indices.
  int poset_index(const std::vector<int>& simplex) const;
  /// Sorted vertex indices of the simplex behind a face_poset element.
  const std::vector<int>& simplex_of(int poset_element) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Simplices are the chains of P: vertices = elements, one simplex per
/// nonempty totally ordered subset.
SimplicialComplex order_complex(const FinPoset& p);

/// Finite ordered open cover of `universe`; index order fixes sign
/// conventions downstream.
struct Cover {
  std::vector<OpenSet> opens;
  OpenSet universe;
};

/// Validates that the opens share an ambient poset and union to `universe`.
Cover make_cover(std::vector<OpenSet> opens, OpenSet universe);

/// Principal opens of the minimal elements; always covers the whole poset.
Cover star_cover(const FinPoset& p);

struct NerveCell {
  std::vector<int> indices;  // strictly increasing cover indices
  OpenSet intersection;      // nonempty by construction
};

/// All strictly increasing index tuples with nonempty intersection, in
/// depth-first (lexicographic) order, each with its intersection.
std::vector<NerveCell> nerve_intersections(const Cover& c);

}  // namespace coshom
