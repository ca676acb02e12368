#include <coshom/poset.hpp>

#include <coshom/errors.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace coshom {

struct FinPoset::Impl {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<boost::dynamic_bitset<>> up;  // up[x] = {y : y >= x}
  std::vector<std::pair<int, int>> covers;  // (upper, lower)
};

FinPoset FinPoset::make(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& hasse) {
  auto impl = std::make_shared<Impl>();
  const int n = static_cast<int>(elements.size());
  for (int i = 0; i < n; ++i) {
    if (!impl->index.emplace(elements[i], i).second)
      throw input_error("poset: duplicate element '" + elements[i] + "'");
  }
  impl->names = std::move(elements);

  auto lookup = [&](const std::string& s) {
    auto it = impl->index.find(s);
    if (it == impl->index.end()) throw input_error("poset: unknown element '" + s + "'");
    return it->second;
  };

  std::vector<std::vector<int>> below(n);  // direct successors downward
  for (const auto& [upper, lower] : hasse) {
    int u = lookup(upper), l = lookup(lower);
    if (u == l) throw input_error("poset: element '" + upper + "' related below itself");
    below[u].push_back(l);
  }

  // Reachability downward with cycle detection (0 new, 1 active, 2 done).
  std::vector<int> state(n, 0);
  std::vector<boost::dynamic_bitset<>> down(n, boost::dynamic_bitset<>(n));
  auto dfs = [&](auto&& self, int x) -> void {
    state[x] = 1;
    down[x].set(x);
    for (int y : below[x]) {
      if (state[y] == 1) throw input_error("poset: order relation contains a cycle");
      if (state[y] == 0) self(self, y);
      down[x] |= down[y];
    }
    state[x] = 2;
  };
  for (int x = 0; x < n; ++x)
    if (state[x] == 0) dfs(dfs, x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && down[x].test(y) && down[y].test(x))
        throw input_error("poset: order relation contains a cycle");

  impl->up.assign(n, boost::dynamic_bitset<>(n));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (down[y].test(x)) impl->up[x].set(y);

  // Transitive reduction, recomputed from the closure so redundant input
  // pairs disappear.
  for (int u = 0; u < n; ++u)
    for (int l = 0; l < n; ++l) {
      if (u == l || !down[u].test(l)) continue;
      bool direct = true;
      for (int z = 0; z < n && direct; ++z)
        if (z != u && z != l && down[u].test(z) && down[z].test(l)) direct = false;
      if (direct) impl->covers.push_back({u, l});
    }
  std::sort(impl->covers.begin(), impl->covers.end());

  FinPoset p;
  p.impl_ = std::move(impl);
  return p;
}

int FinPoset::size() const { return impl_ ? static_cast<int>(impl_->names.size()) : 0; }

const std::vector<std::string>& FinPoset::elements() const { return impl_->names; }

const std::string& FinPoset::name(int i) const { return impl_->names.at(i); }

int FinPoset::index_of(const std::string& element) const {
  auto it = impl_->index.find(element);
  if (it == impl_->index.end())
    throw input_error("poset: unknown element '" + element + "'");
  return it->second;
}

bool FinPoset::has_element(const std::string& element) const {
  return impl_ && impl_->index.count(element) > 0;
}

bool FinPoset::leq(int x, int y) const { return impl_->up[x].test(y); }

const std::vector<std::pair<int, int>>& FinPoset::cover_pairs() const { return impl_->covers; }

std::vector<int> FinPoset::minimal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool minimal = true;
    for (int y = 0; y < size() && minimal; ++y)
      if (y != x && leq(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

std::vector<int> FinPoset::maximal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool maximal = true;
    for (int y = 0; y < size() && maximal; ++y)
      if (y != x && leq(x, y)) maximal = false;
    if (maximal) out.push_back(x);
  }
  return out;
}

OpenSet FinPoset::principal_open(int x) const {
  if (x < 0 || x >= size()) throw input_error("poset: element index out of range");
  return OpenSet(*this, impl_->up[x]);
}

OpenSet FinPoset::principal_open(const std::string& element) const {
  return principal_open(index_of(element));
}

OpenSet FinPoset::empty_open() const {
  return OpenSet(*this, boost::dynamic_bitset<>(size()));
}

OpenSet FinPoset::full_open() const {
  boost::dynamic_bitset<> bits(size());
  bits.set();
  return OpenSet(*this, std::move(bits));
}

OpenSet FinPoset::up_closure(const std::vector<int>& members) const {
  boost::dynamic_bitset<> bits(size());
  for (int x : members) {
    if (x < 0 || x >= size()) throw input_error("poset: element index out of range");
    bits |= impl_->up[x];
  }
  return OpenSet(*this, std::move(bits));
}

OpenSet FinPoset::make_open(const std::vector<int>& members) const {
  boost::dynamic_bitset<> bits(size());
  for (int x : members) {
    if (x < 0 || x >= size()) throw input_error("poset: element index out of range");
    bits.set(x);
  }
  for (int x = 0; x < size(); ++x)
    if (bits.test(x) && !impl_->up[x].is_subset_of(bits))
      throw input_error("open set: '" + name(x) + "' is included without everything above it");
  return OpenSet(*this, std::move(bits));
}

std::vector<OpenSet> FinPoset::enumerate_opens(int cap) const {
  const int n = size();
  std::set<boost::dynamic_bitset<>> seen;
  std::vector<boost::dynamic_bitset<>> frontier;
  seen.insert(boost::dynamic_bitset<>(n));
  frontier.push_back(boost::dynamic_bitset<>(n));
  while (!frontier.empty()) {
    boost::dynamic_bitset<> u = std::move(frontier.back());
    frontier.pop_back();
    for (int x = 0; x < n; ++x) {
      if (u.test(x)) continue;
      boost::dynamic_bitset<> above = impl_->up[x];
      above.reset(x);
      if (!above.is_subset_of(u)) continue;
      boost::dynamic_bitset<> bigger = u;
      bigger.set(x);
      if (seen.insert(bigger).second) {
        if (static_cast<int>(seen.size()) > cap)
          throw input_error("open lattice too large (more than " + std::to_string(cap) +
                            " open sets)");
        frontier.push_back(std::move(bigger));
      }
    }
  }
  std::vector<OpenSet> out;
  out.reserve(seen.size());
  for (const auto& bits : seen) out.push_back(OpenSet(*this, bits));
  return out;
}

bool FinPoset::same_as(const FinPoset& o) const {
  if (impl_ == o.impl_) return true;
  if (!impl_ || !o.impl_) return size() == o.size() && size() == 0;
  return impl_->names == o.impl_->names && impl_->up == o.impl_->up;
}

std::vector<int> OpenSet::members() const {
  std::vector<int> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
       i = bits_.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

bool OpenSet::operator==(const OpenSet& o) const {
  return poset_.same_as(o.poset_) && bits_ == o.bits_;
}

bool OpenSet::operator<(const OpenSet& o) const {
  if (bits_.size() != o.bits_.size()) return bits_.size() < o.bits_.size();
  return bits_ < o.bits_;
}

bool OpenSet::subset_of(const OpenSet& o) const {
  if (!poset_.same_as(o.poset_)) throw input_error("open sets live over different posets");
  return bits_.is_subset_of(o.bits_);
}

std::string OpenSet::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int x : members()) {
    if (!first) os << ",";
    first = false;
    os << poset_.name(x);
  }
  os << "}";
  return os.str();
}

OpenSet intersect(const OpenSet& u, const OpenSet& v) {
  if (!u.poset_.same_as(v.poset_)) throw input_error("open sets live over different posets");
  return OpenSet(u.poset_, u.bits_ & v.bits_);
}

OpenSet unite(const OpenSet& u, const OpenSet& v) {
  if (!u.poset_.same_as(v.poset_)) throw input_error("open sets live over different posets");
  return OpenSet(u.poset_, u.bits_ | v.bits_);
}

struct SimplicialComplex::Impl {
  std::vector<std::string> vertices;
  std::vector<std::vector<int>> simplices;
  std::map<std::vector<int>, int> position;
  FinPoset face_poset;
};

SimplicialComplex SimplicialComplex::make(
    std::vector<std::string> vertices,
    const std::vector<std::vector<std::string>>& simplices) {
  auto impl = std::make_shared<Impl>();
  std::map<std::string, int> vindex;
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (!vindex.emplace(vertices[i], static_cast<int>(i)).second)
      throw input_error("complex: duplicate vertex '" + vertices[i] + "'");
  }
  impl->vertices = std::move(vertices);

  std::set<std::vector<int>> closed;
  for (size_t i = 0; i < impl->vertices.size(); ++i) closed.insert({static_cast<int>(i)});
  for (const auto& s : simplices) {
    if (s.empty()) throw input_error("complex: empty simplex");
    std::vector<int> idx;
    for (const auto& v : s) {
      auto it = vindex.find(v);
      if (it == vindex.end()) throw input_error("complex: unknown vertex '" + v + "'");
      idx.push_back(it->second);
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw input_error("complex: repeated vertex within one simplex");
    // Close under faces: every nonempty subset.
    const int k = static_cast<int>(idx.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> face;
      for (int b = 0; b < k; ++b)
        if (mask >> b & 1) face.push_back(idx[b]);
      closed.insert(std::move(face));
    }
  }

  impl->simplices.assign(closed.begin(), closed.end());
  std::sort(impl->simplices.begin(), impl->simplices.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (size_t i = 0; i < impl->simplices.size(); ++i)
    impl->position[impl->simplices[i]] = static_cast<int>(i);

  // Face poset element names: vertex names joined by a separator that occurs
  // in none of them (iterated constructions stack separators).
  std::string sep;
  for (const char* cand : {",", "|", "/", ";", ":", "~"}) {
    bool clean = true;
    for (const auto& v : impl->vertices)
      if (v.find(cand) != std::string::npos) clean = false;
    if (clean) {
      sep = cand;
      break;
    }
  }
  if (sep.empty()) throw input_error("complex: vertex names exhaust every separator");

  std::vector<std::string> names;
  names.reserve(impl->simplices.size());
  for (const auto& s : impl->simplices) {
    std::string name;
    for (size_t i = 0; i < s.size(); ++i) {
      if (i) name += sep;
      name += impl->vertices[s[i]];
    }
    names.push_back(std::move(name));
  }

  std::vector<std::pair<std::string, std::string>> hasse;
  for (const auto& s : impl->simplices) {
    if (s.size() < 2) continue;
    const std::string& upper = names[impl->position.at(s)];
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> face;
      for (size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      hasse.push_back({upper, names[impl->position.at(face)]});
    }
  }
  impl->face_poset = FinPoset::make(names, hasse);

  SimplicialComplex k;
  k.impl_ = std::move(impl);
  return k;
}

const std::vector<std::string>& SimplicialComplex::vertices() const { return impl_->vertices; }

const std::vector<std::vector<int>>& SimplicialComplex::simplices() const {
  return impl_->simplices;
}

int SimplicialComplex::dim() const {
  if (!impl_ || impl_->simplices.empty()) return -1;
  return static_cast<int>(impl_->simplices.back().size()) - 1;
}

const FinPoset& SimplicialComplex::face_poset() const { return impl_->face_poset; }

int SimplicialComplex::poset_index(const std::vector<int>& simplex) const {
  auto it = impl_->position.find(simplex);
  if (it == impl_->position.end()) throw input_error("complex: no such simplex");
  return it->second;
}

const std::vector<int>& SimplicialComplex::simplex_of(int poset_element) const {
  return impl_->simplices.at(poset_element);
}

SimplicialComplex order_complex(const FinPoset& p) {
  const int n = p.size();
  std::vector<std::vector<int>> chains;
  std::vector<int> current;
  auto extend = [&](auto&& self, int next_min) -> void {
    for (int x = next_min; x < n; ++x) {
      bool comparable = true;
      for (int y : current)
        if (!p.leq(x, y) && !p.leq(y, x)) {
          comparable = false;
          break;
        }
      if (!comparable) continue;
      current.push_back(x);
      chains.push_back(current);
      self(self, x + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);

  std::vector<std::vector<std::string>> named;
  named.reserve(chains.size());
  for (const auto& c : chains) {
    std::vector<std::string> s;
    for (int x : c) s.push_back(p.name(x));
    named.push_back(std::move(s));
  }
  return SimplicialComplex::make(p.elements(), named);
}

Cover make_cover(std::vector<OpenSet> opens, OpenSet universe) {
  OpenSet acc = universe.poset().empty_open();
  for (const auto& u : opens) acc = unite(acc, u);
  if (!(acc == universe))
    throw input_error("cover: the opens do not union to the covered set");
  return Cover{std::move(opens), std::move(universe)};
}

Cover star_cover(const FinPoset& p) {
  std::vector<OpenSet> opens;
  for (int x : p.minimal_elements()) opens.push_back(p.principal_open(x));
  return make_cover(std::move(opens), p.full_open());
}

std::vector<NerveCell> nerve_intersections(const Cover& c) {
  std::vector<NerveCell> out;
  const int n = static_cast<int>(c.opens.size());
  std::vector<int> tuple;
  auto walk = [&](auto&& self, int next, const OpenSet& inter) -> void {
    for (int i = next; i < n; ++i) {
      OpenSet deeper = intersect(inter, c.opens[i]);
      if (deeper.empty()) continue;
      tuple.push_back(i);
      out.push_back(NerveCell{tuple, deeper});
      self(self, i + 1, deeper);
      tuple.pop_back();
    }
  };
  if (n > 0) walk(walk, 0, c.universe.poset().full_open());
  return out;
}

}  // namespace coshom
