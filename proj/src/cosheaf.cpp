#include <coshom/cosheaf.hpp>
#include <coshom/errors.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace coshom {

namespace {

std::string chain_string(const FinPoset& p, const std::vector<int>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += " > ";
    out += p.name(chain[i]);
  }
  return out;
}

}  // namespace

struct CellularCosheaf::Impl {
  FinPoset base;
  std::vector<AbGroup> groups;
  // Composite map for every comparable (upper, lower) pair, identities included.
  std::map<std::pair<int, int>, AbHom> comp;
};

CellularCosheaf CellularCosheaf::make(FinPoset base, std::vector<AbGroup> groups,
                                      const std::map<std::pair<int, int>, AbHom>& maps) {
  int n = base.size();
  if (static_cast<int>(groups.size()) != n)
    throw input_error("cosheaf: expected " + std::to_string(n) + " groups, got " +
                      std::to_string(groups.size()));

  std::set<std::pair<int, int>> covers(base.cover_pairs().begin(), base.cover_pairs().end());
  for (const auto& [key, hom] : maps)
    if (!covers.count(key))
      throw input_error("cosheaf: a map is attached to (" + base.name(key.first) + ", " +
                        base.name(key.second) + "), which is not a covering pair");
  for (const auto& [upper, lower] : covers) {
    auto it = maps.find({upper, lower});
    if (it == maps.end())
      throw input_error("cosheaf: missing structure map for the covering pair " +
                        base.name(upper) + " > " + base.name(lower));
    if (!(it->second.source() == groups[upper]) || !(it->second.target() == groups[lower]))
      throw input_error("cosheaf: the structure map for " + base.name(upper) + " > " +
                        base.name(lower) + " does not run between the groups at its endpoints");
  }

  // Longest-chain height below each element, to process uppers bottom-up.
  std::vector<int> height(n, 0);
  for (int pass = 0; pass < n; ++pass)
    for (const auto& [upper, lower] : covers)
      height[upper] = std::max(height[upper], height[lower] + 1);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return height[x] < height[y]; });

  std::vector<std::vector<int>> down(n);
  for (const auto& [upper, lower] : covers) down[upper].push_back(lower);

  // comp[(y, x)] is the common composite along every chain from y down to x;
  // witness remembers one chain so disagreements can be reported readably.
  std::map<std::pair<int, int>, AbHom> comp;
  std::map<std::pair<int, int>, std::vector<int>> witness;
  for (int y : order) {
    comp.insert({{y, y}, identity_hom(groups[y])});
    witness[{y, y}] = {y};
    for (int x = 0; x < n; ++x) {
      if (x == y || !base.leq(x, y)) continue;
      bool have = false;
      for (int m : down[y]) {
        if (!base.leq(x, m)) continue;
        AbHom cand = compose(comp.at({m, x}), maps.at({y, m}));
        std::vector<int> chain = {y};
        const auto& tail = witness.at({m, x});
        chain.insert(chain.end(), tail.begin(), tail.end());
        if (!have) {
          comp.insert({{y, x}, cand});
          witness[{y, x}] = chain;
          have = true;
        } else if (!hom_equal(comp.at({y, x}), cand)) {
          throw input_error("cosheaf: the composite maps from " + base.name(y) + " to " +
                            base.name(x) + " disagree along " +
                            chain_string(base, witness.at({y, x})) + " and " +
                            chain_string(base, chain));
        }
      }
    }
  }

  CellularCosheaf out;
  auto impl = std::make_shared<Impl>();
  impl->base = std::move(base);
  impl->groups = std::move(groups);
  impl->comp = std::move(comp);
  out.impl_ = std::move(impl);
  return out;
}

const FinPoset& CellularCosheaf::base() const { return impl_->base; }

const AbGroup& CellularCosheaf::at(int x) const { return impl_->groups.at(x); }

const AbHom& CellularCosheaf::structure_map(int upper, int lower) const {
  auto it = impl_->comp.find({upper, lower});
  if (it == impl_->comp.end())
    throw input_error("cosheaf: no structure map from " + impl_->base.name(upper) + " down to " +
                      impl_->base.name(lower) + "; the elements are not comparable that way");
  return it->second;
}

CellularCosheaf constant_cosheaf(const FinPoset& p, const AbGroup& a) {
  std::vector<AbGroup> groups(p.size(), a);
  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& pr : p.cover_pairs()) maps.insert({pr, identity_hom(a)});
  return CellularCosheaf::make(p, std::move(groups), maps);
}

CellularCosheaf skyscraper(const FinPoset& p, int x, const AbGroup& a) {
  if (x < 0 || x >= p.size()) throw input_error("skyscraper: no such element");
  std::vector<AbGroup> groups(p.size());
  for (int y = 0; y < p.size(); ++y)
    if (p.leq(y, x)) groups[y] = a;
  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : p.cover_pairs()) {
    if (p.leq(upper, x))
      maps.insert({{upper, lower}, identity_hom(a)});
    else
      maps.insert({{upper, lower}, zero_hom(groups[upper], groups[lower])});
  }
  return CellularCosheaf::make(p, std::move(groups), maps);
}

CellularCosheaf direct_sum_cosheaf(const std::vector<CellularCosheaf>& parts) {
  if (parts.empty()) throw input_error("cosheaf sum: nothing to sum");
  const FinPoset& p = parts.front().base();
  for (const auto& f : parts)
    if (!f.base().same_as(p)) throw input_error("cosheaf sum: the parts live on different posets");

  int n = p.size();
  std::vector<AbGroup> groups(n);
  std::vector<std::vector<int>> offset(n, std::vector<int>(parts.size()));
  for (int x = 0; x < n; ++x) {
    std::vector<AbGroup> at_x;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      offset[x][i] = i ? offset[x][i - 1] + parts[i - 1].at(x).gens() : 0;
      at_x.push_back(parts[i].at(x));
    }
    groups[x] = direct_sum(at_x).group;
  }
  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : p.cover_pairs()) {
    IntMatrix m(groups[lower].gens(), groups[upper].gens());
    for (std::size_t i = 0; i < parts.size(); ++i)
      m.paste(offset[lower][i], offset[upper][i], parts[i].structure_map(upper, lower).matrix());
    maps.insert({{upper, lower}, make_hom(groups[upper], groups[lower], std::move(m))});
  }
  return CellularCosheaf::make(p, std::move(groups), maps);
}

Colimit colim_over(const CellularCosheaf& f, const std::vector<int>& elements) {
  const FinPoset& p = f.base();
  std::vector<int> elems = elements;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (int e : elems)
    if (e < 0 || e >= p.size()) throw input_error("colimit: element index out of range");

  int k = static_cast<int>(elems.size());
  std::vector<int> offsets(k);
  int total = 0;
  for (int i = 0; i < k; ++i) {
    offsets[i] = total;
    total += f.at(elems[i]).gens();
  }
  std::vector<int> pos(p.size(), -1);
  for (int i = 0; i < k; ++i) pos[elems[i]] = i;

  // Covering pairs of the induced subposet; for a non-up-closed subset these
  // can skip intermediate elements, so the composite maps are the right ones.
  std::vector<std::pair<int, int>> induced;
  for (int iu = 0; iu < k; ++iu)
    for (int il = 0; il < k; ++il) {
      int u = elems[iu], l = elems[il];
      if (u == l || !p.leq(l, u)) continue;
      bool direct = true;
      for (int iw = 0; iw < k && direct; ++iw) {
        int w = elems[iw];
        if (w != u && w != l && p.leq(l, w) && p.leq(w, u)) direct = false;
      }
      if (direct) induced.push_back({u, l});
    }

  int rel_cols = 0;
  for (int e : elems) rel_cols += f.at(e).relations().cols();
  for (const auto& [u, l] : induced) rel_cols += f.at(u).gens();

  IntMatrix rel(total, rel_cols);
  int c = 0;
  for (int i = 0; i < k; ++i) {
    const IntMatrix& r = f.at(elems[i]).relations();
    rel.paste(offsets[i], c, r);
    c += r.cols();
  }
  for (const auto& [u, l] : induced) {
    const IntMatrix& m = f.structure_map(u, l).matrix();
    int ou = offsets[pos[u]], ol = offsets[pos[l]];
    for (int j = 0; j < m.cols(); ++j) {
      for (int r = 0; r < m.rows(); ++r) rel.at(ol + r, c) = m.at(r, j);
      rel.at(ou + j, c) -= 1;
      ++c;
    }
  }

  Colimit out;
  out.group = AbGroup(total, std::move(rel));
  out.elements = std::move(elems);
  out.offsets = std::move(offsets);
  for (int i = 0; i < k; ++i) {
    const AbGroup& g = f.at(out.elements[i]);
    IntMatrix inj(total, g.gens());
    inj.paste(out.offsets[i], 0, IntMatrix::identity(g.gens()));
    out.injections.push_back(detail::unchecked_hom(g, out.group, std::move(inj)));
  }
  return out;
}

Colimit hat_eval(const CellularCosheaf& f, const OpenSet& u) {
  if (!u.poset().same_as(f.base()))
    throw input_error("evaluation: the open set lives over a different poset");
  return colim_over(f, u.members());
}

AbHom colimit_extension(const Colimit& small, const Colimit& large) {
  IntMatrix m(large.group.gens(), small.group.gens());
  for (std::size_t i = 0; i < small.elements.size(); ++i) {
    auto it = std::lower_bound(large.elements.begin(), large.elements.end(), small.elements[i]);
    if (it == large.elements.end() || *it != small.elements[i])
      throw input_error("colimit extension: the smaller diagram is not part of the larger one");
    int j = static_cast<int>(it - large.elements.begin());
    m.paste(large.offsets[j], small.offsets[i],
            IntMatrix::identity(small.injections[i].source().gens()));
  }
  return make_hom(small.group, large.group, std::move(m));
}

AbHom hat_extend(const CellularCosheaf& f, const OpenSet& v, const OpenSet& u) {
  if (!v.poset().same_as(f.base()) || !u.poset().same_as(f.base()))
    throw input_error("extension: the open sets live over a different poset");
  if (!v.subset_of(u)) throw input_error("extension: the first open must sit inside the second");
  return colimit_extension(hat_eval(f, v), hat_eval(f, u));
}

struct NatTrans::Impl {
  CellularCosheaf source, target;
  std::vector<AbHom> components;
};

NatTrans NatTrans::make(CellularCosheaf source, CellularCosheaf target,
                        std::vector<AbHom> components) {
  const FinPoset& p = source.base();
  if (!p.same_as(target.base()))
    throw input_error("transformation: source and target live on different posets");
  if (static_cast<int>(components.size()) != p.size())
    throw input_error("transformation: expected one component per element");
  for (int x = 0; x < p.size(); ++x)
    if (!(components[x].source() == source.at(x)) || !(components[x].target() == target.at(x)))
      throw input_error("transformation: the component at " + p.name(x) +
                        " does not run between the values there");
  for (const auto& [upper, lower] : p.cover_pairs()) {
    AbHom left = compose(target.structure_map(upper, lower), components[upper]);
    AbHom right = compose(components[lower], source.structure_map(upper, lower));
    if (!hom_equal(left, right))
      throw input_error("transformation: naturality fails on the covering pair " + p.name(upper) +
                        " > " + p.name(lower));
  }
  NatTrans out;
  auto impl = std::make_shared<Impl>();
  impl->source = std::move(source);
  impl->target = std::move(target);
  impl->components = std::move(components);
  out.impl_ = std::move(impl);
  return out;
}

const CellularCosheaf& NatTrans::source() const { return impl_->source; }
const CellularCosheaf& NatTrans::target() const { return impl_->target; }
const AbHom& NatTrans::component(int x) const { return impl_->components.at(x); }

AbHom hat_map(const NatTrans& a, const OpenSet& u) {
  Colimit cs = hat_eval(a.source(), u);
  Colimit ct = hat_eval(a.target(), u);
  IntMatrix m(ct.group.gens(), cs.group.gens());
  for (std::size_t i = 0; i < cs.elements.size(); ++i)
    m.paste(ct.offsets[i], cs.offsets[i], a.component(cs.elements[i]).matrix());
  return make_hom(cs.group, ct.group, std::move(m));
}

NatTrans zero_nat(const CellularCosheaf& source, const CellularCosheaf& target) {
  std::vector<AbHom> comps;
  for (int x = 0; x < source.base().size(); ++x)
    comps.push_back(zero_hom(source.at(x), target.at(x)));
  return NatTrans::make(source, target, std::move(comps));
}

NatTrans identity_nat(const CellularCosheaf& f) {
  std::vector<AbHom> comps;
  for (int x = 0; x < f.base().size(); ++x) comps.push_back(identity_hom(f.at(x)));
  return NatTrans::make(f, f, std::move(comps));
}

namespace {

// Solve incl * C = cols modulo the relations of incl's target, i.e. express
// columns known to lie in the sublattice in the subgroup's generators.
IntMatrix through_inclusion(const AbHom& incl, const IntMatrix& cols, const std::string& where) {
  IntMatrix padded = hstack(incl.matrix(), incl.target().relations());
  auto sol = solve_integer_many(padded, cols);
  if (!sol)
    throw contract_error("cosheaf kernel: an induced map escaped the kernel " + where +
                         "; internal consistency violated");
  return sol->rows_slice(0, incl.matrix().cols());
}

}  // namespace

KernelCosheaf kernel_functor(const NatTrans& a) {
  const CellularCosheaf& f = a.source();
  const FinPoset& p = f.base();
  int n = p.size();

  std::vector<AbGroup> groups(n);
  std::vector<AbHom> incl(n);
  for (int x = 0; x < n; ++x) {
    Kernel k = kernel(a.component(x));
    Minimized m = minimize_presentation(k.group);
    groups[x] = m.group;
    incl[x] = compose(k.incl, m.from);
  }

  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : p.cover_pairs()) {
    IntMatrix cols = f.structure_map(upper, lower).matrix() * incl[upper].matrix();
    IntMatrix c = through_inclusion(incl[lower], cols,
                                    "at " + p.name(upper) + " > " + p.name(lower));
    try {
      maps.insert({{upper, lower}, make_hom(groups[upper], groups[lower], std::move(c))});
    } catch (const input_error& e) {
      throw contract_error(std::string("cosheaf kernel: ") + e.what());
    }
  }

  KernelCosheaf out;
  out.cosheaf = CellularCosheaf::make(p, groups, maps);
  out.incl = NatTrans::make(out.cosheaf, f, incl);
  return out;
}

CokernelCosheaf cokernel_functor(const NatTrans& a) {
  const CellularCosheaf& g = a.target();
  const FinPoset& p = g.base();
  int n = p.size();

  // Raw cokernels keep the target's generators, so the induced maps reuse the
  // target's matrices; minimizing afterwards conjugates them by to/from.
  std::vector<AbGroup> groups(n);
  std::vector<AbHom> proj(n);
  std::vector<Minimized> min(n);
  for (int x = 0; x < n; ++x) {
    Cokernel c = cokernel(a.component(x));
    min[x] = minimize_presentation(c.group);
    groups[x] = min[x].group;
    proj[x] = compose(min[x].to, c.proj);
  }

  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : p.cover_pairs()) {
    IntMatrix m = min[lower].to.matrix() *
                  (g.structure_map(upper, lower).matrix() * min[upper].from.matrix());
    try {
      maps.insert({{upper, lower}, make_hom(groups[upper], groups[lower], std::move(m))});
    } catch (const input_error& e) {
      throw contract_error(std::string("cosheaf cokernel: ") + e.what());
    }
  }

  CokernelCosheaf out;
  out.cosheaf = CellularCosheaf::make(p, groups, maps);
  out.proj = NatTrans::make(g, out.cosheaf, proj);
  return out;
}

NatTrans compose(const NatTrans& g, const NatTrans& f) {
  if (!f.target().base().same_as(g.source().base()))
    throw input_error("composition: the transformations live over different posets");
  std::vector<AbHom> comps;
  for (int x = 0; x < f.source().base().size(); ++x)
    comps.push_back(compose(g.component(x), f.component(x)));
  return NatTrans::make(f.source(), g.target(), std::move(comps));
}

NatTrans point_transformation(const CellularCosheaf& target, int x, const AbHom& h) {
  const FinPoset& p = target.base();
  if (x < 0 || x >= p.size()) throw input_error("point map: no such element");
  if (!(h.target() == target.at(x)))
    throw input_error("point map: the hom must land in the value at " + p.name(x));
  CellularCosheaf s = skyscraper(p, x, h.source());
  std::vector<AbHom> comps;
  for (int y = 0; y < p.size(); ++y)
    comps.push_back(p.leq(y, x) ? compose(target.structure_map(x, y), h)
                                : zero_hom(s.at(y), target.at(y)));
  return NatTrans::make(s, target, std::move(comps));
}

NatTrans sum_transformations(const std::vector<NatTrans>& parts) {
  if (parts.empty()) throw input_error("sum of transformations: nothing to sum");
  const CellularCosheaf& t = parts.front().target();
  const FinPoset& p = t.base();
  std::vector<CellularCosheaf> sources;
  for (const NatTrans& a : parts) {
    if (!a.target().base().same_as(p))
      throw input_error("sum of transformations: targets live over different posets");
    for (int x = 0; x < p.size(); ++x)
      if (!(a.target().at(x) == t.at(x)))
        throw input_error("sum of transformations: the targets differ at " + p.name(x));
    sources.push_back(a.source());
  }
  CellularCosheaf s = direct_sum_cosheaf(sources);
  std::vector<AbHom> comps;
  for (int x = 0; x < p.size(); ++x) {
    IntMatrix m(t.at(x).gens(), s.at(x).gens());
    int off = 0;
    for (const NatTrans& a : parts) {
      m.paste(0, off, a.component(x).matrix());
      off += a.source().at(x).gens();
    }
    comps.push_back(make_hom(s.at(x), t.at(x), std::move(m)));
  }
  return NatTrans::make(s, t, std::move(comps));
}

struct PrecosheafTable::Impl {
  FinPoset base;
  std::map<OpenSet, AbGroup> values;
  std::map<std::pair<OpenSet, OpenSet>, AbHom> extends;
};

PrecosheafTable PrecosheafTable::make(FinPoset base, Entries entries) {
  for (const auto& [u, g] : entries.values)
    if (!u.poset().same_as(base)) throw input_error("table: a value is keyed by a foreign open set");
  for (const auto& [key, hom] : entries.extends) {
    const auto& [v, u] = key;
    if (!v.poset().same_as(base) || !u.poset().same_as(base))
      throw input_error("table: an extension is keyed by a foreign open set");
    if (!v.subset_of(u))
      throw input_error("table: extension keyed by " + v.to_string() + " into " + u.to_string() +
                        ", but the first is not contained in the second");
    auto vv = entries.values.find(v), vu = entries.values.find(u);
    if (vv == entries.values.end() || vu == entries.values.end())
      throw input_error("table: extension from " + v.to_string() + " to " + u.to_string() +
                        " refers to opens without stored values");
    if (!(hom.source() == vv->second) || !(hom.target() == vu->second))
      throw input_error("table: extension from " + v.to_string() + " to " + u.to_string() +
                        " does not run between the stored values");
    if (v == u && !hom_equal(hom, identity_hom(vv->second)))
      throw input_error("table: the stored extension from " + v.to_string() +
                        " to itself is not the identity");
  }
  for (const auto& [k1, h1] : entries.extends) {
    for (const auto& [k2, h2] : entries.extends) {
      if (!(k1.second == k2.first)) continue;
      auto whole = entries.extends.find({k1.first, k2.second});
      if (whole == entries.extends.end()) continue;
      if (!hom_equal(compose(h2, h1), whole->second))
        throw input_error("table: extensions from " + k1.first.to_string() + " through " +
                          k1.second.to_string() + " to " + k2.second.to_string() +
                          " do not compose to the stored extension");
    }
  }

  PrecosheafTable out;
  auto impl = std::make_shared<Impl>();
  impl->base = std::move(base);
  impl->values = std::move(entries.values);
  impl->extends = std::move(entries.extends);
  out.impl_ = std::move(impl);
  return out;
}

const FinPoset& PrecosheafTable::base() const { return impl_->base; }

bool PrecosheafTable::has_value(const OpenSet& u) const { return impl_->values.count(u) > 0; }

const AbGroup& PrecosheafTable::value(const OpenSet& u) const {
  auto it = impl_->values.find(u);
  if (it == impl_->values.end())
    throw input_error("table: no value stored at " + u.to_string());
  return it->second;
}

bool PrecosheafTable::has_extend(const OpenSet& v, const OpenSet& u) const {
  return impl_->extends.count({v, u}) > 0;
}

const AbHom& PrecosheafTable::extend(const OpenSet& v, const OpenSet& u) const {
  auto it = impl_->extends.find({v, u});
  if (it == impl_->extends.end())
    throw input_error("table: no extension stored from " + v.to_string() + " to " + u.to_string());
  return it->second;
}

std::vector<OpenSet> PrecosheafTable::stored_opens() const {
  std::vector<OpenSet> out;
  for (const auto& [u, g] : impl_->values) out.push_back(u);
  return out;
}

PrecosheafTable hat_table(const CellularCosheaf& f, const std::vector<OpenSet>& opens) {
  std::map<OpenSet, Colimit> colims;
  for (const auto& u : opens)
    if (!colims.count(u)) colims.insert({u, hat_eval(f, u)});

  PrecosheafTable::Entries e;
  for (const auto& [u, c] : colims) e.values.insert({u, c.group});
  for (const auto& [v, cv] : colims)
    for (const auto& [u, cu] : colims) {
      if (v == u || !v.subset_of(u)) continue;
      e.extends.insert({{v, u}, colimit_extension(cv, cu)});
    }
  return PrecosheafTable::make(f.base(), std::move(e));
}

PrecosheafTable principal_hat_table(const CellularCosheaf& f) {
  std::vector<OpenSet> opens;
  for (int x = 0; x < f.base().size(); ++x) opens.push_back(f.base().principal_open(x));
  return hat_table(f, opens);
}

PrecosheafTable kernel_table(const NatTrans& a, const std::vector<OpenSet>& opens) {
  struct Entry {
    Colimit cs;
    AbGroup group;
    AbHom incl;  // group -> cs.group
  };
  std::map<OpenSet, Entry> entries;
  for (const auto& u : opens) {
    if (entries.count(u)) continue;
    Entry ent;
    ent.cs = hat_eval(a.source(), u);
    Colimit ct = hat_eval(a.target(), u);
    IntMatrix m(ct.group.gens(), ent.cs.group.gens());
    for (std::size_t i = 0; i < ent.cs.elements.size(); ++i)
      m.paste(ct.offsets[i], ent.cs.offsets[i], a.component(ent.cs.elements[i]).matrix());
    Kernel k = kernel(make_hom(ent.cs.group, ct.group, std::move(m)));
    Minimized mi = minimize_presentation(k.group);
    ent.group = mi.group;
    ent.incl = compose(k.incl, mi.from);
    entries.insert({u, std::move(ent)});
  }

  PrecosheafTable::Entries e;
  for (const auto& [u, ent] : entries) e.values.insert({u, ent.group});
  for (const auto& [v, ev] : entries)
    for (const auto& [u, eu] : entries) {
      if (v == u || !v.subset_of(u)) continue;
      AbHom ext = colimit_extension(ev.cs, eu.cs);
      IntMatrix cols = ext.matrix() * ev.incl.matrix();
      IntMatrix c = through_inclusion(eu.incl, cols,
                                      "between " + v.to_string() + " and " + u.to_string());
      e.extends.insert({{v, u}, make_hom(ev.group, eu.group, std::move(c))});
    }
  return PrecosheafTable::make(a.source().base(), std::move(e));
}

AxiomCheck cosheaf_axiom_check(const PrecosheafTable& t, const OpenSet& u, const Cover& c) {
  if (!u.poset().same_as(t.base()))
    throw input_error("axiom check: the open set lives over a different poset");
  if (!(c.universe == u))
    throw input_error("axiom check: the cover does not cover the tested open");

  AxiomCheck out;
  out.value_class = t.value(u).iso_class();

  std::map<OpenSet, int> index;
  std::vector<OpenSet> cells;
  for (const auto& cell : nerve_intersections(c))
    if (index.insert({cell.intersection, static_cast<int>(cells.size())}).second)
      cells.push_back(cell.intersection);

  if (cells.empty()) {
    out.nerve_class = IsoClass{};
    out.holds = out.value_class.is_trivial();
    return out;
  }

  // The intersections form a poset under reverse inclusion, so that maps run
  // from smaller opens into larger ones just as the structure maps of a
  // cosheaf run downward.
  std::vector<std::string> names;
  for (const auto& w : cells) names.push_back(w.to_string());
  std::vector<std::pair<std::string, std::string>> hasse;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size(); ++j)
      if (i != j && cells[i].subset_of(cells[j])) hasse.push_back({names[i], names[j]});
  FinPoset nerve = FinPoset::make(names, hasse);

  std::vector<AbGroup> groups;
  for (const auto& w : cells) groups.push_back(t.value(w));
  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : nerve.cover_pairs())
    maps.insert({{upper, lower}, t.extend(cells[upper], cells[lower])});
  CellularCosheaf diagram = CellularCosheaf::make(nerve, groups, maps);

  std::vector<int> everything(nerve.size());
  for (int i = 0; i < nerve.size(); ++i) everything[i] = i;
  Colimit col = colim_over(diagram, everything);
  out.nerve_class = col.group.iso_class();

  IntMatrix m(t.value(u).gens(), col.group.gens());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const IntMatrix& block = (cells[i] == u) ? IntMatrix::identity(t.value(u).gens())
                                             : t.extend(cells[i], u).matrix();
    m.paste(0, col.offsets[i], block);
  }
  AbHom comparison = make_hom(col.group, t.value(u), std::move(m));
  out.holds = out.nerve_class == out.value_class && is_isomorphism(comparison);
  return out;
}

CellularCosheaf cosheafify(const PrecosheafTable& t) {
  const FinPoset& p = t.base();
  std::vector<AbGroup> groups;
  for (int x = 0; x < p.size(); ++x) {
    OpenSet ux = p.principal_open(x);
    if (!t.has_value(ux))
      throw input_error("cosheafification needs a value at every principal open; missing " +
                        ux.to_string());
    groups.push_back(t.value(ux));
  }
  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : p.cover_pairs()) {
    OpenSet vu = p.principal_open(upper), vl = p.principal_open(lower);
    if (!t.has_extend(vu, vl))
      throw input_error("cosheafification needs the extension from " + vu.to_string() + " to " +
                        vl.to_string());
    maps.insert({{upper, lower}, t.extend(vu, vl)});
  }
  return CellularCosheaf::make(p, std::move(groups), maps);
}

bool is_flasque(const CellularCosheaf& f, int cap) {
  std::vector<OpenSet> opens = f.base().enumerate_opens(cap);
  std::vector<Colimit> colims;
  colims.reserve(opens.size());
  for (const auto& u : opens) colims.push_back(hat_eval(f, u));
  for (std::size_t i = 0; i < opens.size(); ++i) {
    if (opens[i].empty()) continue;
    for (std::size_t j = 0; j < opens.size(); ++j) {
      if (i == j || !opens[i].subset_of(opens[j])) continue;
      AbHom ext = colimit_extension(colims[i], colims[j]);
      if (!kernel(ext).group.is_trivial()) return false;
    }
  }
  return true;
}

}  // namespace coshom
