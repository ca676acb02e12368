#include <coshom/homology.hpp>

#include <coshom/errors.hpp>
#include <coshom/intmat.hpp>

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>
#include <sstream>
#include <utility>

namespace coshom {

struct ChainComplex::Impl {
  std::vector<AbGroup> groups;
  std::vector<AbHom> boundaries;  // boundaries[n-1] maps degree n to n-1
};

namespace {

std::atomic<long> g_verified_squares{0};

const AbGroup& trivial_group() {
  static const AbGroup g;
  return g;
}

}  // namespace

ChainComplex ChainComplex::make(std::vector<AbGroup> groups, std::vector<AbHom> boundaries) {
  if (groups.empty()) {
    if (!boundaries.empty())
      throw input_error("chain complex: boundaries given without any degrees");
    return ChainComplex();
  }
  if (boundaries.size() + 1 != groups.size())
    throw input_error("chain complex: need exactly one boundary per consecutive degree pair");
  for (std::size_t n = 1; n < groups.size(); ++n)
    if (!(boundaries[n - 1].source() == groups[n]) ||
        !(boundaries[n - 1].target() == groups[n - 1]))
      throw input_error("chain complex: the boundary out of degree " + std::to_string(n) +
                        " does not match the groups at its ends");
  for (std::size_t n = 2; n < groups.size(); ++n) {
    if (!hom_equal(compose(boundaries[n - 2], boundaries[n - 1]),
                   zero_hom(groups[n], groups[n - 2])))
      throw contract_error("chain complex: the boundaries out of degrees " + std::to_string(n) +
                           " and " + std::to_string(n - 1) + " do not compose to zero");
    ++g_verified_squares;
  }

  auto impl = std::make_shared<Impl>();
  impl->groups = std::move(groups);
  impl->boundaries = std::move(boundaries);
  ChainComplex c;
  c.impl_ = std::move(impl);
  return c;
}

int ChainComplex::top_degree() const {
  return impl_ ? static_cast<int>(impl_->groups.size()) - 1 : -1;
}

const AbGroup& ChainComplex::group(int n) const {
  if (n < 0) throw input_error("chain complex: negative degree");
  if (!impl_ || n > top_degree()) return trivial_group();
  return impl_->groups[n];
}

const AbHom& ChainComplex::boundary(int n) const {
  if (n < 1 || n > top_degree())
    throw input_error("chain complex: no boundary stored at degree " + std::to_string(n));
  return impl_->boundaries[n - 1];
}

long ChainComplex::verified_squares() { return g_verified_squares.load(); }

std::string pipeline_name(Pipeline t) {
  switch (t) {
    case Pipeline::bm: return "bm";
    case Pipeline::cech: return "cech";
    default: return "derived";
  }
}

IsoClass HomologyReport::class_at(int n) const {
  if (n < 0 || n >= static_cast<int>(classes.size())) return IsoClass{0, {}};
  return classes[n];
}

HomologyReport homology(const ChainComplex& c, Pipeline tag) {
  HomologyReport rep;
  rep.tag = tag;
  int top = c.top_degree();
  for (int n = 0; n <= top; ++n) {
    AbHom in = (n < top) ? c.boundary(n + 1) : zero_hom(AbGroup(), c.group(n));
    AbHom out = (n > 0) ? c.boundary(n) : zero_hom(c.group(n), AbGroup());
    rep.classes.push_back(homology_at(in, out));
  }
  return rep;
}

OrderedIncidence::OrderedIncidence(const SimplicialComplex& k) {
  const FinPoset& p = k.face_poset();
  std::vector<std::vector<int>> down(p.size());
  for (const auto& [upper, lower] : p.cover_pairs()) {
    const std::vector<int>& s = k.simplex_of(upper);
    const std::vector<int>& t = k.simplex_of(lower);
    int i = 0;
    while (i < static_cast<int>(t.size()) && s[i] == t[i]) ++i;
    signs_[{upper, lower}] = (i % 2 == 0) ? 1 : -1;
    down[upper].push_back(lower);
  }

  for (int sigma = 0; sigma < p.size(); ++sigma) {
    std::map<int, int> acc;
    for (int tau : down[sigma])
      for (int rho : down[tau]) acc[rho] += sign(sigma, tau) * sign(tau, rho);
    for (const auto& [rho, total] : acc)
      if (total != 0)
        throw contract_error("incidence: signs fail to cancel between " + p.name(sigma) +
                             " and " + p.name(rho));
  }
}

int OrderedIncidence::sign(int sigma, int tau) const {
  auto it = signs_.find({sigma, tau});
  if (it == signs_.end())
    throw input_error("incidence: not a codimension-one face pair");
  return it->second;
}

namespace {

// Paste sign * block into m with its top-left corner at (roff, coff).
void paste_signed(IntMatrix& m, int roff, int coff, const IntMatrix& block, int sign) {
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c) m.at(roff + r, coff + c) = Int(sign) * block.at(r, c);
}

}  // namespace

ChainComplex bm_complex(const SimplicialComplex& k, const CellularCosheaf& f) {
  const FinPoset& p = k.face_poset();
  if (!f.base().same_as(p))
    throw input_error("cell chains: the coefficients live on a different poset");
  int d = k.dim();
  if (d < 0) return ChainComplex();
  OrderedIncidence inc(k);

  // Cells per degree in the complex's canonical order, with each cell's
  // position inside its degree.
  std::vector<std::vector<int>> cells(d + 1);
  std::vector<int> pos(p.size());
  for (int e = 0; e < p.size(); ++e) {
    int n = static_cast<int>(k.simplex_of(e).size()) - 1;
    pos[e] = static_cast<int>(cells[n].size());
    cells[n].push_back(e);
  }

  std::vector<std::vector<int>> down(p.size());
  for (const auto& [upper, lower] : p.cover_pairs()) down[upper].push_back(lower);

  std::vector<AbGroup> groups;
  std::vector<std::vector<int>> offsets(d + 1);
  for (int n = 0; n <= d; ++n) {
    std::vector<AbGroup> parts;
    for (int e : cells[n]) parts.push_back(f.at(e));
    DirectSum s = direct_sum(parts);
    groups.push_back(s.group);
    offsets[n] = s.offsets;
  }

  std::vector<AbHom> boundaries;
  for (int n = 1; n <= d; ++n) {
    IntMatrix m(groups[n - 1].gens(), groups[n].gens());
    for (int sigma : cells[n])
      for (int tau : down[sigma])
        paste_signed(m, offsets[n - 1][pos[tau]], offsets[n][pos[sigma]],
                     f.structure_map(sigma, tau).matrix(), inc.sign(sigma, tau));
    boundaries.push_back(make_hom(groups[n], groups[n - 1], std::move(m)));
  }
  return ChainComplex::make(std::move(groups), std::move(boundaries));
}

HatEvaluator::HatEvaluator(CellularCosheaf f) : f_(std::move(f)) {}

const Colimit& HatEvaluator::colim(const OpenSet& u) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(u);
  if (it == memo_.end()) it = memo_.emplace(u, hat_eval(f_, u)).first;
  return it->second;
}

AbGroup HatEvaluator::value(const OpenSet& u) { return colim(u).group; }

AbHom HatEvaluator::extension(const OpenSet& v, const OpenSet& u) {
  if (v == u) return identity_hom(value(u));
  const Colimit& small = colim(v);
  const Colimit& large = colim(u);
  return colimit_extension(small, large);
}

TableEvaluator::TableEvaluator(PrecosheafTable t) : t_(std::move(t)) {}

AbGroup TableEvaluator::value(const OpenSet& u) {
  if (!t_.has_value(u))
    throw input_error("evaluator: no value stored for " + u.to_string());
  return t_.value(u);
}

AbHom TableEvaluator::extension(const OpenSet& v, const OpenSet& u) {
  if (v == u) return identity_hom(value(u));
  if (!t_.has_extend(v, u))
    throw input_error("evaluator: no extension stored for " + v.to_string() + " into " +
                      u.to_string());
  return t_.extend(v, u);
}

ChainComplex cech_complex(const Cover& c, OpenEvaluator& t) {
  std::vector<NerveCell> cells = nerve_intersections(c);
  if (cells.empty()) return ChainComplex();

  int top = 0;
  for (const NerveCell& cell : cells)
    top = std::max(top, static_cast<int>(cell.indices.size()) - 1);

  std::vector<std::vector<const NerveCell*>> by_deg(top + 1);
  std::map<std::vector<int>, int> pos;
  for (const NerveCell& cell : cells) {
    int n = static_cast<int>(cell.indices.size()) - 1;
    pos[cell.indices] = static_cast<int>(by_deg[n].size());
    by_deg[n].push_back(&cell);
  }

  std::vector<AbGroup> groups;
  std::vector<std::vector<int>> offsets(top + 1);
  for (int n = 0; n <= top; ++n) {
    std::vector<AbGroup> parts;
    for (const NerveCell* cell : by_deg[n]) parts.push_back(t.value(cell->intersection));
    DirectSum s = direct_sum(parts);
    groups.push_back(s.group);
    offsets[n] = s.offsets;
  }

  std::vector<AbHom> boundaries;
  for (int n = 1; n <= top; ++n) {
    IntMatrix m(groups[n - 1].gens(), groups[n].gens());
    for (int j = 0; j < static_cast<int>(by_deg[n].size()); ++j) {
      const NerveCell& cell = *by_deg[n][j];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> face = cell.indices;
        face.erase(face.begin() + i);
        int fpos = pos.at(face);
        AbHom ext = t.extension(cell.intersection, by_deg[n - 1][fpos]->intersection);
        paste_signed(m, offsets[n - 1][fpos], offsets[n][j], ext.matrix(),
                     i % 2 == 0 ? 1 : -1);
      }
    }
    boundaries.push_back(make_hom(groups[n], groups[n - 1], std::move(m)));
  }
  return ChainComplex::make(std::move(groups), std::move(boundaries));
}

HomologyReport vertex_cover_cech(const SimplicialComplex& k, const CellularCosheaf& f) {
  if (!f.base().same_as(k.face_poset()))
    throw input_error("cover homology: the coefficients live on a different poset");
  HatEvaluator t(f);
  return homology(cech_complex(star_cover(k.face_poset()), t), Pipeline::cech);
}

CellularCosheaf delta_cosheaf(const FinPoset& p, const CellularCosheaf& f) {
  if (!f.base().same_as(p))
    throw input_error("subdivision coefficients: the cosheaf lives on a different poset");
  SimplicialComplex sd = order_complex(p);
  const FinPoset& fp = sd.face_poset();

  // Each cell of the subdivision is a chain in p; its value is the value at
  // the chain's top.  Vertex indices equal p's element indices, but within a
  // chain they need not be sorted by p's order, so take the maximum.
  std::vector<int> top(fp.size());
  std::vector<AbGroup> groups(fp.size());
  for (int s = 0; s < fp.size(); ++s) {
    const std::vector<int>& verts = sd.simplex_of(s);
    int t = verts.front();
    for (int v : verts)
      if (p.leq(t, v)) t = v;
    top[s] = t;
    groups[s] = f.at(t);
  }

  std::map<std::pair<int, int>, AbHom> maps;
  for (const auto& [upper, lower] : fp.cover_pairs())
    maps.insert({{upper, lower}, top[lower] == top[upper]
                                     ? identity_hom(groups[upper])
                                     : f.structure_map(top[upper], top[lower])});
  return CellularCosheaf::make(fp, std::move(groups), maps);
}

namespace {

CellularCosheaf zero_cosheaf(const FinPoset& p) { return constant_cosheaf(p, AbGroup()); }

struct StageCover {
  CellularCosheaf stage;
  NatTrans onto;
  std::vector<std::pair<int, int>> summands;
};

// Cover g by one down-set block per element with free generators, one per
// generator of the value there.  The block at x hits everything below x
// through the structure maps, so the sum is onto at every element.
StageCover cover_by_blocks(const CellularCosheaf& g, const std::vector<int>& order) {
  std::vector<NatTrans> parts;
  std::vector<std::pair<int, int>> summands;
  for (int x : order) {
    int gx = g.at(x).gens();
    if (gx == 0) continue;
    AbHom h = make_hom(AbGroup::free_group(gx), g.at(x), IntMatrix::identity(gx));
    parts.push_back(point_transformation(g, x, h));
    summands.push_back({x, gx});
  }
  StageCover out;
  if (parts.empty()) {
    out.stage = zero_cosheaf(g.base());
    out.onto = zero_nat(out.stage, g);
    return out;
  }
  out.onto = sum_transformations(parts);
  out.stage = out.onto.source();
  out.summands = std::move(summands);
  return out;
}

}  // namespace

Resolution projective_resolution(const CellularCosheaf& f, int depth,
                                 const std::vector<int>& element_order) {
  const FinPoset& p = f.base();
  if (depth < 0) throw input_error("resolution: negative depth");
  std::vector<int> order = element_order;
  if (order.empty()) {
    order.resize(p.size());
    std::iota(order.begin(), order.end(), 0);
  } else {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> want(p.size());
    std::iota(want.begin(), want.end(), 0);
    if (sorted != want)
      throw input_error("resolution: the element order must be a permutation of the base");
  }

  Resolution r;
  r.target = f;
  r.depth = depth;
  CellularCosheaf current = f;
  NatTrans into_prev;
  for (int n = 0; n <= depth; ++n) {
    StageCover sc = cover_by_blocks(current, order);
    r.stages.push_back(sc.stage);
    r.maps.push_back(n == 0 ? sc.onto : compose(into_prev, sc.onto));
    r.summands.push_back(std::move(sc.summands));
    if (n == depth) break;
    KernelCosheaf k = kernel_functor(r.maps.back());
    current = k.cosheaf;
    into_prev = k.incl;
  }

  // Certify exactness at every value: each stage covers the kernel of the
  // previous map, and the first stage covers the target itself.
  for (int x = 0; x < p.size(); ++x)
    if (!cokernel(r.maps[0].component(x)).group.is_trivial())
      throw contract_error("resolution: the cover misses part of the value at " + p.name(x));
  for (int n = 0; n + 1 <= depth; ++n)
    for (int x = 0; x < p.size(); ++x)
      if (!homology_at(r.maps[n + 1].component(x), r.maps[n].component(x)).is_trivial())
        throw contract_error("resolution: exactness fails at " + p.name(x) + " in degree " +
                             std::to_string(n));
  return r;
}

Resolution projective_resolution(const CellularCosheaf& f, int depth) {
  return projective_resolution(f, depth, {});
}

HomologyReport derived_homology(const CellularCosheaf& f, int depth,
                                const std::vector<int>& element_order) {
  Resolution r = projective_resolution(f, depth, element_order);
  OpenSet full = f.base().full_open();

  std::vector<Minimized> mins;
  std::vector<AbGroup> groups;
  for (int n = 0; n <= depth; ++n) {
    mins.push_back(minimize_presentation(hat_eval(r.stages[n], full).group));
    groups.push_back(mins.back().group);
  }
  std::vector<AbHom> boundaries;
  for (int n = 1; n <= depth; ++n)
    boundaries.push_back(
        compose(mins[n - 1].to, compose(hat_map(r.maps[n], full), mins[n].from)));

  HomologyReport rep = homology(ChainComplex::make(std::move(groups), std::move(boundaries)),
                                Pipeline::derived);
  rep.classes.resize(depth);  // the last stage only pins down lower degrees
  return rep;
}

HomologyReport derived_homology(const CellularCosheaf& f, int depth) {
  return derived_homology(f, depth, {});
}

CrosscheckRecord crosscheck(const SimplicialComplex& k, const CellularCosheaf& f) {
  const FinPoset& p = k.face_poset();
  if (!f.base().same_as(p))
    throw input_error("crosscheck: the coefficients live on a different poset");
  int depth = k.dim() + 2;

  auto bm_run = std::async(std::launch::async,
                           [&] { return homology(bm_complex(k, f), Pipeline::bm); });
  auto cech_run = std::async(std::launch::async, [&] { return vertex_cover_cech(k, f); });
  auto derived_run =
      std::async(std::launch::async, [&] { return derived_homology(f, depth); });
  auto sd_run = std::async(std::launch::async, [&] {
    return homology(bm_complex(order_complex(p), delta_cosheaf(p, f)), Pipeline::bm);
  });

  CrosscheckRecord rec;
  rec.bm = bm_run.get();
  rec.cech = cech_run.get();
  rec.derived = derived_run.get();
  rec.subdivided = sd_run.get();

  int top = std::max({rec.bm.top_degree(), rec.cech.top_degree(), rec.derived.top_degree(),
                      rec.subdivided.top_degree()});
  rec.agree = true;
  for (int n = 0; n <= top && rec.agree; ++n) {
    IsoClass a = rec.bm.class_at(n);
    IsoClass b = rec.cech.class_at(n);
    IsoClass c = rec.derived.class_at(n);
    IsoClass d = rec.subdivided.class_at(n);
    if (a == b && b == c && c == d) continue;
    rec.agree = false;
    rec.first_mismatch = n;
    std::ostringstream os;
    os << "degree " << n << ": cells " << a.to_string() << ", cover " << b.to_string()
       << ", resolution " << c.to_string() << ", subdivision " << d.to_string();
    rec.note = os.str();
  }
  return rec;
}

}  // namespace coshom
