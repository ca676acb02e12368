#include <coshom/corpus.hpp>

#include <coshom/abgroup.hpp>

#include <algorithm>
#include <set>
#include <vector>

namespace coshom {

namespace {

// splitmix64: decorrelates per-instance seeds derived from one corpus seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Natural map out of free down-set blocks with small random entries.
NatTrans random_block_map(Rng& rng, const CellularCosheaf& t) {
  std::vector<NatTrans> parts;
  int k = rng.uniform(1, 2);
  for (int i = 0; i < k; ++i) {
    int x = rng.uniform(0, t.base().size() - 1);
    int r = rng.uniform(1, 2);
    IntMatrix m(t.at(x).gens(), r);
    for (int row = 0; row < m.rows(); ++row)
      for (int col = 0; col < r; ++col) m.at(row, col) = Int(rng.uniform(-3, 3));
    parts.push_back(point_transformation(t, x, make_hom(AbGroup::free_group(r), t.at(x), m)));
  }
  return sum_transformations(parts);
}

}  // namespace

FinPoset random_poset(Rng& rng, int max_elements) {
  int n = rng.uniform(1, max_elements);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> hasse;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (rng.uniform(0, 9) < 3) hasse.push_back({names[j], names[i]});
  return FinPoset::make(names, hasse);
}

SimplicialComplex random_complex(Rng& rng, int max_vertices, int max_dim) {
  int nv = rng.uniform(1, max_vertices);
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) names.push_back(std::string(1, char('a' + i)));
  std::vector<std::vector<std::string>> facets;
  int count = rng.uniform(1, 3);
  for (int t = 0; t < count; ++t) {
    int size = rng.uniform(1, std::min(nv, max_dim + 1));
    std::set<int> pick;
    while (static_cast<int>(pick.size()) < size) pick.insert(rng.uniform(0, nv - 1));
    facets.push_back({});
    for (int v : pick) facets.back().push_back(names[v]);
  }
  return SimplicialComplex::make(names, facets);
}

AbGroup random_group(Rng& rng) {
  const int torsion[] = {2, 3, 4, 6, 8};
  switch (rng.uniform(0, 3)) {
    case 0: return AbGroup::free_group(rng.uniform(1, 3));
    case 1: return AbGroup::cyclic(Int(torsion[rng.uniform(0, 4)]));
    case 2:
      return direct_sum({AbGroup::free_group(rng.uniform(1, 2)),
                         AbGroup::cyclic(Int(torsion[rng.uniform(0, 4)]))})
          .group;
    default: return AbGroup::free_group(1);
  }
}

CellularCosheaf random_cosheaf(Rng& rng, const FinPoset& p) {
  std::vector<CellularCosheaf> parts;
  int k = rng.uniform(1, 3);
  for (int i = 0; i < k; ++i)
    parts.push_back(skyscraper(p, rng.uniform(0, p.size() - 1), random_group(rng)));
  CellularCosheaf t = direct_sum_cosheaf(parts);

  int style = rng.uniform(0, 2);
  if (style == 0) return t;
  CellularCosheaf q = cokernel_functor(random_block_map(rng, t)).cosheaf;
  if (style == 1) return q;
  return kernel_functor(random_block_map(rng, q)).cosheaf;
}

CellularCosheaf random_free_sky_sum(Rng& rng, const FinPoset& p) {
  std::vector<CellularCosheaf> parts;
  int k = rng.uniform(1, 3);
  for (int i = 0; i < k; ++i)
    parts.push_back(skyscraper(p, rng.uniform(0, p.size() - 1),
                               AbGroup::free_group(rng.uniform(1, 3))));
  return direct_sum_cosheaf(parts);
}

CorpusOutcome run_crosscheck_corpus(std::uint64_t seed, int count, int max_vertices,
                                    int max_dim) {
  CorpusOutcome out;
  for (int i = 0; i < count; ++i) {
    Rng rng(mix(seed + static_cast<std::uint64_t>(i)));
    SimplicialComplex k = random_complex(rng, max_vertices, max_dim);
    CellularCosheaf f = random_cosheaf(rng, k.face_poset());
    CrosscheckRecord rec = crosscheck(k, f);
    ++out.instances;
    if (!rec.agree) {
      ++out.failures;
      if (out.first_failure.empty())
        out.first_failure = "instance " + std::to_string(i) + ": " + rec.note;
    }
  }
  return out;
}

}  // namespace coshom
