#pragma once

#include <coshom/cosheaf.hpp>
#include <coshom/homology.hpp>
#include <coshom/poset.hpp>

#include <cstdint>
#include <random>
#include <string>

namespace coshom {

/// Deterministic random stream: the engine is specified exactly by the
/// standard and the reduction avoids distribution objects, so a seed produces
/// the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform draw from [lo, hi], both ends included.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

FinPoset random_poset(Rng& rng, int max_elements);

SimplicialComplex random_complex(Rng& rng, int max_vertices, int max_dim);

/// Groups of rank up to three with torsion drawn from {2, 3, 4, 6, 8}.
AbGroup random_group(Rng& rng);

/// Sum of skyscrapers on random groups, possibly quotiented by a random
/// block map and cut down to a kernel again; always re-validated.
CellularCosheaf random_cosheaf(Rng& rng, const FinPoset& p);

/// Sum of skyscrapers on free groups only; projective, so everything above
/// degree zero must vanish for these.
CellularCosheaf random_free_sky_sum(Rng& rng, const FinPoset& p);

struct CorpusOutcome {
  int instances = 0;
  int failures = 0;
  std::string first_failure;  // "instance N: <note>", empty when clean
};

/// Cross-check `count` random complex/cosheaf pairs derived deterministically
/// from `seed`; every disagreement is counted and the first one described.
CorpusOutcome run_crosscheck_corpus(std::uint64_t seed, int count, int max_vertices = 6,
                                    int max_dim = 3);

}  // namespace coshom
