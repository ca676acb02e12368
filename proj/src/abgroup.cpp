#include <coshom/abgroup.hpp>

#include <coshom/errors.hpp>

#include <cassert>
#include <mutex>
#include <optional>
#include <sstream>

namespace coshom {

std::string IsoClass::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (free_rank == 1) {
    sep();
    os << "Z";
  } else if (free_rank > 1) {
    sep();
    os << "Z^" << free_rank;
  }
  for (const auto& d : torsion) {
    sep();
    os << "Z/" << d;
  }
  return os.str();
}

struct AbGroup::Impl {
  int gens = 0;
  IntMatrix relations;

  mutable std::once_flag iso_once, solver_once;
  mutable IsoClass iso;
  mutable std::optional<LatticeSolver> solver;

  const IsoClass& iso_class() const {
    std::call_once(iso_once, [&] {
      IntVec diag = snf_diagonal(relations);
      int nonzero = 0;
      for (const auto& d : diag) {
        if (d != 0) ++nonzero;
        if (d > 1) iso.torsion.push_back(d);
      }
      iso.free_rank = gens - nonzero;
    });
    return iso;
  }

  const LatticeSolver& lattice() const {
    std::call_once(solver_once, [&] { solver.emplace(relations); });
    return *solver;
  }
};

AbGroup::AbGroup() : AbGroup(0, IntMatrix(0, 0)) {}

AbGroup::AbGroup(int gens, IntMatrix relations) {
  if (gens < 0) throw input_error("group: negative generator count");
  if (relations.rows() != gens)
    throw input_error("group: relation matrix must have one row per generator");
  auto impl = std::make_shared<Impl>();
  impl->gens = gens;
  impl->relations = std::move(relations);
  impl_ = std::move(impl);
}

AbGroup AbGroup::free_group(int rank) { return AbGroup(rank, IntMatrix(rank, 0)); }

AbGroup AbGroup::cyclic(const Int& order) {
  if (order == 0) return free_group(1);
  IntMatrix rel(1, 1);
  rel.at(0, 0) = boost::multiprecision::abs(order);
  return AbGroup(1, std::move(rel));
}

int AbGroup::gens() const { return impl_->gens; }
const IntMatrix& AbGroup::relations() const { return impl_->relations; }
const IsoClass& AbGroup::iso_class() const { return impl_->iso_class(); }

bool AbGroup::represents_zero(const IntVec& v) const {
  if (static_cast<int>(v.size()) != impl_->gens)
    throw input_error("group: element length does not match generator count");
  return impl_->lattice().contains(v);
}

bool AbGroup::operator==(const AbGroup& o) const {
  if (impl_ == o.impl_) return true;
  return impl_->gens == o.impl_->gens && impl_->relations == o.impl_->relations;
}

AbHom::AbHom(AbGroup src, AbGroup tgt, IntMatrix m)
    : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(m)) {
  assert(m_.rows() == tgt_.gens() && m_.cols() == src_.gens());
}

bool AbHom::is_zero() const {
  for (int j = 0; j < m_.cols(); ++j)
    if (!tgt_.represents_zero(m_.col(j))) return false;
  return true;
}

namespace detail {
AbHom unchecked_hom(AbGroup source, AbGroup target, IntMatrix matrix) {
  return AbHom(std::move(source), std::move(target), std::move(matrix));
}
}  // namespace detail

AbHom make_hom(AbGroup source, AbGroup target, IntMatrix matrix) {
  if (matrix.rows() != target.gens() || matrix.cols() != source.gens())
    throw input_error("hom: matrix must be (target gens) x (source gens)");
  const IntMatrix& rel = source.relations();
  for (int j = 0; j < rel.cols(); ++j) {
    if (!target.represents_zero(matrix.apply(rel.col(j)))) {
      std::ostringstream os;
      os << "hom: image of source relation column " << j
         << " is not a relation of the target";
      throw input_error(os.str());
    }
  }
  return detail::unchecked_hom(std::move(source), std::move(target), std::move(matrix));
}

AbHom zero_hom(AbGroup source, AbGroup target) {
  IntMatrix m(target.gens(), source.gens());
  return detail::unchecked_hom(std::move(source), std::move(target), std::move(m));
}

AbHom identity_hom(AbGroup g) {
  IntMatrix m = IntMatrix::identity(g.gens());
  AbGroup copy = g;
  return detail::unchecked_hom(std::move(copy), std::move(g), std::move(m));
}

bool hom_equal(const AbHom& f, const AbHom& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw input_error("hom comparison: endpoints differ");
  IntMatrix diff = f.matrix() - g.matrix();
  for (int j = 0; j < diff.cols(); ++j)
    if (!f.target().represents_zero(diff.col(j))) return false;
  return true;
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target() == g.source())) throw input_error("compose: endpoints do not match");
  return detail::unchecked_hom(f.source(), g.target(), g.matrix() * f.matrix());
}

DirectSum direct_sum(const std::vector<AbGroup>& parts) {
  int total_gens = 0, total_rels = 0;
  for (const auto& p : parts) {
    total_gens += p.gens();
    total_rels += p.relations().cols();
  }
  IntMatrix rel(total_gens, total_rels);
  std::vector<int> offsets;
  int go = 0, ro = 0;
  for (const auto& p : parts) {
    offsets.push_back(go);
    rel.paste(go, ro, p.relations());
    go += p.gens();
    ro += p.relations().cols();
  }
  AbGroup sum(total_gens, std::move(rel));
  DirectSum out{sum, {}, std::move(offsets)};
  for (size_t i = 0; i < parts.size(); ++i) {
    IntMatrix inj(total_gens, parts[i].gens());
    inj.paste(out.offsets[i], 0, IntMatrix::identity(parts[i].gens()));
    out.injections.push_back(detail::unchecked_hom(parts[i], sum, std::move(inj)));
  }
  return out;
}

Kernel kernel(const AbHom& f) {
  // Generators: a basis of the lattice of representatives that f sends into
  // the target's relation lattice.  Relations: whatever combinations of those
  // generators are themselves source relations.
  IntMatrix p = preimage_basis(f.matrix(), f.target().relations());
  IntMatrix krel = preimage_basis(p, f.source().relations());
  AbGroup k(p.cols(), std::move(krel));
  AbHom incl = detail::unchecked_hom(k, f.source(), std::move(p));
  return {std::move(k), std::move(incl)};
}

Cokernel cokernel(const AbHom& f) {
  AbGroup q(f.target().gens(), hstack(f.target().relations(), f.matrix()));
  AbHom proj = detail::unchecked_hom(f.target(), q, IntMatrix::identity(f.target().gens()));
  return {std::move(q), std::move(proj)};
}

Image image(const AbHom& f) {
  Kernel k = kernel(cokernel(f).proj);
  return {std::move(k.group), std::move(k.incl)};
}

IsoClass homology_at(const AbHom& f, const AbHom& g) {
  if (!(f.target() == g.source()))
    throw input_error("homology: maps are not composable");
  if (!compose(g, f).is_zero())
    throw contract_error("homology: the pair does not compose to zero");
  Kernel k = kernel(g);
  // Express each image generator of f in kernel coordinates; solvable because
  // g kills the image of f.
  auto coords = solve_integer_many(k.incl.matrix(), f.matrix());
  if (!coords) throw contract_error("homology: image does not lift into the kernel");
  AbGroup quotient(k.group.gens(), hstack(k.group.relations(), *coords));
  return quotient.iso_class();
}

bool is_isomorphism(const AbHom& f) {
  return kernel(f).group.is_trivial() && cokernel(f).group.is_trivial();
}

Minimized minimize_presentation(const AbGroup& g) {
  auto parts = detail::snf_parts(g.relations(), true, false, true);
  const int n = g.gens();
  const int k = static_cast<int>(parts.diagonal.size());

  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (i >= k || parts.diagonal[i] != 1) kept.push_back(i);
  const int m = static_cast<int>(kept.size());

  std::vector<int> torsion_pos;
  for (int idx = 0; idx < m; ++idx)
    if (kept[idx] < k && parts.diagonal[kept[idx]] > 1) torsion_pos.push_back(idx);

  IntMatrix rel(m, static_cast<int>(torsion_pos.size()));
  for (size_t j = 0; j < torsion_pos.size(); ++j)
    rel.at(torsion_pos[j], static_cast<int>(j)) = parts.diagonal[kept[torsion_pos[j]]];
  AbGroup small(m, std::move(rel));

  IntMatrix to(m, n), from(n, m);
  for (int idx = 0; idx < m; ++idx)
    for (int j = 0; j < n; ++j) {
      to.at(idx, j) = parts.u.at(kept[idx], j);
      from.at(j, idx) = parts.u_inv.at(j, kept[idx]);
    }
  return {small, detail::unchecked_hom(g, small, std::move(to)),
          detail::unchecked_hom(small, g, std::move(from))};
}

}  // namespace coshom
