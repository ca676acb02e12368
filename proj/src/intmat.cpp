#include <coshom/intmat.hpp>

#include <coshom/errors.hpp>

#include <cassert>

namespace coshom {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
  assert(rows >= 0 && cols >= 0);
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
  int c = cols;
  if (c < 0) c = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  IntMatrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw input_error("matrix rows have inconsistent lengths");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::col(int j) const {
  assert(j >= 0 && j < cols_);
  IntVec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

IntMatrix IntMatrix::cols_slice(int begin, int end) const {
  assert(0 <= begin && begin <= end && end <= cols_);
  IntMatrix m(rows_, end - begin);
  for (int i = 0; i < rows_; ++i)
    for (int j = begin; j < end; ++j) m.at(i, j - begin) = at(i, j);
  return m;
}

IntMatrix IntMatrix::rows_slice(int begin, int end) const {
  assert(0 <= begin && begin <= end && end <= rows_);
  IntMatrix m(end - begin, cols_);
  for (int i = begin; i < end; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i - begin, j) = at(i, j);
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  assert(cols_ == o.rows_);
  IntMatrix m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Int& bkj = o.at(k, j);
        if (bkj != 0) m.at(i, j) += aik * bkj;
      }
    }
  return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  IntMatrix m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

IntVec IntMatrix::apply(const IntVec& x) const {
  assert(static_cast<int>(x.size()) == cols_);
  IntVec y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
  return y;
}

void IntMatrix::paste(int r0, int c0, const IntMatrix& m) {
  assert(r0 >= 0 && c0 >= 0 && r0 + m.rows_ <= rows_ && c0 + m.cols_ <= cols_);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) at(r0 + i, c0 + j) = m.at(i, j);
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  assert(a.rows() == b.rows());
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.paste(0, 0, a);
  m.paste(0, a.cols(), b);
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  assert(a.cols() == b.cols());
  IntMatrix m(a.rows() + b.rows(), a.cols());
  m.paste(0, 0, a);
  m.paste(a.rows(), 0, b);
  return m;
}

namespace detail {

namespace {

using boost::multiprecision::abs;

struct Reducer {
  IntMatrix d;
  IntMatrix u, v, u_inv;
  bool track_u, track_v, track_u_inv;

  Reducer(const IntMatrix& m, bool wu, bool wv, bool wui)
      : d(m), track_u(wu), track_v(wv), track_u_inv(wui) {
    if (track_u) u = IntMatrix::identity(m.rows());
    if (track_v) v = IntMatrix::identity(m.cols());
    if (track_u_inv) u_inv = IntMatrix::identity(m.rows());
  }

  // row i -= q * row t, mirrored on the transforms
  void row_addmul(int i, int t, const Int& q) {
    for (int j = 0; j < d.cols(); ++j) d.at(i, j) -= q * d.at(t, j);
    if (track_u)
      for (int j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(t, j);
    if (track_u_inv)  // inverse op: column t += q * column i
      for (int r = 0; r < u_inv.rows(); ++r) u_inv.at(r, t) += q * u_inv.at(r, i);
  }

  void row_swap(int i, int t) {
    if (i == t) return;
    for (int j = 0; j < d.cols(); ++j) std::swap(d.at(i, j), d.at(t, j));
    if (track_u)
      for (int j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(t, j));
    if (track_u_inv)
      for (int r = 0; r < u_inv.rows(); ++r) std::swap(u_inv.at(r, i), u_inv.at(r, t));
  }

  void row_negate(int i) {
    for (int j = 0; j < d.cols(); ++j) d.at(i, j) = -d.at(i, j);
    if (track_u)
      for (int j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
    if (track_u_inv)
      for (int r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
  }

  // col j -= q * col t, mirrored on v
  void col_addmul(int j, int t, const Int& q) {
    for (int i = 0; i < d.rows(); ++i) d.at(i, j) -= q * d.at(i, t);
    if (track_v)
      for (int i = 0; i < v.rows(); ++i) v.at(i, j) -= q * v.at(i, t);
  }

  void col_swap(int j, int t) {
    if (j == t) return;
    for (int i = 0; i < d.rows(); ++i) std::swap(d.at(i, j), d.at(i, t));
    if (track_v)
      for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, t));
  }

  bool find_pivot(int t, int& pi, int& pj) const {
    pi = pj = -1;
    for (int i = t; i < d.rows(); ++i)
      for (int j = t; j < d.cols(); ++j) {
        const Int& x = d.at(i, j);
        if (x == 0) continue;
        if (pi < 0 || abs(x) < abs(d.at(pi, pj))) {
          pi = i;
          pj = j;
          if (abs(x) == 1) return true;
        }
      }
    return pi >= 0;
  }

  void run() {
    const int steps = std::min(d.rows(), d.cols());
    for (int t = 0; t < steps; ++t) {
      int pi, pj;
      if (!find_pivot(t, pi, pj)) break;
      while (true) {
        row_swap(pi, t);
        col_swap(pj, t);
        bool dirty = false;
        for (int i = t + 1; i < d.rows(); ++i) {
          if (d.at(i, t) == 0) continue;
          Int q = d.at(i, t) / d.at(t, t);
          if (q != 0) row_addmul(i, t, q);
          if (d.at(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < d.cols(); ++j) {
          if (d.at(t, j) == 0) continue;
          Int q = d.at(t, j) / d.at(t, t);
          if (q != 0) col_addmul(j, t, q);
          if (d.at(t, j) != 0) dirty = true;
        }
        if (dirty) {
          find_pivot(t, pi, pj);
          continue;
        }
        // Pivot now isolated; absorb any entry it does not divide.
        int bi = -1;
        for (int i = t + 1; i < d.rows() && bi < 0; ++i)
          for (int j = t + 1; j < d.cols(); ++j)
            if (d.at(i, j) % d.at(t, t) != 0) {
              bi = i;
              break;
            }
        if (bi < 0) break;
        row_addmul(t, bi, Int(-1));  // row t += row bi
        pi = t;
        pj = t;
      }
      if (d.at(t, t) < 0) row_negate(t);
    }
  }
};

}  // namespace

SnfParts snf_parts(const IntMatrix& m, bool want_u, bool want_v, bool want_u_inv) {
  Reducer red(m, want_u, want_v, want_u_inv);
  red.run();
  SnfParts out;
  out.d = std::move(red.d);
  const int k = std::min(out.d.rows(), out.d.cols());
  out.diagonal.resize(k);
  for (int i = 0; i < k; ++i) out.diagonal[i] = out.d.at(i, i);
  if (want_u) out.u = std::move(red.u);
  if (want_v) out.v = std::move(red.v);
  if (want_u_inv) out.u_inv = std::move(red.u_inv);
  return out;
}

}  // namespace detail

SnfResult snf(const IntMatrix& m) {
  auto parts = detail::snf_parts(m, true, true, false);
  return SnfResult{std::move(parts.u), std::move(parts.d), std::move(parts.v),
                   std::move(parts.diagonal)};
}

IntVec snf_diagonal(const IntMatrix& m) {
  return detail::snf_parts(m, false, false, false).diagonal;
}

namespace {

// Divide u*b through the diagonal; nullopt when some coordinate obstructs.
std::optional<IntVec> diagonal_solve(const detail::SnfParts& parts, int ncols, const IntVec& c) {
  IntVec y(ncols, 0);
  const int k = static_cast<int>(parts.diagonal.size());
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    const Int d = i < k ? parts.diagonal[i] : Int(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    }
  }
  return y;
}

}  // namespace

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
  if (static_cast<int>(b.size()) != m.rows())
    throw input_error("solve: right-hand side length does not match row count");
  auto parts = detail::snf_parts(m, true, true, false);
  auto y = diagonal_solve(parts, m.cols(), parts.u.apply(b));
  if (!y) return std::nullopt;
  return parts.v.apply(*y);
}

std::optional<IntMatrix> solve_integer_many(const IntMatrix& m, const IntMatrix& rhs) {
  if (rhs.rows() != m.rows())
    throw input_error("solve: right-hand side rows do not match row count");
  auto parts = detail::snf_parts(m, true, true, false);
  IntMatrix x(m.cols(), rhs.cols());
  for (int j = 0; j < rhs.cols(); ++j) {
    auto y = diagonal_solve(parts, m.cols(), parts.u.apply(rhs.col(j)));
    if (!y) return std::nullopt;
    IntVec xj = parts.v.apply(*y);
    for (int i = 0; i < m.cols(); ++i) x.at(i, j) = xj[i];
  }
  return x;
}

bool in_column_lattice(const IntMatrix& m, const IntVec& b) {
  if (static_cast<int>(b.size()) != m.rows())
    throw input_error("lattice query: vector length does not match row count");
  return LatticeSolver(m).contains(b);
}

IntMatrix kernel_basis(const IntMatrix& m) {
  auto parts = detail::snf_parts(m, false, true, false);
  int rank = 0;
  for (const auto& d : parts.diagonal)
    if (d != 0) ++rank;
  return parts.v.cols_slice(rank, m.cols());
}

IntMatrix preimage_basis(const IntMatrix& m, const IntMatrix& lat) {
  if (lat.rows() != m.rows())
    throw input_error("preimage: lattice ambient dimension does not match map target");
  IntMatrix k = kernel_basis(hstack(m, lat));
  IntMatrix p = k.rows_slice(0, m.cols());
  // Drop columns that project to zero; they witness relations among the
  // lattice generators, not preimages.
  std::vector<int> keep;
  for (int j = 0; j < p.cols(); ++j) {
    bool zero = true;
    for (int i = 0; i < p.rows() && zero; ++i)
      if (p.at(i, j) != 0) zero = false;
    if (!zero) keep.push_back(j);
  }
  IntMatrix out(m.cols(), static_cast<int>(keep.size()));
  for (int jj = 0; jj < out.cols(); ++jj)
    for (int i = 0; i < out.rows(); ++i) out.at(i, jj) = p.at(i, keep[jj]);
  return out;
}

LatticeSolver::LatticeSolver(const IntMatrix& lat) : rows_(lat.rows()), rank_(0) {
  auto parts = detail::snf_parts(lat, true, false, false);
  u_ = std::move(parts.u);
  diagonal_ = std::move(parts.diagonal);
  for (const auto& d : diagonal_)
    if (d != 0) ++rank_;
}

bool LatticeSolver::contains(const IntVec& b) const {
  if (static_cast<int>(b.size()) != rows_)
    throw input_error("lattice query: vector length does not match row count");
  IntVec c = u_.apply(b);
  const int k = static_cast<int>(diagonal_.size());
  for (int i = 0; i < rows_; ++i) {
    const Int d = i < k ? diagonal_[i] : Int(0);
    if (d == 0 ? c[i] != 0 : c[i] % d != 0) return false;
  }
  return true;
}

}  // namespace coshom
