#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace coshom {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense integer matrix, row-major.  Zero-sized dimensions are legal and show
/// up routinely: presentations of trivial groups, boundaries of empty degrees.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);

  static IntMatrix identity(int n);
  /// Build from explicit rows; ragged input throws.  Meant for literals.
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  IntVec col(int j) const;
  IntMatrix cols_slice(int begin, int end) const;  // columns [begin, end)
  IntMatrix rows_slice(int begin, int end) const;  // rows [begin, end)
  IntMatrix transpose() const;

  bool is_zero() const;
  bool operator==(const IntMatrix& o) const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntVec apply(const IntVec& x) const;  // matrix * column vector

  /// Paste `m` so its (0,0) lands at (r0,c0); target must already be large enough.
  void paste(int r0, int c0, const IntMatrix& m);

 private:
  int rows_ = 0, cols_ = 0;
  IntVec a_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

struct SnfResult {
  IntMatrix u;        // unimodular left transform
  IntMatrix d;        // diagonal normal form, u * m * v == d
  IntMatrix v;        // unimodular right transform
  IntVec diagonal;    // length min(rows, cols); nonnegative, d_i | d_{i+1}, zeros trail
};

/// Smith normal form with both transforms.
SnfResult snf(const IntMatrix& m);

/// Diagonal of the Smith form only (no transform bookkeeping; cheaper).
IntVec snf_diagonal(const IntMatrix& m);

/// Some x with m*x = b, or nullopt when no integer solution exists.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b);

/// Columnwise solve: X with m*X = rhs, or nullopt if any column has no solution.
std::optional<IntMatrix> solve_integer_many(const IntMatrix& m, const IntMatrix& rhs);

/// True iff b is an integer combination of the columns of m.
bool in_column_lattice(const IntMatrix& m, const IntVec& b);

/// Columns spanning the integer kernel {x : m*x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

/// Columns generating the preimage lattice {x : m*x lies in the column
/// lattice of lat}.  Zero columns are dropped.
IntMatrix preimage_basis(const IntMatrix& m, const IntMatrix& lat);

namespace detail {

/// Smith reduction with selectable transform accumulation.  `u_inv` is the
/// inverse of `u`, maintained alongside it; presentation compression needs
/// both directions without a separate inversion pass.
struct SnfParts {
  IntMatrix d;
  IntVec diagonal;
  IntMatrix u, v, u_inv;  // each empty unless requested
};

SnfParts snf_parts(const IntMatrix& m, bool want_u, bool want_v, bool want_u_inv);

}  // namespace detail

/// Answers repeated membership queries against one fixed column lattice.
/// One Smith reduction up front, then each query costs a matrix-vector product.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& lat);
  bool contains(const IntVec& b) const;
  int rank() const { return rank_; }

 private:
  IntMatrix u_;
  IntVec diagonal_;
  int rows_;
  int rank_;
};

}  // namespace coshom
