#pragma once

// Independent reference implementations used only by tests.  Nothing here may
// call into the library's Smith/solve machinery: these are the second opinion.

#include <coshom/intmat.hpp>

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using coshom::Int;
using coshom::IntMatrix;
using coshom::IntVec;

// Deterministic test RNG.  Modulo reduction instead of std::uniform_int_distribution
// so that streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  IntMatrix matrix(int rows, int cols, int lo, int hi) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = uniform(lo, hi);
    return m;
  }

  IntVec vec(int n, int lo, int hi) {
    IntVec v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

// Fraction-free (Bareiss) determinant.
inline Int det(IntMatrix a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::logic_error("det: square required");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { swap_row = i; break; }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

inline void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// gcd of all k-by-k minors (0 when every minor vanishes or k exceeds the dims).
inline Int minor_gcd(const IntMatrix& m, int k) {
  if (k > m.rows() || k > m.cols()) return 0;
  Int g = 0;
  combinations(m.rows(), k, [&](const std::vector<int>& ri) {
    combinations(m.cols(), k, [&](const std::vector<int>& ci) {
      if (g == 1) return;
      IntMatrix sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
      g = boost::multiprecision::gcd(g, det(sub));
    });
  });
  return g;
}

// Rank over the rationals, fraction-free elimination.
inline int rank_q(IntMatrix a) {
  const int m = a.rows(), n = a.cols();
  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (a.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < n; ++j) std::swap(a.at(rank, j), a.at(piv, j));
    for (int i = rank + 1; i < m; ++i) {
      for (int j = col + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(rank, col) - a.at(i, col) * a.at(rank, j)) / prev;
      a.at(i, col) = 0;
    }
    prev = a.at(rank, col);
    ++rank;
  }
  return rank;
}

// Rank of (a mod p) over the prime field F_p.
inline int rank_mod_p(const IntMatrix& a, std::int64_t p) {
  const int m = a.rows(), n = a.cols();
  std::vector<std::vector<std::int64_t>> w(m, std::vector<std::int64_t>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      Int r = a.at(i, j) % p;
      if (r < 0) r += p;
      w[i][j] = static_cast<std::int64_t>(r);
    }
  auto inv = [&](std::int64_t x) {  // p prime, x != 0
    std::int64_t r = 1, e = p - 2, b = x % p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (w[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(w[rank], w[piv]);
    std::int64_t s = inv(w[rank][col]);
    for (int j = col; j < n; ++j) w[rank][j] = w[rank][j] * s % p;
    for (int i = 0; i < m; ++i) {
      if (i == rank || w[i][col] == 0) continue;
      std::int64_t f = w[i][col];
      for (int j = col; j < n; ++j) w[i][j] = ((w[i][j] - f * w[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Column-style Hermite reduction: unimodular column operations bring m to an
// echelon matrix whose nonzero columns are a basis of the column lattice.
inline IntMatrix hermite_basis(IntMatrix a) {
  const int m = a.rows(), n = a.cols();
  auto colswap = [&](int x, int y) {
    for (int i = 0; i < m; ++i) std::swap(a.at(i, x), a.at(i, y));
  };
  auto coladd = [&](int dst, int src, const Int& q) {  // col dst += q * col src
    for (int i = 0; i < m; ++i) a.at(i, dst) += q * a.at(i, src);
  };
  int c = 0;
  for (int r = 0; r < m && c < n; ++r) {
    while (true) {
      int best = -1;
      for (int j = c; j < n; ++j)
        if (a.at(r, j) != 0 &&
            (best < 0 || boost::multiprecision::abs(a.at(r, j)) <
                             boost::multiprecision::abs(a.at(r, best))))
          best = j;
      if (best < 0) break;
      if (best != c) colswap(best, c);
      bool clean = true;
      for (int j = c + 1; j < n; ++j) {
        if (a.at(r, j) == 0) continue;
        Int q = a.at(r, j) / a.at(r, c);
        if (q != 0) coladd(j, c, -q);
        if (a.at(r, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (c < n && a.at(r, c) != 0) {
      if (a.at(r, c) < 0)
        for (int i = 0; i < m; ++i) a.at(i, c) = -a.at(i, c);
      ++c;
    }
  }
  return a.cols_slice(0, c);  // echelon columns; the rest are zero
}

// Solve h * x = y for h as produced by hermite_basis (independent columns,
// strictly increasing pivot rows).  Returns false when no solution exists.
inline bool hermite_solve(const IntMatrix& h, IntVec y, IntVec& x_out) {
  const int m = h.rows(), n = h.cols();
  x_out.assign(n, 0);
  std::vector<int> pivot_row(n, -1);
  for (int j = 0, r = 0; j < n; ++j) {
    while (r < m && h.at(r, j) == 0) ++r;
    pivot_row[j] = r;
  }
  int j = 0;
  for (int r = 0; r < m; ++r) {
    if (j < n && pivot_row[j] == r) {
      if (y[r] % h.at(r, j) != 0) return false;
      Int q = y[r] / h.at(r, j);
      x_out[j] = q;
      for (int i = r; i < m; ++i) y[i] -= q * h.at(i, j);
      ++j;
    }
    if (y[r] != 0) return false;
  }
  return true;
}

// Columnwise hermite_solve; false when any column fails.
inline bool hermite_solve_many(const IntMatrix& h, const IntMatrix& y, IntMatrix& x_out) {
  x_out = IntMatrix(h.cols(), y.cols());
  for (int j = 0; j < y.cols(); ++j) {
    IntVec col(y.rows());
    for (int i = 0; i < y.rows(); ++i) col[i] = y.at(i, j);
    IntVec x;
    if (!hermite_solve(h, col, x)) return false;
    for (int i = 0; i < h.cols(); ++i) x_out.at(i, j) = x[i];
  }
  return true;
}

}  // namespace oracle
