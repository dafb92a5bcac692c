#ifndef GALREL_MATRIX_HPP
#define GALREL_MATRIX_HPP

#include "numeric.hpp"

#include <algorithm>
#include <vector>

namespace galrel {

template <class T> struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, T(0)) {}

  T &at(int i, int j) { return a[size_t(i) * cols + j]; }
  const T &at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  Mat transpose() const {
    Mat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Mat operator*(const Mat &o) const {
    if (cols != o.rows) throw input_error("matrix product shape mismatch");
    Mat m(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const T &x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j) m.at(i, j) += x * o.at(k, j);
      }
    return m;
  }

  std::vector<T> apply(const std::vector<T> &v) const {
    if (int(v.size()) != cols) throw input_error("matrix apply shape mismatch");
    std::vector<T> r(rows, T(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  bool operator==(const Mat &o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using ZMatrix = Mat<Integer>;
using QMatrix = Mat<Rational>;

inline QMatrix to_rational(const ZMatrix &m) {
  QMatrix q(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rational(m.a[i]);
  return q;
}

/* Gauss-Jordan to reduced row echelon form; returns pivot columns. */
inline std::vector<int> rref(QMatrix &m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rational inv = Rational(1) / m.at(r, c);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(QMatrix m) { return int(rref(m).size()); }

/* Clear denominators and divide by content; flip so the first nonzero is
   positive.  Deterministic normal form for kernel vectors and relations. */
inline std::vector<Integer> primitive_integer_vector(const std::vector<Rational> &v) {
  Integer den(1);
  for (auto &x : v) den = lcm(den, x.get_den());
  std::vector<Integer> w;
  Integer g(0);
  for (auto &x : v) {
    Integer z = x.get_num() * (den / x.get_den());
    g = gcd(g, z);
    w.push_back(z);
  }
  if (g == 0) return w;
  int s = 0;
  for (auto &z : w)
    if (z != 0) { s = sgn(z); break; }
  if (s < 0) g = -g;
  for (auto &z : w) z /= g;
  return w;
}

/* Basis of { v : M v = 0 } as primitive integer vectors, ordered by free
   column. */
inline std::vector<std::vector<Integer>> rational_kernel(QMatrix m) {
  int n = m.cols;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Integer>> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(int(r), c);
    basis.push_back(primitive_integer_vector(v));
  }
  return basis;
}

/* Column-style Hermite normal form: unimodular column operations only, so
   the column span (the lattice generated by the columns) is preserved.
   Result is upper triangular, pivots positive, entries right of a pivot
   reduced into [0, pivot). */
inline ZMatrix hnf(ZMatrix m) {
  int n = m.rows, cols = m.cols;
  auto colop = [&](int dst, int src, const Integer &q) { /* c_dst -= q c_src */
    for (int i = 0; i < n; ++i) m.at(i, dst) -= q * m.at(i, src);
  };
  int c = cols - 1;
  for (int row = n - 1; row >= 0 && c >= 0; --row) {
    /* gcd-combine entries of this row among columns 0..c into column c */
    for (;;) {
      int nz = -1, cnt = 0;
      Integer best;
      for (int j = 0; j <= c; ++j)
        if (m.at(row, j) != 0) {
          ++cnt;
          if (nz < 0 || abs(m.at(row, j)) < best) { nz = j; best = abs(m.at(row, j)); }
        }
      if (cnt == 0) { nz = -1; }
      if (cnt <= 1) {
        if (cnt == 0) break; /* row has no pivot; stay on same target column */
        for (int i = 0; i < n; ++i) std::swap(m.at(i, nz), m.at(i, c));
        if (m.at(row, c) < 0)
          for (int i = 0; i < n; ++i) m.at(i, c) = -m.at(i, c);
        /* reduce the entries to the right of the pivot */
        for (int j = c + 1; j < cols; ++j) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(row, j).get_mpz_t(), m.at(row, c).get_mpz_t());
          if (q != 0) colop(j, c, q);
        }
        --c;
        break;
      }
      for (int j = 0; j <= c; ++j) {
        if (j == nz || m.at(row, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m.at(row, j).get_mpz_t(), m.at(row, nz).get_mpz_t());
        if (q != 0) colop(j, nz, q);
      }
    }
  }
  /* drop zero columns on the left */
  int z = 0;
  while (z < cols) {
    bool zero = true;
    for (int i = 0; i < n; ++i)
      if (m.at(i, z) != 0) zero = false;
    if (!zero) break;
    ++z;
  }
  if (z == 0) return m;
  ZMatrix out(n, cols - z);
  for (int i = 0; i < n; ++i)
    for (int j = z; j < cols; ++j) out.at(i, j - z) = m.at(i, j);
  return out;
}

struct SnfResult {
  ZMatrix U, D, V; /* U M V = D, U and V unimodular */
};

/* Smith normal form with transform tracking. */
inline SnfResult snf(const ZMatrix &m0) {
  ZMatrix m = m0;
  int n = m.rows, c = m.cols;
  ZMatrix U = ZMatrix::identity(n), V = ZMatrix::identity(c);
  auto rowop = [&](int dst, int src, const Integer &q) {
    for (int j = 0; j < c; ++j) m.at(dst, j) -= q * m.at(src, j);
    for (int j = 0; j < n; ++j) U.at(dst, j) -= q * U.at(src, j);
  };
  auto colop = [&](int dst, int src, const Integer &q) {
    for (int i = 0; i < n; ++i) m.at(i, dst) -= q * m.at(i, src);
    for (int i = 0; i < c; ++i) V.at(i, dst) -= q * V.at(i, src);
  };
  auto rowswap = [&](int i1, int i2) {
    for (int j = 0; j < c; ++j) std::swap(m.at(i1, j), m.at(i2, j));
    for (int j = 0; j < n; ++j) std::swap(U.at(i1, j), U.at(i2, j));
  };
  auto colswap = [&](int j1, int j2) {
    for (int i = 0; i < n; ++i) std::swap(m.at(i, j1), m.at(i, j2));
    for (int i = 0; i < c; ++i) std::swap(V.at(i, j1), V.at(i, j2));
  };
  int t = 0;
  for (; t < std::min(n, c); ++t) {
    /* find smallest nonzero entry in the remaining block */
    int bi = -1, bj = -1;
    Integer best;
    for (int i = t; i < n; ++i)
      for (int j = t; j < c; ++j)
        if (m.at(i, j) != 0 && (bi < 0 || abs(m.at(i, j)) < best)) {
          bi = i; bj = j; best = abs(m.at(i, j));
        }
    if (bi < 0) break;
    rowswap(t, bi);
    colswap(t, bj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < n; ++i)
        if (m.at(i, t) != 0) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
          rowop(i, t, q);
          if (m.at(i, t) != 0) { rowswap(t, i); clean = false; }
        }
      for (int j = t + 1; j < c; ++j)
        if (m.at(t, j) != 0) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
          colop(j, t, q);
          if (m.at(t, j) != 0) { colswap(t, j); clean = false; }
        }
      if (clean) break;
    }
    if (m.at(t, t) < 0) {
      for (int j = 0; j < c; ++j) m.at(t, j) = -m.at(t, j);
      for (int j = 0; j < n; ++j) U.at(t, j) = -U.at(t, j);
    }
  }
  /* enforce the divisibility chain */
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i + 1 < t; ++i) {
      if (m.at(i + 1, i + 1) % m.at(i, i) == 0) continue;
      again = true;
      /* add column i+1 to column i, then re-clear the 2x2 block */
      for (int r = 0; r < n; ++r) m.at(r, i) += m.at(r, i + 1);
      for (int r = 0; r < c; ++r) V.at(r, i) += V.at(r, i + 1);
      for (;;) {
        bool clean = true;
        if (m.at(i + 1, i) != 0) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(i + 1, i).get_mpz_t(), m.at(i, i).get_mpz_t());
          rowop(i + 1, i, q);
          if (m.at(i + 1, i) != 0) { rowswap(i, i + 1); clean = false; }
        }
        if (m.at(i, i + 1) != 0) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(i, i + 1).get_mpz_t(), m.at(i, i).get_mpz_t());
          colop(i + 1, i, q);
          if (m.at(i, i + 1) != 0) { colswap(i, i + 1); clean = false; }
        }
        if (clean) break;
      }
      if (m.at(i, i) < 0) {
        for (int j = 0; j < c; ++j) m.at(i, j) = -m.at(i, j);
        for (int j = 0; j < n; ++j) U.at(i, j) = -U.at(i, j);
      }
      if (m.at(i + 1, i + 1) < 0) {
        for (int j = 0; j < c; ++j) m.at(i + 1, j) = -m.at(i + 1, j);
        for (int j = 0; j < n; ++j) U.at(i + 1, j) = -U.at(i + 1, j);
      }
    }
  }
  return {U, m, V};
}

/* Primitive basis of the integer kernel { v in Z^cols : M v = 0 }: the
   columns of V at the zero diagonal entries of the Smith form. */
inline std::vector<std::vector<Integer>> integer_kernel(const ZMatrix &m) {
  SnfResult s = snf(m);
  int r = std::min(m.rows, m.cols);
  std::vector<std::vector<Integer>> basis;
  for (int j = 0; j < m.cols; ++j) {
    if (j < r && s.D.at(j, j) != 0) continue;
    std::vector<Integer> v(m.cols);
    for (int i = 0; i < m.cols; ++i) v[i] = s.V.at(i, j);
    for (auto &x : v)
      if (x != 0) {
        if (x < 0)
          for (auto &y : v) y = -y;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational det(QMatrix m) {
  if (m.rows != m.cols) throw input_error("determinant of non-square matrix");
  Rational d(1);
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) return Rational(0);
    if (p != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rational inv = Rational(1) / m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Rational f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

inline Integer det(const ZMatrix &m) {
  Rational d = det(to_rational(m));
  if (d.get_den() != 1) throw input_error("integer determinant not integral");
  return d.get_num();
}

inline QMatrix inverse(const QMatrix &m) {
  if (m.rows != m.cols) throw input_error("inverse of non-square matrix");
  int n = m.rows;
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (int(piv.size()) != n || piv[n - 1] != n - 1) throw input_error("singular matrix");
  QMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

/* Solve M x = b over Q; throws if inconsistent or underdetermined. */
inline std::vector<Rational> solve(const QMatrix &m, const std::vector<Rational> &b) {
  QMatrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[size_t(i)];
  }
  auto piv = rref(aug);
  std::vector<Rational> x(m.cols, Rational(0));
  int r = int(piv.size());
  for (int i = 0; i < r; ++i) {
    if (piv[i] == m.cols) throw input_error("inconsistent linear system");
    x[piv[i]] = aug.at(i, m.cols);
  }
  if (r < m.cols) {
    /* permit only when the free coordinates are genuinely absent */
    for (int i = r; i < m.rows; ++i)
      if (aug.at(i, m.cols) != 0) throw input_error("inconsistent linear system");
    throw input_error("underdetermined linear system");
  }
  return x;
}

struct FinAbelianGroup {
  std::vector<Integer> factors; /* invariant factors d1 | d2 | ..., each > 1 */

  Integer order() const {
    Integer o(1);
    for (auto &d : factors) o *= d;
    return o;
  }
  bool trivial() const { return factors.empty(); }
};

/* Z^k modulo the column span of `relations` (k = relations.rows). */
inline FinAbelianGroup abelian_structure(const ZMatrix &relations) {
  SnfResult s = snf(relations);
  int r = std::min(relations.rows, relations.cols);
  int nonzero = 0;
  for (int i = 0; i < r; ++i)
    if (s.D.at(i, i) != 0) ++nonzero;
  if (nonzero < relations.rows)
    throw input_error("abelian_structure: quotient is infinite");
  FinAbelianGroup g;
  for (int i = 0; i < nonzero; ++i)
    if (s.D.at(i, i) > 1) g.factors.push_back(s.D.at(i, i));
  return g;
}

} // namespace galrel

#endif
