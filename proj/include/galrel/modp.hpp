#ifndef GALREL_MODP_HPP
#define GALREL_MODP_HPP

#include "numeric.hpp"

#include <vector>

namespace galrel {

/* Arithmetic mod a prime that fits comfortably in a long (products are
   taken on values < 2^31, so no overflow). */
inline long fp_norm(long x, long p) {
  long r = x % p;
  return r < 0 ? r + p : r;
}

inline long fp_inv(long x, long p) {
  /* extended Euclid; p prime and x nonzero mod p */
  long a = fp_norm(x, p), b = p, u = 1, v = 0;
  if (a == 0) throw input_error("inverse of zero mod p");
  while (b) {
    long q = a / b;
    a -= q * b; std::swap(a, b);
    u -= q * v; std::swap(u, v);
  }
  return fp_norm(u, p);
}

struct FpMatrix {
  long p = 2;
  int rows = 0, cols = 0;
  std::vector<long> a;

  FpMatrix() = default;
  FpMatrix(long p_, int r, int c) : p(p_), rows(r), cols(c), a(size_t(r) * c, 0) {}

  long &at(int i, int j) { return a[size_t(i) * cols + j]; }
  long at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static FpMatrix identity(long p, int n) {
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  FpMatrix operator*(const FpMatrix &o) const {
    if (cols != o.rows || p != o.p) throw input_error("fp product shape mismatch");
    FpMatrix m(p, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        long x = at(i, k);
        if (!x) continue;
        for (int j = 0; j < o.cols; ++j) m.at(i, j) = (m.at(i, j) + x * o.at(k, j)) % p;
      }
    return m;
  }

  std::vector<long> apply(const std::vector<long> &v) const {
    std::vector<long> r(size_t(rows), 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[size_t(i)] = (r[size_t(i)] + at(i, j) * v[size_t(j)]) % p;
    return r;
  }

  FpMatrix pow(long e) const {
    FpMatrix r = identity(p, rows), b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      if (e > 1) b = b * b;
    }
    return r;
  }
};

/* Gauss-Jordan; returns pivot columns. */
inline std::vector<int> fp_rref(FpMatrix &m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    long inv = fp_inv(m.at(r, c), m.p);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv % m.p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      long f = m.at(i, c);
      if (!f) continue;
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = fp_norm(m.at(i, j) - f * m.at(r, j), m.p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int fp_rank(FpMatrix m) { return int(fp_rref(m).size()); }

/* basis of { v : M v = 0 }, one column vector per free column */
inline std::vector<std::vector<long>> fp_kernel(FpMatrix m) {
  auto pivots = fp_rref(m);
  std::vector<bool> is_pivot(size_t(m.cols), false);
  for (int c : pivots) is_pivot[size_t(c)] = true;
  std::vector<std::vector<long>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[size_t(c)]) continue;
    std::vector<long> v(size_t(m.cols), 0);
    v[size_t(c)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[size_t(pivots[r])] = fp_norm(-m.at(int(r), c), m.p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/* one solution of M x = b (free variables zero); throws if inconsistent */
inline std::vector<long> fp_solve(const FpMatrix &m, const std::vector<long> &b) {
  FpMatrix aug(m.p, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = fp_norm(b[size_t(i)], m.p);
  }
  auto pivots = fp_rref(aug);
  std::vector<long> x(size_t(m.cols), 0);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols) throw input_error("fp_solve: inconsistent system");
    x[size_t(pivots[r])] = aug.at(int(r), m.cols);
  }
  return x;
}

/* independent subset of the given column vectors (a basis of their span) */
inline std::vector<std::vector<long>> fp_span_basis(long p, const std::vector<std::vector<long>> &vecs) {
  if (vecs.empty()) return {};
  int dim = int(vecs[0].size());
  FpMatrix m(p, dim, int(vecs.size()));
  for (size_t j = 0; j < vecs.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, int(j)) = fp_norm(vecs[j][size_t(i)], p);
  auto pivots = fp_rref(m);
  std::vector<std::vector<long>> basis;
  for (int c : pivots) basis.push_back(vecs[size_t(c)]);
  return basis;
}

/* intersection of two column spans: solve A x = B y, read off A x */
inline std::vector<std::vector<long>> fp_span_intersection(long p,
                                                           const std::vector<std::vector<long>> &A,
                                                           const std::vector<std::vector<long>> &B) {
  if (A.empty() || B.empty()) return {};
  int dim = int(A[0].size());
  FpMatrix m(p, dim, int(A.size() + B.size()));
  for (size_t j = 0; j < A.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, int(j)) = fp_norm(A[j][size_t(i)], p);
  for (size_t j = 0; j < B.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, int(A.size() + j)) = fp_norm(-B[j][size_t(i)], p);
  std::vector<std::vector<long>> inter;
  for (auto &k : fp_kernel(m)) {
    std::vector<long> v(size_t(dim), 0);
    for (size_t j = 0; j < A.size(); ++j)
      for (int i = 0; i < dim; ++i) v[size_t(i)] = fp_norm(v[size_t(i)] + k[j] * A[j][size_t(i)], p);
    inter.push_back(std::move(v));
  }
  return fp_span_basis(p, inter);
}

/* membership of v in the column span of A */
inline bool fp_in_span(long p, const std::vector<std::vector<long>> &A, const std::vector<long> &v) {
  std::vector<std::vector<long>> all = A;
  all.push_back(v);
  return fp_span_basis(p, all).size() == fp_span_basis(p, A).size();
}

} // namespace galrel

#endif
