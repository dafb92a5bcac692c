#ifndef GALREL_LATTICE_HPP
#define GALREL_LATTICE_HPP

#include "creal.hpp"
#include "matrix.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace galrel {

/* Symmetric positive-definite form with certified entries.  When the form
   is known exactly (trace forms, untwisted metrics on integral bases) the
   rational matrix is kept alongside so enumeration can filter exactly. */
struct GramMatrix {
  int n = 0;
  std::vector<CReal> g;
  bool exact = false;
  QMatrix gq;

  GramMatrix() = default;
  explicit GramMatrix(int dim) : n(dim), g(size_t(dim) * dim, CReal::of(0L)) {}

  CReal &at(int i, int j) { return g[size_t(i) * n + j]; }
  const CReal &at(int i, int j) const { return g[size_t(i) * n + j]; }

  static GramMatrix from_exact(const QMatrix &m) {
    if (m.rows != m.cols) throw input_error("gram matrix must be square");
    GramMatrix gm(m.rows);
    gm.exact = true;
    gm.gq = m;
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) {
        if (m.at(i, j) != m.at(j, i)) throw input_error("gram matrix not symmetric");
        gm.at(i, j) = CReal::of(m.at(i, j));
      }
    return gm;
  }
};

namespace detail {

/* x ravelled through the form: x^T G x, exact. */
inline Rational form_value(const QMatrix &g, const std::vector<Integer> &x) {
  Rational q(0);
  for (int i = 0; i < g.rows; ++i) {
    if (x[size_t(i)] == 0) continue;
    for (int j = 0; j < g.cols; ++j) {
      if (x[size_t(j)] == 0) continue;
      q += g.at(i, j) * Rational(x[size_t(i)] * x[size_t(j)]);
    }
  }
  return q;
}

inline CReal form_value(const GramMatrix &g, const std::vector<Integer> &x) {
  CReal q = CReal::of(0L);
  for (int i = 0; i < g.n; ++i) {
    if (x[size_t(i)] == 0) continue;
    for (int j = 0; j < g.n; ++j) {
      if (x[size_t(j)] == 0) continue;
      q = q + g.at(i, j).mul_si(to_long(x[size_t(i)] * x[size_t(j)]));
    }
  }
  return q;
}

/* Exact dyadic rational from the full-precision midpoint, for running exact
   LLL on an inexact gram.  Going through a double here is not an option: a
   unit diagonal riding on entries of size 2^200 must survive. */
inline Rational dyadic_midpoint(const CReal &x) {
  if (!mpfr_number_p(x.raw())) throw precision_error("gram entry is not finite");
  if (mpfr_zero_p(x.raw())) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.raw());
  Rational q(m);
  if (e >= 0)
    q *= Rational(Integer(1) << (unsigned long)e);
  else
    q /= Rational(Integer(1) << (unsigned long)(-e));
  return q;
}

} // namespace detail

/* LLL with delta = 0.99 over exact rationals: basis rows generate the same
   lattice, Lovász condition guaranteed.  Gram-Schmidt data is recomputed
   after each basis change; dimensions here are tiny so clarity wins. */
inline ZMatrix lll_reduce(const ZMatrix &basis, const GramMatrix &gram) {
  if (basis.cols != gram.n) throw input_error("lll_reduce: shape mismatch");
  const int n = basis.rows;
  if (n <= 1) return basis;

  QMatrix G(gram.n, gram.n);
  if (gram.exact)
    G = gram.gq;
  else
    for (int i = 0; i < gram.n; ++i)
      for (int j = 0; j < gram.n; ++j) G.at(i, j) = detail::dyadic_midpoint(gram.at(i, j));

  ZMatrix b = basis;
  auto inner = [&](int i, int j) {
    Rational s(0);
    for (int p = 0; p < gram.n; ++p) {
      if (b.at(i, p) == 0) continue;
      for (int q = 0; q < gram.n; ++q)
        if (b.at(j, q) != 0) s += G.at(p, q) * Rational(b.at(i, p) * b.at(j, q));
    }
    return s;
  };

  std::vector<Rational> B(n);             /* |b_i*|^2 */
  QMatrix mu(n, n);
  auto gso = [&]() {
    for (int i = 0; i < n; ++i) {
      Rational Bi = inner(i, i);
      for (int j = 0; j < i; ++j) {
        Rational m = inner(i, j);
        for (int k = 0; k < j; ++k) m -= mu.at(i, k) * mu.at(j, k) * B[size_t(k)];
        if (B[size_t(j)] == 0) throw input_error("lll_reduce: gram not positive definite on span");
        mu.at(i, j) = m / B[size_t(j)];
        Bi -= mu.at(i, j) * mu.at(i, j) * B[size_t(j)];
      }
      if (Bi <= 0) throw input_error("lll_reduce: gram not positive definite on span");
      B[size_t(i)] = Bi;
    }
  };
  auto size_reduce = [&](int k, int l) {
    Rational m = mu.at(k, l);
    if (2 * abs(m) <= 1) return false;
    Rational half = m + Rational(1, 2);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
    for (int j = 0; j < b.cols; ++j) b.at(k, j) -= q * b.at(l, j);
    return true;
  };

  const Rational delta(99, 100);
  gso();
  long guard = 0;
  for (int k = 1; k < n;) {
    if (++guard > 200000) throw precision_error("lll_reduce: reduction stalled");
    if (size_reduce(k, k - 1)) gso();
    if (B[size_t(k)] < (delta - mu.at(k, k - 1) * mu.at(k, k - 1)) * B[size_t(k - 1)]) {
      for (int j = 0; j < b.cols; ++j) std::swap(b.at(k, j), b.at(k - 1, j));
      gso();
      k = std::max(1, k - 1);
    } else {
      bool changed = false;
      for (int l = k - 2; l >= 0; --l) changed |= size_reduce(k, l);
      if (changed) gso();
      ++k;
    }
  }
  return b;
}

struct ShortVectors {
  std::vector<std::vector<Integer>> vectors; /* one of each ± pair */
  bool modulo_sign = true;
};

namespace detail {

/* Fincke-Pohst over certified balls.  Pruning uses lower bounds only, so
   no vector within the true radius is ever skipped; acceptance filters
   exactly when the form is exact and otherwise keeps the borderline. */
inline ShortVectors enumerate_impl(const GramMatrix &gram, const CReal &radius_sq,
                                   const Rational *exact_radius) {
  const int n = gram.n;
  if (n == 0) return {};
  if (!(radius_sq.upper() > 0)) throw input_error("enumerate_short_vectors: radius must be positive");

  /* LLL preprocessing on the identity basis */
  ZMatrix U = lll_reduce(ZMatrix::identity(n), gram);
  GramMatrix R(n);
  R.exact = gram.exact;
  if (gram.exact) {
    QMatrix Uq = to_rational(U);
    R.gq = Uq * gram.gq * Uq.transpose();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) R.at(i, j) = CReal::of(R.gq.at(i, j));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CReal s = CReal::of(0L);
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) {
            Integer c = U.at(i, p) * U.at(j, q);
            if (c != 0) s = s + gram.at(p, q).mul_si(to_long(c));
          }
        R.at(i, j) = s;
      }
  }

  /* Gram-Schmidt: q(x) = sum_i d_i (x_i + sum_{j>i} mu_{ji} x_j)^2 */
  std::vector<CReal> d(size_t(n), CReal::of(0L));
  std::vector<std::vector<CReal>> mu(size_t(n), std::vector<CReal>(size_t(n), CReal::of(0L)));
  for (int i = 0; i < n; ++i) {
    CReal di = R.at(i, i);
    for (int k = 0; k < i; ++k) {
      CReal m = R.at(i, k);
      for (int l = 0; l < k; ++l) m = m - mu[size_t(i)][size_t(l)] * mu[size_t(k)][size_t(l)] * d[size_t(l)];
      mu[size_t(i)][size_t(k)] = m / d[size_t(k)];
      di = di - mu[size_t(i)][size_t(k)] * mu[size_t(i)][size_t(k)] * d[size_t(k)];
    }
    if (!di.surely_positive())
      throw input_error("enumerate_short_vectors: gram not certifiably positive definite");
    d[size_t(i)] = di;
  }

  ShortVectors out;
  std::vector<long> x(size_t(n), 0);
  std::vector<Integer> zero(size_t(n), Integer(0));

  /* depth-first from the last coordinate */
  struct Frame { long lo, hi, cur; CReal center, partial; };
  std::vector<Frame> st;
  auto open_level = [&](int i, const CReal &partial) -> std::optional<Frame> {
    CReal c = CReal::of(0L);
    for (int j = i + 1; j < n; ++j)
      if (x[size_t(j)] != 0) c = c + mu[size_t(j)][size_t(i)].mul_si(x[size_t(j)]);
    CReal slack = radius_sq - partial;
    double up = slack.upper();
    if (up < 0) return std::nullopt;
    double dlo = d[size_t(i)].lower();
    if (!(dlo > 0)) throw precision_error("enumerate_short_vectors: form bound lost to rounding");
    double t = std::sqrt(up / dlo) * (1 + 1e-12) + 1e-300;
    double clo = c.lower(), chi = c.upper();
    long lo = long(std::floor(-chi - t));
    long hi = long(std::ceil(-clo + t));
    return Frame{lo, hi, lo - 1, c, partial};
  };

  auto f0 = open_level(n - 1, CReal::of(0L));
  if (!f0) return out;
  st.push_back(*f0);
  while (!st.empty()) {
    Frame &f = st.back();
    int i = n - int(st.size());
    if (f.cur >= f.hi) {
      st.pop_back();
      continue;
    }
    ++f.cur;
    x[size_t(i)] = f.cur;
    CReal term = f.center + CReal::of(f.cur);
    CReal partial = f.partial + d[size_t(i)] * term * term;
    if (partial.lower() > radius_sq.upper()) continue;
    if (i > 0) {
      auto nf = open_level(i - 1, partial);
      if (nf) st.push_back(*nf);
      continue;
    }
    /* leaf: map back through U, canonicalize sign, filter */
    std::vector<Integer> v(size_t(gram.n), Integer(0));
    bool nonzero = false;
    for (int col = 0; col < gram.n; ++col) {
      Integer s(0);
      for (int row = 0; row < n; ++row)
        if (x[size_t(row)] != 0) s += Integer(x[size_t(row)]) * U.at(row, col);
      v[size_t(col)] = s;
      if (s != 0) nonzero = true;
    }
    if (!nonzero) continue;
    int sg = 0;
    for (auto &e : v)
      if (e != 0) { sg = sgn(e); break; }
    if (sg < 0) continue; /* the mirror image is or was visited */
    if (gram.exact) {
      Rational q = form_value(gram.gq, v);
      Rational cutoff;
      if (exact_radius)
        cutoff = *exact_radius;
      else
        mpq_set_d(cutoff.get_mpq_t(), radius_sq.upper());
      if (q > cutoff) continue;
    } else {
      CReal q = form_value(gram, v);
      if (q.lower() > radius_sq.upper()) continue;
    }
    out.vectors.push_back(std::move(v));
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

} // namespace detail

inline ShortVectors enumerate_short_vectors(const GramMatrix &gram, const CReal &radius_sq) {
  return detail::enumerate_impl(gram, radius_sq, nullptr);
}

inline ShortVectors enumerate_short_vectors(const GramMatrix &gram, const Rational &radius_sq) {
  if (!gram.exact)
    return detail::enumerate_impl(gram, CReal::of(radius_sq), nullptr);
  return detail::enumerate_impl(gram, CReal::of(radius_sq), &radius_sq);
}

} // namespace galrel

#endif
