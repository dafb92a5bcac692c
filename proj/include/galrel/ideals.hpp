#ifndef GALREL_IDEALS_HPP
#define GALREL_IDEALS_HPP

/* Fractional ideals in column HNF over the integral basis.  Primes split
   through the decomposition of O/pO (radical = kernel of the p-power map,
   then eigenspace splitting of the etale quotient), so primes dividing the
   power-basis conductor need no special treatment.  Class groups are built
   unconditionally: every class has an integral representative of norm below
   the Minkowski bound, representatives are separated by certified
   principality tests, and the group structure is the Smith form of the
   relation lattice of small principal ideals. */

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "modp.hpp"
#include "number_field.hpp"
#include "units.hpp"

namespace galrel {

struct Ideal {
  FieldPtr K;
  ZMatrix basis{0, 0}; /* columns: Z-basis in integral coordinates, HNF */
  Integer den = 1;     /* the module is (1/den) * (column lattice) */
};

namespace detail {

inline std::vector<Integer> integral_coords_int(const FieldElement &x) {
  auto q = x.K->integral_coords(x);
  std::vector<Integer> z;
  for (auto &c : q) {
    if (c.get_den() != 1) throw input_error("element is not integral");
    z.push_back(c.get_num());
  }
  return z;
}

/* columns of the multiplication-by-x map on the integral basis */
inline ZMatrix mult_matrix(const FieldElement &x) {
  const auto &K = *x.K;
  ZMatrix m(K.n, K.n);
  for (int j = 0; j < K.n; ++j) {
    auto col = integral_coords_int(x * K.basis_element(j));
    for (int i = 0; i < K.n; ++i) m.at(i, j) = col[size_t(i)];
  }
  return m;
}

} // namespace detail

/* canonical form: HNF basis, positive denominator, content coprime to it */
inline Ideal ideal_from_columns(const FieldPtr &K, const ZMatrix &cols, Integer den = 1) {
  ZMatrix h = hnf(cols);
  if (h.cols != K->n) throw input_error("ideal lattice does not have full rank");
  if (den == 0) throw input_error("zero denominator");
  if (den < 0) den = -den; /* the column lattice is sign-invariant */
  Integer g = den;
  for (auto &v : h.a) g = gcd(g, v);
  if (g > 1) {
    for (auto &v : h.a) v /= g;
    den /= g;
  }
  return Ideal{K, h, den};
}

inline Ideal whole_ring(const FieldPtr &K) {
  return Ideal{K, ZMatrix::identity(K->n), 1};
}

inline Ideal principal_ideal(const FieldElement &x) {
  if (poly_is_zero(x.c)) throw input_error("the zero ideal is not supported");
  const FieldPtr &K = x.K;
  Integer d = 1;
  for (auto &c : K->integral_coords(x)) d = lcm(d, c.get_den());
  FieldElement xd = x * K->element(QPoly{Rational(d)});
  ZMatrix m = detail::mult_matrix(xd);
  return ideal_from_columns(K, m, d);
}

inline bool ideal_is_integral(const Ideal &I) { return I.den == 1; }

inline Rational ideal_norm(const Ideal &I) {
  Integer d = 1;
  for (int i = 0; i < I.basis.rows; ++i) d *= I.basis.at(i, i);
  return make_rational(d, pow_ui(I.den, (unsigned long)I.K->n));
}

inline Integer ideal_norm_integral(const Ideal &I) {
  Rational n = ideal_norm(I);
  if (n.get_den() != 1) throw input_error("ideal is not integral");
  return n.get_num();
}

inline bool ideal_eq(const Ideal &A, const Ideal &B) {
  return A.den == B.den && A.basis == B.basis;
}

/* membership of an integral-coordinate vector by back substitution */
inline bool lattice_contains(const ZMatrix &h, const std::vector<Integer> &v0) {
  int n = h.rows;
  std::vector<Integer> v = v0;
  for (int i = n - 1; i >= 0; --i) {
    if (v[size_t(i)] % h.at(i, i) != 0) return false;
    Integer q = v[size_t(i)] / h.at(i, i);
    for (int k = 0; k <= i; ++k) v[size_t(k)] -= q * h.at(k, i);
  }
  return true;
}

inline bool ideal_contains(const Ideal &A, const Ideal &B) {
  /* B subset A as modules: den-cleared columns of B in A's lattice */
  if (!(A.K == B.K)) throw input_error("ideals live in different fields");
  int n = A.K->n;
  for (int j = 0; j < n; ++j) {
    std::vector<Integer> v;
    for (int i = 0; i < n; ++i) v.push_back(B.basis.at(i, j) * A.den);
    if (B.den != 1)
      for (auto &c : v) {
        if (c % B.den != 0) return false;
        c /= B.den;
      }
    if (!lattice_contains(A.basis, v)) return false;
  }
  return true;
}

inline bool ideal_contains_element(const Ideal &A, const FieldElement &x) {
  return ideal_contains(A, principal_ideal(x));
}

inline Ideal ideal_mul(const Ideal &A, const Ideal &B) {
  if (!(A.K == B.K)) throw input_error("ideals live in different fields");
  const FieldPtr &K = A.K;
  int n = K->n;
  ZMatrix cols(n, n * n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> ci(n);
    for (int t = 0; t < n; ++t) ci[size_t(t)] = Rational(A.basis.at(t, i));
    FieldElement x = K->from_integral_coords(ci);
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> cj(n);
      for (int t = 0; t < n; ++t) cj[size_t(t)] = Rational(B.basis.at(t, j));
      auto prod = detail::integral_coords_int(x * K->from_integral_coords(cj));
      for (int t = 0; t < n; ++t) cols.at(t, i * n + j) = prod[size_t(t)];
    }
  }
  return ideal_from_columns(K, cols, A.den * B.den);
}

inline Ideal ideal_pow(const Ideal &A, long e) {
  if (e < 0) throw input_error("ideal_pow wants a nonnegative exponent");
  Ideal r = whole_ring(A.K), b = A;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = ideal_mul(r, b);
    if (e > 1) b = ideal_mul(b, b);
  }
  return r;
}

/* N(A) * A^{-1} for integral A: the integral ideal {y : yA in N(A) O} */
inline Ideal ideal_tilde(const Ideal &A) {
  if (!ideal_is_integral(A)) throw input_error("ideal_tilde wants an integral ideal");
  const FieldPtr &K = A.K;
  int n = K->n;
  Integer N = ideal_norm_integral(A);
  /* stacked congruences M_j y = 0 mod N, M_j = multiplication by column j */
  ZMatrix big(n * n, n + n * n);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> cj(n);
    for (int t = 0; t < n; ++t) cj[size_t(t)] = Rational(A.basis.at(t, j));
    ZMatrix M = detail::mult_matrix(K->from_integral_coords(cj));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) big.at(j * n + r, c) = M.at(r, c);
  }
  for (int r = 0; r < n * n; ++r) big.at(r, n + r) = N;
  auto ker = integer_kernel(big);
  ZMatrix cols(n, int(ker.size()));
  for (size_t j = 0; j < ker.size(); ++j)
    for (int i = 0; i < n; ++i) cols.at(i, int(j)) = ker[j][size_t(i)];
  Ideal T = ideal_from_columns(K, cols, 1);
  /* (1/N) T A = O is the defining property; check it */
  Ideal prod = ideal_mul(T, A);
  ZMatrix nid = ZMatrix::identity(n);
  for (int i = 0; i < n; ++i) nid.at(i, i) = N;
  if (!(prod.den == 1 && prod.basis == nid))
    throw precision_error("ideal inverse failed its defining identity");
  return T;
}

inline Ideal ideal_inverse(const Ideal &A) {
  Ideal A0{A.K, A.basis, 1};
  Integer N = ideal_norm_integral(A0);
  Ideal T = ideal_tilde(A0);
  ZMatrix cols = T.basis;
  for (auto &v : cols.a) v *= A.den;
  return ideal_from_columns(A.K, cols, N);
}

inline Ideal apply(const Automorphism &s, const Ideal &A) {
  const FieldPtr &K = A.K;
  int n = K->n;
  ZMatrix cols(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> cj(n);
    for (int t = 0; t < n; ++t) cj[size_t(t)] = Rational(A.basis.at(t, j));
    auto im = detail::integral_coords_int(apply(s, K->from_integral_coords(cj)));
    for (int i = 0; i < n; ++i) cols.at(i, j) = im[size_t(i)];
  }
  return ideal_from_columns(K, cols, A.den);
}

/* ---- prime splitting ------------------------------------------------- */

struct PrimeFactor {
  Ideal P;
  int e = 1, f = 1;
};

namespace detail {

/* O/pO with multiplication through the exact structure constants */
struct FpAlgebra {
  long p = 2;
  int n = 0;
  std::vector<std::vector<std::vector<long>>> table;
  std::vector<long> unit;

  FpAlgebra(const NumberField &K, long p_) : p(p_), n(K.n) {
    table.assign(size_t(n), std::vector<std::vector<long>>(size_t(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto c = integral_coords_int(K.basis_element(i) * K.basis_element(j));
        std::vector<long> row(size_t(n), 0);
        for (int t = 0; t < n; ++t)
          row[size_t(t)] = long(mpz_fdiv_ui(c[size_t(t)].get_mpz_t(), (unsigned long)p));
        table[size_t(i)][size_t(j)] = row;
      }
    auto one = integral_coords_int(K.one());
    unit.assign(size_t(n), 0);
    for (int t = 0; t < n; ++t)
      unit[size_t(t)] = long(mpz_fdiv_ui(one[size_t(t)].get_mpz_t(), (unsigned long)p));
  }

  std::vector<long> mul(const std::vector<long> &u, const std::vector<long> &v) const {
    std::vector<long> w(size_t(n), 0);
    for (int i = 0; i < n; ++i) {
      if (u[size_t(i)] == 0) continue;
      for (int j = 0; j < n; ++j) {
        long c = u[size_t(i)] * v[size_t(j)] % p;
        if (c == 0) continue;
        const auto &row = table[size_t(i)][size_t(j)];
        for (int t = 0; t < n; ++t) w[size_t(t)] = (w[size_t(t)] + c * row[size_t(t)]) % p;
      }
    }
    return w;
  }

  std::vector<long> pow(std::vector<long> b, long e) const {
    std::vector<long> r = unit;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = mul(r, b);
      if (e > 1) b = mul(b, b);
    }
    return r;
  }
};

/* split a commutative etale F_p-algebra (given by a basis inside the ambient
   FpAlgebra modulo the radical) into its field components */
struct EtaleSplitter {
  const FpAlgebra &A;
  long p;
  std::vector<std::vector<long>> rad; /* radical basis in ambient coords */

  /* reduce an ambient vector modulo the radical against a component basis:
     solve [W | rad] c = v and keep the W part */
  std::vector<long> in_coords(const std::vector<std::vector<long>> &W,
                              const std::vector<long> &v) const {
    int dim = A.n, d = int(W.size()), r = int(rad.size());
    FpMatrix m(p, dim, d + r);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < dim; ++i) m.at(i, j) = W[size_t(j)][size_t(i)];
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < dim; ++i) m.at(i, d + j) = rad[size_t(j)][size_t(i)];
    auto sol = fp_solve(m, v);
    return std::vector<long>(sol.begin(), sol.begin() + d);
  }

  /* multiplication inside the component, coordinates over W */
  std::vector<long> mul_in(const std::vector<std::vector<long>> &W,
                           const std::vector<long> &a, const std::vector<long> &b) const {
    int dim = A.n, d = int(W.size());
    std::vector<long> va(size_t(dim), 0), vb(size_t(dim), 0);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < dim; ++i) {
        va[size_t(i)] = (va[size_t(i)] + a[size_t(j)] * W[size_t(j)][size_t(i)]) % p;
        vb[size_t(i)] = (vb[size_t(i)] + b[size_t(j)] * W[size_t(j)][size_t(i)]) % p;
      }
    return in_coords(W, A.mul(va, vb));
  }

  void split(std::vector<std::vector<long>> W, std::vector<std::vector<std::vector<long>>> &out) const {
    int d = int(W.size());
    /* Frobenius on the component: x -> x^p in component coordinates */
    FpMatrix F(p, d, d);
    for (int j = 0; j < d; ++j) {
      std::vector<long> amb(size_t(A.n), 0);
      for (int i = 0; i < A.n; ++i) amb[size_t(i)] = W[size_t(j)][size_t(i)];
      auto fr = in_coords(W, A.pow(amb, p));
      for (int i = 0; i < d; ++i) F.at(i, j) = fr[size_t(i)];
    }
    FpMatrix FmI = F;
    for (int i = 0; i < d; ++i) FmI.at(i, i) = fp_norm(FmI.at(i, i) - 1, p);
    auto fixed = fp_kernel(FmI);
    if (int(fixed.size()) == 1) { /* a field */
      out.push_back(std::move(W));
      return;
    }
    /* some fixed vector acts with at least two eigenvalues in F_p */
    for (auto &u : fixed) {
      FpMatrix Mu(p, d, d);
      for (int j = 0; j < d; ++j) {
        std::vector<long> ej(size_t(d), 0);
        ej[size_t(j)] = 1;
        auto col = mul_in(W, u, ej);
        for (int i = 0; i < d; ++i) Mu.at(i, j) = col[size_t(i)];
      }
      std::vector<std::vector<std::vector<long>>> pieces;
      for (long c = 0; c < p; ++c) {
        FpMatrix Mc = Mu;
        for (int i = 0; i < d; ++i) Mc.at(i, i) = fp_norm(Mc.at(i, i) - c, p);
        auto kerc = fp_kernel(Mc);
        if (!kerc.empty()) pieces.push_back(kerc);
      }
      if (pieces.size() < 2) continue;
      for (auto &piece : pieces) {
        /* component basis back in ambient coordinates */
        std::vector<std::vector<long>> Wc;
        for (auto &v : piece) {
          std::vector<long> amb(size_t(A.n), 0);
          for (int j = 0; j < d; ++j)
            for (int i = 0; i < A.n; ++i)
              amb[size_t(i)] = (amb[size_t(i)] + v[size_t(j)] * W[size_t(j)][size_t(i)]) % p;
          Wc.push_back(amb);
        }
        split(std::move(Wc), out);
      }
      return;
    }
    throw precision_error("etale splitting found no separating element");
  }
};

} // namespace detail

inline std::vector<PrimeFactor> factor_prime(const FieldPtr &K, long p) {
  if (p < 2 || !is_prime(Integer(p))) throw input_error("factor_prime wants a prime");
  int n = K->n;
  detail::FpAlgebra A(*K, p);

  /* radical of O/pO: kernel of enough iterations of the p-power map */
  FpMatrix F(p, n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<long> ej(size_t(n), 0);
    ej[size_t(j)] = 1;
    auto fp = A.pow(ej, p);
    for (int i = 0; i < n; ++i) F.at(i, j) = fp[size_t(i)];
  }
  long pm = 1;
  FpMatrix Fm = FpMatrix::identity(p, n);
  while (pm < n) {
    Fm = Fm * F;
    pm *= p;
  }
  if (pm == 1) Fm = F; /* n = 1: one application still detects nilpotents */
  auto rad = fp_kernel(Fm);

  /* complement of the radical spans the etale quotient */
  std::vector<std::vector<long>> W;
  {
    FpMatrix rows(p, int(rad.size()), n);
    for (size_t i = 0; i < rad.size(); ++i)
      for (int j = 0; j < n; ++j) rows.at(int(i), j) = rad[i][size_t(j)];
    auto pivots = fp_rref(rows);
    std::vector<bool> is_pivot(size_t(n), false);
    for (int c : pivots) is_pivot[size_t(c)] = true;
    for (int k = 0; k < n; ++k)
      if (!is_pivot[size_t(k)]) {
        std::vector<long> e(size_t(n), 0);
        e[size_t(k)] = 1;
        W.push_back(e);
      }
  }

  detail::EtaleSplitter sp{A, p, rad};
  std::vector<std::vector<std::vector<long>>> comps;
  sp.split(W, comps);

  Ideal pO = principal_ideal(K->integer(p));
  std::vector<PrimeFactor> out;
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    /* the maximal ideal reduces to radical + the other components */
    ZMatrix cols(n, n + int(rad.size()) + n); /* p O, radical, others */
    int col = 0;
    for (int i = 0; i < n; ++i, ++col) cols.at(i, col) = p;
    for (auto &v : rad) {
      for (int i = 0; i < n; ++i) cols.at(i, col) = v[size_t(i)];
      ++col;
    }
    for (size_t cj = 0; cj < comps.size(); ++cj) {
      if (cj == ci) continue;
      for (auto &v : comps[cj]) {
        if (col >= cols.cols) throw precision_error("component bases overflow");
        for (int i = 0; i < n; ++i) cols.at(i, col) = v[size_t(i)];
        ++col;
      }
    }
    ZMatrix trimmed(n, col);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < col; ++j) trimmed.at(i, j) = cols.at(i, j);
    PrimeFactor pf;
    pf.P = ideal_from_columns(K, trimmed, 1);
    pf.f = int(comps[ci].size());
    if (ideal_norm_integral(pf.P) != pow_ui(Integer(p), (unsigned long)pf.f))
      throw precision_error("prime factor norm disagrees with the residue degree");
    /* ramification: the exact power of P containing pO */
    Ideal Pk = pf.P;
    pf.e = 1;
    while (true) {
      Ideal Pn = ideal_mul(Pk, pf.P);
      if (!ideal_contains(Pn, pO)) break;
      Pk = Pn;
      ++pf.e;
    }
    out.push_back(pf);
  }
  int sum_ef = 0;
  for (auto &pf : out) sum_ef += pf.e * pf.f;
  if (sum_ef != n) throw precision_error("splitting does not account for the full degree");
  std::sort(out.begin(), out.end(), [](const PrimeFactor &a, const PrimeFactor &b) {
    return a.P.basis.a < b.P.basis.a;
  });
  return out;
}

/* ---- Minkowski bound and principality -------------------------------- */

inline CReal minkowski_bound(const FieldPtr &K) {
  unsigned long n = (unsigned long)K->n;
  Integer nfact = 1;
  for (unsigned long i = 2; i <= n; ++i) nfact *= Integer(long(i));
  Rational ratio = make_rational(nfact * pow_ui(Integer(4), (unsigned long)K->s),
                                 pow_ui(Integer(long(n)), n));
  Integer ad(abs(K->disc));
  CReal pis = CReal::pi().pow_ui((unsigned long)K->s);
  return CReal::of(ratio) * CReal::of(ad).sqrt() / pis;
}

namespace detail {

/* T2 gram of an ideal's basis columns, from the certified embeddings */
inline GramMatrix ideal_gram(const Ideal &I) {
  const FieldPtr &K = I.K;
  int n = K->n;
  std::vector<std::vector<CComplex>> emb;
  emb.resize(size_t(n));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> cj(size_t(n), Rational(0));
    for (int t = 0; t < n; ++t) cj[size_t(t)] = Rational(I.basis.at(t, j));
    emb[size_t(j)] = embeddings(K->from_integral_coords(cj), K->places);
  }
  GramMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      CReal acc = CReal::of(0L);
      for (size_t pl = 0; pl < K->places.size(); ++pl) {
        CReal term = emb[size_t(i)][pl].re * emb[size_t(j)][pl].re +
                     emb[size_t(i)][pl].im * emb[size_t(j)][pl].im;
        acc = acc + (K->places[pl].real ? term : term.mul_si(2));
      }
      g.at(i, j) = acc;
      g.at(j, i) = acc;
    }
  return g;
}

/* T2 search radius that is guaranteed to contain a generator if one exists:
   a generator can be scaled by units until its embeddings are balanced */
inline CReal generator_radius(const FieldPtr &K, const Integer &N,
                              const std::vector<FieldElement> &units) {
  CReal nr = CReal::of(N);
  int rank = K->r + K->s - 1;
  if (rank == 0) {
    if (K->r == 1 && K->s == 0) return nr * nr + CReal::of(Rational(1, 1024)); /* degree 1: x^2 = N^2 */
    return nr.mul_si(2) + CReal::of(Rational(1, 1024)); /* imaginary quadratic */
  }
  if (rank == 1 && !units.empty()) {
    /* largest embedding modulus of the fundamental unit */
    CReal e = CReal::of(1L);
    for (auto &z : embeddings(units[0], K->places)) {
      CReal a = z.abs();
      if (a.upper() > e.upper()) e = a;
    }
    CReal slack = CReal::of_double(1e-9);
    if (K->r == 2) /* real quadratic: T2 <= N (eps + 1/eps) */
      return nr * (e + CReal::of(1L) / e + slack);
    if (K->s == 2) /* totally complex quartic: T2 <= 2 sqrt(N) (eps + 1/eps) */
      return nr.sqrt().mul_si(2) * (e + CReal::of(1L) / e + slack);
  }
  throw unsupported_error("unsupported unit rank");
}

} // namespace detail

/* generator of an integral ideal if one exists: enumerate elements of the
   ideal with |Norm| = Norm(A) inside the unit-balanced T2 ball */
inline std::optional<FieldElement> is_principal(const Ideal &A,
                                                const std::vector<FieldElement> *units = nullptr) {
  if (!ideal_is_integral(A)) throw input_error("is_principal wants an integral ideal");
  const FieldPtr &K = A.K;
  Integer N = ideal_norm_integral(A);
  if (K->n == 1) {
    std::vector<Rational> c{Rational(A.basis.at(0, 0))};
    return K->from_integral_coords(c);
  }
  std::vector<FieldElement> owned;
  if (!units) {
    owned = default_units(K);
    units = &owned;
  }
  CReal radius = detail::generator_radius(K, N, *units);
  auto sv = enumerate_short_vectors(detail::ideal_gram(A), radius);
  for (auto &v : sv.vectors) {
    /* v is in coordinates over A's basis columns; convert to O coordinates */
    std::vector<Rational> base(size_t(K->n));
    for (int t = 0; t < K->n; ++t) {
      Integer acc = 0;
      for (int j = 0; j < K->n; ++j) acc += A.basis.at(t, j) * v[size_t(j)];
      base[size_t(t)] = Rational(acc);
    }
    FieldElement x = K->from_integral_coords(base);
    Rational nx = K->norm(x);
    if (nx == Rational(N) || nx == -Rational(N)) return x;
  }
  return std::nullopt;
}

/* ---- class group ------------------------------------------------------ */

struct ClassGroup {
  FieldPtr K;
  std::vector<FieldElement> units;        /* rank-one reducer, possibly empty */
  Integer h = 1;
  std::vector<Integer> invariants;        /* nontrivial d_1 | d_2 | ... */
  std::vector<Ideal> generators;          /* classes of the stated orders */
  std::vector<Ideal> reps;                /* one representative per class */
  std::vector<std::vector<long>> rep_exponents; /* reps over the generators */
};

namespace detail {

/* all integral ideals of norm <= bound as products of the given primes */
inline void ideals_up_to(const std::vector<PrimeFactor> &primes, size_t idx, Integer bound,
                         Ideal cur, Integer curnorm, std::vector<Ideal> &out) {
  if (idx == primes.size()) {
    out.push_back(cur);
    return;
  }
  Integer np = ideal_norm_integral(primes[idx].P);
  ideals_up_to(primes, idx + 1, bound, cur, curnorm, out);
  Ideal acc = cur;
  Integer nacc = curnorm;
  while (nacc * np <= bound) {
    acc = ideal_mul(acc, primes[idx].P);
    nacc *= np;
    ideals_up_to(primes, idx + 1, bound, acc, nacc, out);
  }
}

} // namespace detail

/* exponents of the class of A over the class-group generators */
inline std::vector<long> class_of(const ClassGroup &cl, const Ideal &A) {
  Ideal A0{A.K, A.basis, 1}; /* the denominator is principal */
  for (size_t r = 0; r < cl.reps.size(); ++r) {
    Ideal test = ideal_mul(A0, ideal_tilde(cl.reps[r]));
    if (is_principal(test, &cl.units)) return cl.rep_exponents[r];
  }
  throw precision_error("ideal class not matched by any representative");
}

inline ClassGroup class_group(const FieldPtr &K) {
  ClassGroup cl;
  cl.K = K;
  cl.reps = {whole_ring(K)};
  cl.rep_exponents = {{}};

  long bound = 1;
  {
    CReal mb = minkowski_bound(K);
    double u = mb.upper();
    if (!(u < 1e15)) throw input_error("Minkowski bound too large");
    bound = long(std::floor(u));
  }
  if (bound < 2) return cl; /* only the unit ideal below the bound */

  std::vector<PrimeFactor> primes;
  for (long p = 2; p <= bound; ++p) {
    if (!is_prime(Integer(p))) continue;
    for (auto &pf : factor_prime(K, p))
      if (ideal_norm_integral(pf.P) <= bound) primes.push_back(pf);
  }
  if (primes.empty()) return cl;
  if (K->r + K->s - 1 > 0) cl.units = default_units(K);

  /* distinct classes among all ideals of norm <= bound */
  std::vector<Ideal> all;
  detail::ideals_up_to(primes, 0, Integer(bound), whole_ring(K), 1, all);
  std::vector<Ideal> classes;
  for (auto &A : all) {
    bool found = false;
    for (auto &R : classes) {
      if (is_principal(ideal_mul(A, ideal_tilde(R)), &cl.units)) {
        found = true;
        break;
      }
    }
    if (!found) classes.push_back(A);
  }
  cl.h = Integer(long(classes.size()));
  if (cl.h == 1) return cl;

  /* triangular relation lattice over the prime generators */
  int k = int(primes.size());
  ZMatrix M(k, k);
  long hl = to_long(cl.h);
  for (int i = 0; i < k; ++i) {
    bool found = false;
    for (long m = 1; m <= hl && !found; ++m) {
      /* search the box of reduced exponents on the earlier generators */
      std::vector<long> a(size_t(i), 0);
      while (true) {
        Ideal prod = ideal_pow(primes[size_t(i)].P, m);
        for (int j = 0; j < i; ++j)
          if (a[size_t(j)] > 0) prod = ideal_mul(prod, ideal_pow(primes[size_t(j)].P, a[size_t(j)]));
        if (is_principal(prod, &cl.units)) {
          M.at(i, i) = m;
          for (int j = 0; j < i; ++j) M.at(j, i) = a[size_t(j)];
          found = true;
          break;
        }
        int t = 0;
        for (; t < i; ++t) {
          if (++a[size_t(t)] < M.at(t, t)) break;
          a[size_t(t)] = 0;
        }
        if (t == i) break;
      }
    }
    if (!found) throw precision_error("no relation found for a class-group generator");
  }
  Integer det_check = 1;
  for (int i = 0; i < k; ++i) det_check *= M.at(i, i);
  if (det_check != cl.h)
    throw precision_error("relation lattice index disagrees with the class count");

  SnfResult s = snf(M);
  /* Z^k / col(M): y = U x has order d_i in coordinate i; the generator of the
     i-th cyclic factor is x = U^{-1} e_i */
  QMatrix Uinv = inverse(to_rational(s.U));
  for (int i = 0; i < k; ++i) {
    Integer d = s.D.at(i, i);
    if (d == 1 || d == 0) continue;
    std::vector<Integer> x(size_t(k), Integer(0));
    for (int j = 0; j < k; ++j) {
      if (Uinv.at(j, i).get_den() != 1) throw precision_error("transform is not unimodular");
      x[size_t(j)] = Uinv.at(j, i).get_num();
    }
    /* lift into nonnegative exponents by adding relation columns */
    for (int row = k - 1; row >= 0; --row) {
      if (x[size_t(row)] >= 0) continue;
      Integer q = (-x[size_t(row)] + M.at(row, row) - 1) / M.at(row, row);
      for (int t = 0; t <= row; ++t) x[size_t(t)] += q * M.at(t, row);
    }
    Ideal g = whole_ring(K);
    for (int j = 0; j < k; ++j)
      if (x[size_t(j)] > 0) g = ideal_mul(g, ideal_pow(primes[size_t(j)].P, to_long(x[size_t(j)])));
    cl.invariants.push_back(d);
    cl.generators.push_back(g);
  }

  /* orders certified directly */
  Integer prod_inv = 1;
  for (size_t i = 0; i < cl.invariants.size(); ++i) {
    long d = to_long(cl.invariants[i]);
    prod_inv *= cl.invariants[i];
    if (!is_principal(ideal_pow(cl.generators[i], d), &cl.units))
      throw precision_error("generator order exceeds its invariant");
    for (long q = 2; q <= d; ++q)
      if (d % q == 0 && is_prime(Integer(q)) &&
          is_principal(ideal_pow(cl.generators[i], d / q), &cl.units))
        throw precision_error("generator order divides a proper factor");
  }
  if (prod_inv != cl.h) throw precision_error("invariant factors do not multiply to h");

  /* representative exponent table: match each class to its tuple */
  cl.reps = classes;
  cl.rep_exponents.assign(classes.size(), {});
  std::vector<bool> used(classes.size(), false);
  std::vector<long> t(cl.invariants.size(), 0);
  while (true) {
    Ideal B = whole_ring(K);
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i] > 0) B = ideal_mul(B, ideal_pow(cl.generators[i], t[i]));
    Ideal Bt = ideal_tilde(B);
    bool matched = false;
    for (size_t r = 0; r < classes.size(); ++r) {
      if (used[r]) continue;
      if (is_principal(ideal_mul(classes[r], Bt), &cl.units)) {
        cl.rep_exponents[r] = t;
        used[r] = true;
        matched = true;
        break;
      }
    }
    if (!matched) throw precision_error("exponent tuple matched no representative");
    size_t i = 0;
    for (; i < t.size(); ++i) {
      if (++t[i] < to_long(cl.invariants[i])) break;
      t[i] = 0;
    }
    if (i == t.size()) break;
  }
  for (bool u : used)
    if (!u) throw precision_error("class representative left unmatched");
  return cl;
}

/* ---- lambda table and Galois action ----------------------------------- */

struct LambdaTable {
  /* counts[(p, n)] = number of Z/p^n summands of the class group */
  std::map<std::pair<Integer, int>, int> counts;
  int lambda(const Integer &p, int n) const {
    auto it = counts.find({p, n});
    return it == counts.end() ? 0 : it->second;
  }
};

inline LambdaTable lambda_table(const ClassGroup &cl) {
  LambdaTable t;
  for (auto &d : cl.invariants)
    for (auto &[p, e] : factor(d)) t.counts[{p, e}]++;
  return t;
}

/* matrix of each automorphism on the generator classes */
inline std::vector<ZMatrix> galois_action_on_classes(const ClassGroup &cl,
                                                     const std::vector<Automorphism> &auts) {
  int g = int(cl.invariants.size());
  std::vector<ZMatrix> out;
  for (auto &s : auts) {
    ZMatrix m(g, g);
    for (int j = 0; j < g; ++j) {
      auto v = class_of(cl, apply(s, cl.generators[size_t(j)]));
      for (int i = 0; i < g; ++i) m.at(i, j) = v[size_t(i)];
    }
    out.push_back(m);
  }
  /* homomorphism check: action of a composition is the product action */
  auto index_of = [&](const FieldElement &im) {
    for (size_t i = 0; i < auts.size(); ++i)
      if (auts[i].image == im) return i;
    throw input_error("automorphism list is not closed under composition");
  };
  for (size_t a = 0; a < auts.size(); ++a)
    for (size_t b = 0; b < auts.size(); ++b) {
      size_t c = index_of(compose(auts[a], auts[b]).image);
      ZMatrix prod = out[a] * out[b];
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
          Integer diff = prod.at(i, j) - out[c].at(i, j);
          if (diff % cl.invariants[size_t(i)] != 0)
            throw precision_error("class-group action is not a homomorphism");
        }
    }
  return out;
}

/* trace of the averaging idempotent of H on the level-n layer of the p-part
   of the class group, an integer mod p^level */
inline long idempotent_trace_on_classgroup(const ClassGroup &cl,
                                           const std::vector<Automorphism> &H, long p,
                                           int level) {
  if (long(H.size()) % p == 0) throw unsupported_error("wild case unsupported");
  Integer pl = pow_ui(Integer(p), (unsigned long)level);
  std::vector<int> cps;
  for (auto &d : cl.invariants) cps.push_back(int(valuation(d, Integer(p))));
  std::vector<size_t> layer;
  for (size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] == level) layer.push_back(i);
    else if (cps[i] > 0)
      throw unsupported_error("mixed p-part layers are not supported");
  }
  if (layer.empty()) return 0;

  Integer trace = 0;
  for (size_t i : layer) {
    Integer d = cl.invariants[i];
    Integer m = d / pow_ui(Integer(p), (unsigned long)cps[i]); /* prime-to-p part */
    Ideal y = ideal_pow(cl.generators[i], to_long(m));
    Ideal z = whole_ring(cl.K);
    for (auto &s : H) z = ideal_mul(z, apply(s, y));
    auto v = class_of(cl, z);
    /* coefficient of y_i: v_i = alpha * m mod p^level */
    Integer alpha = Integer(v[i]) * invmod(m, pl) % pl;
    trace += alpha;
  }
  trace = trace * invmod(Integer(long(H.size())), pl) % pl;
  trace = ((trace % pl) + pl) % pl;
  return to_long(trace);
}

/* ---- relative norm and extension of ideals ---------------------------- */

/* the ideal of the fixed field K whose extension to L is prod_sigma sigma(A) */
inline Ideal norm_ideal(const Ideal &A, const std::vector<Automorphism> &H,
                        const SubfieldData &sd) {
  const FieldPtr &L = A.K;
  int nL = L->n, nK = sd.field->n;
  Ideal E = whole_ring(L);
  for (auto &s : H) E = ideal_mul(E, apply(s, A));
  if (!ideal_is_integral(E)) throw input_error("norm_ideal wants an integral ideal");
  /* solve include(y) in E: columns [In | -E.basis], project the y block */
  ZMatrix In(nL, nK);
  for (int t = 0; t < nK; ++t) {
    auto col = detail::integral_coords_int(include_element(sd, sd.field->basis_element(t)));
    for (int i = 0; i < nL; ++i) In.at(i, t) = col[size_t(i)];
  }
  ZMatrix big(nL, nK + nL);
  for (int i = 0; i < nL; ++i) {
    for (int j = 0; j < nK; ++j) big.at(i, j) = In.at(i, j);
    for (int j = 0; j < nL; ++j) big.at(i, nK + j) = -E.basis.at(i, j);
  }
  auto ker = integer_kernel(big);
  ZMatrix cols(nK, int(ker.size()));
  for (size_t j = 0; j < ker.size(); ++j)
    for (int i = 0; i < nK; ++i) cols.at(i, int(j)) = ker[j][size_t(i)];
  return ideal_from_columns(sd.field, cols, 1);
}

inline Ideal extend_ideal(const SubfieldData &sd, const Ideal &B) {
  const FieldPtr &L = sd.gamma.K;
  int nL = L->n, nK = sd.field->n;
  ZMatrix cols(nL, nK * nL);
  for (int j = 0; j < nK; ++j) {
    std::vector<Rational> cj(size_t(nK), Rational(0));
    for (int t = 0; t < nK; ++t) cj[size_t(t)] = Rational(B.basis.at(t, j));
    FieldElement x = include_element(sd, sd.field->from_integral_coords(cj));
    for (int b = 0; b < nL; ++b) {
      auto prod = detail::integral_coords_int(x * L->basis_element(b));
      for (int i = 0; i < nL; ++i) cols.at(i, j * nL + b) = prod[size_t(i)];
    }
  }
  return ideal_from_columns(L, cols, B.den);
}

/* norm-extension transfer identities on class groups and torsion units */
struct TransferReport {
  bool classgroup_ok = true;
  bool torsion_ok = true;
};

inline TransferReport transfer_check(const FieldPtr &L, const std::vector<Automorphism> &H,
                                     const SubfieldData &sd, const ClassGroup &clL,
                                     const ClassGroup &clK) {
  TransferReport rep;
  long hH = long(H.size());

  /* norm(extension(B)) = B^{|H|} in Cl(K) */
  for (size_t i = 0; i < clK.generators.size(); ++i) {
    Ideal E = extend_ideal(sd, clK.generators[i]);
    Ideal NB = norm_ideal(E, H, sd);
    auto got = class_of(clK, NB);
    auto base = class_of(clK, clK.generators[i]);
    for (size_t t = 0; t < got.size(); ++t) {
      Integer diff = Integer(got[t]) - Integer(hH) * Integer(base[t]);
      if (diff % clK.invariants[t] != 0) rep.classgroup_ok = false;
    }
  }
  /* extension(norm(A)) = prod_sigma sigma(A) exactly, on ideals */
  for (auto &A : clL.generators) {
    Ideal NA = norm_ideal(A, H, sd);
    Ideal EA = extend_ideal(sd, NA);
    Ideal PA = whole_ring(L);
    for (auto &s : H) PA = ideal_mul(PA, apply(s, A));
    if (!ideal_eq(EA, PA)) rep.classgroup_ok = false;
  }

  /* torsion units: same identities multiplicatively */
  TorsionUnits tK = torsion_units(sd.field);
  TorsionUnits tL = torsion_units(L);
  {
    FieldElement x = include_element(sd, tK.generator);
    FieldElement nx = L->one();
    for (auto &s : H) nx = nx * apply(s, x);
    if (!(nx == include_element(sd, pow(tK.generator, (unsigned long)hH))))
      rep.torsion_ok = false;
  }
  {
    FieldElement z = L->one();
    for (auto &s : H) z = z * apply(s, tL.generator);
    /* the norm of a torsion unit lands in mu(K) */
    bool in_muK = false;
    for (long j = 0; j < tK.w; ++j)
      if (z == include_element(sd, pow(tK.generator, (unsigned long)j))) in_muK = true;
    if (!in_muK) rep.torsion_ok = false;
  }
  return rep;
}

/* ---- truncated zeta sums ---------------------------------------------- */

/* number of integral ideals of each norm up to N */
inline std::vector<long> ideal_counts(const FieldPtr &K, long N) {
  std::vector<long> a(size_t(N) + 1, 0);
  if (N >= 1) a[1] = 1;
  for (long p = 2; p <= N; ++p) {
    if (!is_prime(Integer(p))) continue;
    auto pf = factor_prime(K, p);
    /* ways[k] = number of ideals of norm p^k supported on the primes above p */
    int kmax = 0;
    for (long q = 1; q <= N / p; q *= p) ++kmax;
    std::vector<long> ways(size_t(kmax) + 1, 0);
    ways[0] = 1;
    for (auto &f : pf)
      for (int k = f.f; k <= kmax; ++k) ways[size_t(k)] += ways[size_t(k - f.f)];
    std::vector<long> next = a;
    for (long m = 1; m <= N; ++m) {
      if (a[size_t(m)] == 0) continue;
      long pk = p;
      for (int k = 1; k <= kmax && pk <= N / m; ++k, pk *= p)
        next[size_t(m * pk)] += a[size_t(m)] * ways[size_t(k)];
    }
    a = std::move(next);
  }
  return a;
}

struct ZetaPartial {
  CReal value;
  CReal tail; /* crude bound n N^(1-sigma)/(sigma-1) on the dropped terms */
};

inline ZetaPartial zeta_partial(const FieldPtr &K, double sigma, long N) {
  if (!(sigma > 1)) throw input_error("zeta_partial needs sigma > 1");
  if (N < 1) throw input_error("zeta_partial needs N >= 1");
  auto a = ideal_counts(K, N);
  bool int_sigma = sigma == std::floor(sigma) && sigma <= 64;
  std::vector<CReal> terms;
  for (long m = 1; m <= N; ++m) {
    if (a[size_t(m)] == 0) continue;
    if (int_sigma) {
      Integer ms = pow_ui(Integer(m), (unsigned long)sigma);
      terms.push_back(CReal::of(make_rational(Integer(a[size_t(m)]), ms)));
    } else {
      CReal t = (CReal::of(m).log() * CReal::of_double(-sigma)).exp();
      terms.push_back(t.mul_si(a[size_t(m)]));
    }
  }
  ZetaPartial z{sum(terms), CReal::of(0L)};
  CReal Nr = CReal::of(N);
  CReal tail = (Nr.log() * CReal::of_double(1 - sigma)).exp();
  z.tail = tail.mul_si(K->n) / CReal::of_double(sigma - 1);
  return z;
}

} // namespace galrel

#endif
