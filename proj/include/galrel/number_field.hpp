#ifndef GALREL_NUMBER_FIELD_HPP
#define GALREL_NUMBER_FIELD_HPP

#include "lattice.hpp"
#include "matrix.hpp"
#include "poly.hpp"

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace galrel {

/* An archimedean place: a certified root of the defining polynomial.
   Complex places store the upper-half-plane representative only. */
struct Place {
  bool real = true;
  CComplex z;        /* certified enclosure of the root */
  double radius = 0; /* enclosure radius used for both coordinates */
};

struct NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/* Field element as a trimmed polynomial in the generator, degree < n. */
struct FieldElement {
  FieldPtr K;
  QPoly c;
};

struct NumberField : std::enable_shared_from_this<NumberField> {
  QPoly f;      /* monic integral minimal polynomial */
  int n = 0;
  QMatrix Bt;            /* columns = integral basis vectors in power coords */
  QMatrix Bt_inv;        /* power coords -> integral coords */
  Integer disc;          /* det of the trace form on the integral basis */
  int r = 0, s = 0;      /* signature */
  std::vector<Place> places;           /* at default precision */
  std::vector<Rational> theta_traces;  /* Tr(theta^k), k < n */

  int degree() const { return n; }
  int lambda() const { return r + s - 1; }

  FieldElement element(QPoly coords) const {
    coords = poly_trim(std::move(coords));
    if (poly_deg(coords) >= n) throw input_error("element coordinates exceed field degree");
    return {shared_from_this(), std::move(coords)};
  }
  FieldElement zero() const { return element({}); }
  FieldElement one() const { return element(poly_from({1})); }
  FieldElement theta() const {
    if (n == 1) return element({-f[0]}); /* rational generator of a degree-1 field */
    return element(poly_from({0, 1}));
  }
  FieldElement integer(long k) const { return element({Rational(k)}); }

  FieldElement mul(const FieldElement &a, const FieldElement &b) const {
    return element(poly_mod(poly_mul(a.c, b.c), f));
  }

  Rational trace(const FieldElement &a) const {
    Rational t(0);
    for (size_t k = 0; k < a.c.size(); ++k) t += a.c[k] * theta_traces[k];
    return t;
  }

  Rational norm(const FieldElement &a) const {
    if (poly_is_zero(a.c)) return Rational(0);
    return poly_resultant(f, a.c);
  }

  FieldElement inverse(const FieldElement &a) const {
    if (poly_is_zero(a.c)) throw input_error("inverse of zero");
    /* extended Euclid in Q[x]: u f + v a = 1 */
    QPoly r0 = f, r1 = a.c, v0 = {}, v1 = poly_from({1});
    while (!r1.empty()) {
      auto [q, r2] = poly_divmod(r0, r1);
      QPoly v2 = poly_sub(v0, poly_mul(q, v1));
      r0 = std::move(r1); r1 = std::move(r2);
      v0 = std::move(v1); v1 = std::move(v2);
    }
    if (poly_deg(r0) != 0) throw input_error("element not invertible (reducible modulus?)");
    return element(poly_scale(v0, Rational(1) / r0[0]));
  }

  std::vector<Rational> integral_coords(const FieldElement &a) const {
    std::vector<Rational> p(size_t(n), Rational(0));
    for (size_t k = 0; k < a.c.size(); ++k) p[k] = a.c[k];
    return Bt_inv.apply(p);
  }

  FieldElement from_integral_coords(const std::vector<Rational> &z) const {
    return element(poly_trim(Bt.apply(z)));
  }
  FieldElement from_integral_coords(const std::vector<Integer> &z) const {
    std::vector<Rational> q;
    for (auto &x : z) q.emplace_back(x);
    return from_integral_coords(q);
  }

  bool is_integral(const FieldElement &a) const {
    for (auto &x : integral_coords(a))
      if (x.get_den() != 1) return false;
    return true;
  }

  FieldElement basis_element(int i) const {
    QPoly v;
    for (int k = 0; k < n; ++k) v.push_back(Bt.at(k, i));
    return element(poly_trim(v));
  }
};

inline bool same_field(const FieldElement &a, const FieldElement &b) { return a.K == b.K; }

inline FieldElement operator+(const FieldElement &a, const FieldElement &b) {
  if (!same_field(a, b)) throw input_error("elements of different fields");
  return a.K->element(poly_add(a.c, b.c));
}
inline FieldElement operator-(const FieldElement &a, const FieldElement &b) {
  if (!same_field(a, b)) throw input_error("elements of different fields");
  return a.K->element(poly_sub(a.c, b.c));
}
inline FieldElement operator*(const FieldElement &a, const FieldElement &b) {
  if (!same_field(a, b)) throw input_error("elements of different fields");
  return a.K->mul(a, b);
}
inline FieldElement operator-(const FieldElement &a) { return a.K->element(poly_scale(a.c, Rational(-1))); }
inline bool operator==(const FieldElement &a, const FieldElement &b) {
  return same_field(a, b) && a.c == b.c;
}

inline FieldElement pow(const FieldElement &a, unsigned long e) {
  FieldElement r = a.K->one(), b = a;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b;
    if (e > 1) b = b * b;
  }
  return r;
}

namespace detail {

/* Tr(theta^k) for k < n via Newton's identities on the monic f. */
inline std::vector<Rational> newton_power_sums(const QPoly &f, int count) {
  int n = poly_deg(f);
  std::vector<Rational> p{Rational(n)};
  for (int k = 1; k < count; ++k) {
    /* p_k = -k a_{n-k} - sum_{i=1}^{k-1} a_{n-i} p_{k-i}, a_j = coeff of x^j */
    Rational pk(0);
    if (k <= n) pk -= Rational(k) * f[size_t(n - k)];
    for (int i = 1; i < k; ++i) {
      if (n - i < 0) break;
      pk -= f[size_t(n - i)] * p[size_t(k - i)];
    }
    p.push_back(pk);
  }
  return p;
}

/* Durand-Kerner in doubles: simultaneous seed roots for the certifier. */
inline std::vector<std::complex<double>> dk_roots(const QPoly &f) {
  int n = poly_deg(f);
  std::vector<std::complex<double>> c(size_t(n + 1));
  for (int i = 0; i <= n; ++i) c[size_t(i)] = f[size_t(i)].get_d();
  std::vector<std::complex<double>> z(size_t(n), std::complex<double>{});
  std::complex<double> seed(0.4, 0.9), acc(1, 0);
  for (int k = 0; k < n; ++k) { acc *= seed; z[size_t(k)] = acc; }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> v = 0;
    for (int i = n; i >= 0; --i) v = v * x + c[size_t(i)];
    return v;
  };
  for (int it = 0; it < 600; ++it) {
    double moved = 0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> d = eval(z[size_t(k)]);
      for (int j = 0; j < n; ++j)
        if (j != k) d /= (z[size_t(k)] - z[size_t(j)]);
      z[size_t(k)] -= d;
      moved += std::abs(d);
    }
    if (moved < 1e-14) break;
  }
  return z;
}

inline CComplex creal_complex_at(double re, double im, long prec) {
  return {CReal::of_double(re, prec), CReal::of_double(im, prec)};
}

} // namespace detail

/* All archimedean places with certified pairwise-disjoint root disks.
   Doubling retry up to 1024 bits; the classification is validated against
   the Sturm count, which makes the real/complex split rigorous. */
inline std::vector<Place> compute_places(const QPoly &f, int r_expected, long precision_bits) {
  if (precision_bits < 53) throw input_error("precision must be at least 53 bits");
  int n = poly_deg(f);
  if (n == 1) {
    Place pl;
    pl.real = true;
    Rational root = -f[0] / f[1];
    pl.z = {CReal::of(root, precision_bits), CReal::of(0L, precision_bits)};
    pl.radius = pl.z.re.rad();
    return {pl};
  }
  QPoly fp = poly_derivative(f);
  auto seeds = detail::dk_roots(f);
  for (long prec = precision_bits; prec <= 1024; prec *= 2) {
    std::vector<Place> out;
    bool ok = true;
    std::vector<std::pair<CComplex, double>> disks;
    for (auto &sd : seeds) {
      /* Newton polish on midpoints, then one certified residual evaluation */
      CComplex z = detail::creal_complex_at(sd.real(), sd.imag(), prec);
      for (int it = 0; it < 200; ++it) {
        CComplex num = poly_eval(f, z), den = poly_eval(fp, z);
        CReal d2 = den.norm2();
        if (!d2.surely_positive()) { ok = false; break; }
        CComplex step{(num.re * den.re + num.im * den.im) / d2,
                      (num.im * den.re - num.re * den.im) / d2};
        z = {(z.re - step.re).point(), (z.im - step.im).point()};
        if (step.re.abs_upper() < std::ldexp(1.0, -int(prec) + 8) &&
            step.im.abs_upper() < std::ldexp(1.0, -int(prec) + 8))
          break;
      }
      if (!ok) break;
      CReal fu = poly_eval(f, z).abs();
      CReal fd = poly_eval(fp, z).abs();
      double lo = fd.lower();
      if (!(lo > 0)) { ok = false; break; }
      double rad = n * fu.upper() / lo * (1 + 1e-12);
      disks.push_back({z, rad});
    }
    if (ok) {
      /* pairwise disjoint? */
      for (size_t i = 0; i < disks.size() && ok; ++i)
        for (size_t j = i + 1; j < disks.size() && ok; ++j) {
          double dx = disks[i].first.re.mid() - disks[j].first.re.mid();
          double dy = disks[i].first.im.mid() - disks[j].first.im.mid();
          if (std::sqrt(dx * dx + dy * dy) <= disks[i].second + disks[j].second) ok = false;
        }
    }
    if (ok) {
      /* real <=> imaginary interval straddles zero; count must match Sturm */
      int straddle = 0;
      for (auto &[z, rad] : disks) {
        double im = z.im.mid();
        if (std::fabs(im) <= rad) ++straddle;
      }
      if (straddle != r_expected) ok = false;
      if (ok) {
        for (auto &[z, rad] : disks) {
          Place pl;
          pl.radius = rad;
          double im = z.im.mid();
          if (std::fabs(im) <= rad) {
            pl.real = true;
            pl.z = {z.re, CReal::of(0L, prec)};
            pl.radius = rad + z.re.rad();
          } else if (im > 0) {
            pl.real = false;
            pl.z = z;
            pl.radius = rad;
          } else {
            continue; /* lower-half conjugate: stored once */
          }
          out.push_back(pl);
        }
        std::sort(out.begin(), out.end(), [](const Place &a, const Place &b) {
          if (a.real != b.real) return a.real;
          if (a.z.re.mid() != b.z.re.mid()) return a.z.re.mid() < b.z.re.mid();
          return a.z.im.mid() < b.z.im.mid();
        });
        return out;
      }
    }
    if (prec == 1024) break;
  }
  throw precision_error("could not certify disjoint root disks at 1024 bits; "
                        "the defining polynomial may have pathological root separation");
}

namespace detail {

/* Irreducibility over Q, certified through the root enclosures: any monic
   rational factor is monic integral with roots a subset of the root disks, so
   every subset of size <= n/2 is expanded and its integer-rounded coefficient
   candidate checked by exact division.  No candidate divides -> irreducible. */
inline void assert_irreducible(const QPoly &f, const std::vector<Place> &places) {
  int n = poly_deg(f);
  if (n == 1) return;
  std::vector<CComplex> roots;
  for (auto &pl : places) {
    long pr = pl.z.re.prec();
    CReal widen = CReal::of_decimal("0", pl.radius, pr);
    CComplex z{pl.z.re + widen, pl.z.im + (pl.real ? CReal::of(0L, pr) : widen)};
    roots.push_back(z);
    if (!pl.real) roots.push_back(z.conj());
  }
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int d = __builtin_popcount(mask);
    if (d > n / 2) continue;
    /* expand prod (x - alpha_i) over the chosen disks */
    std::vector<CComplex> c{CComplex{CReal::of(1L), CReal::of(0L)}};
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<CComplex> nc(c.size() + 1, CComplex{CReal::of(0L), CReal::of(0L)});
      for (size_t k = 0; k < c.size(); ++k) {
        nc[k + 1] = nc[k + 1] + c[k];
        CComplex t = c[k] * roots[size_t(i)];
        nc[k] = nc[k] - t;
      }
      c = std::move(nc);
    }
    QPoly cand;
    bool feasible = true;
    for (size_t k = 0; k + 1 < c.size() && feasible; ++k) {
      if (!c[k].im.contains_zero()) { feasible = false; break; }
      double lo = c[k].re.lower(), up = c[k].re.upper();
      double fl = std::ceil(lo);
      if (fl > up) { feasible = false; break; }
      if (fl + 1 <= up)
        throw precision_error("root enclosures too wide to certify irreducibility");
      Integer z;
      mpz_set_d(z.get_mpz_t(), fl);
      cand.push_back(Rational(z));
    }
    if (!feasible) continue;
    cand.push_back(Rational(1));
    auto [q, r] = poly_divmod(f, cand);
    (void)q;
    if (poly_is_zero(r)) throw input_error("defining polynomial is reducible");
  }
}

} // namespace detail

inline QMatrix trace_form(const QPoly &f, const QMatrix &Bt, const std::vector<Rational> &ptraces) {
  int n = poly_deg(f);
  QMatrix t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      QPoly bi, bj;
      for (int k = 0; k < n; ++k) { bi.push_back(Bt.at(k, i)); bj.push_back(Bt.at(k, j)); }
      QPoly prod = poly_mod(poly_mul(poly_trim(bi), poly_trim(bj)), f);
      Rational tr(0);
      for (size_t k = 0; k < prod.size(); ++k) tr += prod[k] * ptraces[k];
      t.at(i, j) = t.at(j, i) = tr;
    }
  return t;
}

namespace detail {

inline void verify_ring_closed(const NumberField &K) {
  /* 1 in the lattice, products land back in the lattice */
  std::vector<Rational> e0(size_t(K.n), Rational(0));
  e0[0] = 1;
  for (auto &x : K.Bt_inv.apply(e0))
    if (x.get_den() != 1) throw input_error("integral basis does not contain 1");
  for (int i = 0; i < K.n; ++i)
    for (int j = i; j < K.n; ++j) {
      FieldElement p = K.mul(K.basis_element(i), K.basis_element(j));
      if (!K.is_integral(p)) throw input_error("integral basis not closed under multiplication");
    }
}

/* builtin families for absent bases */
inline bool set_family_basis(NumberField &K) {
  const QPoly &f = K.f;
  int n = K.n;
  QMatrix B = QMatrix(n, n); /* rows = basis vectors in power coords */
  for (int i = 0; i < n; ++i) B.at(i, i) = 1;

  if (n == 1) { K.Bt = B; return true; }

  /* quadratic x^2 - m, m squarefree */
  if (n == 2 && f[1] == 0) {
    Rational mq = -f[0];
    if (mq.get_den() == 1) {
      Integer m = mq.get_num();
      if (m != 0 && m != 1 && is_squarefree(m)) {
        if ((m % 4 + 4) % 4 == 1) { B.at(1, 0) = Rational(1, 2); B.at(1, 1) = Rational(1, 2); }
        K.Bt = B.transpose();
        return true;
      }
    }
  }

  /* cyclotomic: power basis */
  for (long m = 1; m <= 4 * n * n + 4; ++m) {
    if (euler_phi(m) != n) continue;
    if (cyclotomic(m) == f) { K.Bt = B.transpose(); return true; }
  }

  /* real biquadratic x^4 + a x^2 + b with theta = sqrt(m) + sqrt(k).
     The three quadratic surds m, k, l = mk/gcd^2 have either three, one, or
     none of their values = 1 mod 4; the classical integral basis in each case
     is assembled below and then certified by the closure check like any
     user-supplied basis. */
  if (n == 4 && f[1] == 0 && f[3] == 0 && f[2].get_den() == 1 && f[0].get_den() == 1) {
    Integer a = f[2].get_num(), b = f[0].get_num();
    if (a % 2 == 0 && b > 0 && is_square(b)) {
      Integer sum = -a / 2, diff = isqrt(b); /* m + k, m - k */
      Integer m2 = sum + diff, k2 = sum - diff;
      if (m2 % 2 == 0 && k2 % 2 == 0) {
        Integer m = m2 / 2, k = k2 / 2;
        if (m > k && k > 1 && is_squarefree(m) && is_squarefree(k)) {
          Integer g = gcd(m, k), l = m * k / (g * g);
          /* theta^3 - (3k + m) theta = (2m - 2k) sqrt(k) */
          QPoly t3 = poly_mod(poly_from({0, 0, 0, 1}), f);
          QPoly sq_k = poly_scale(poly_sub(t3, poly_scale(poly_from({0, 1}), Rational(3 * k + m))),
                                  Rational(1) / Rational(2 * (m - k)));
          QPoly sq_m = poly_sub(poly_from({0, 1}), sq_k);
          QPoly sq_l = poly_scale(poly_mod(poly_mul(sq_m, sq_k), f), Rational(1) / Rational(g));
          struct Surd { Integer d; QPoly s; };
          std::vector<Surd> surds{{m, sq_m}, {k, sq_k}, {l, sq_l}};
          auto mod4 = [](const Integer &x) { return long(mpz_fdiv_ui(x.get_mpz_t(), 4)); };
          std::vector<Surd> one, rest;
          for (auto &sd : surds) (mod4(sd.d) == 1 ? one : rest).push_back(sd);
          auto put = [&](int row, const QPoly &v) {
            for (int c = 0; c < 4; ++c) B.at(row, c) = c < int(v.size()) ? v[size_t(c)] : Rational(0);
          };
          auto half_omega = [&](const Surd &sd) { /* (1 + sqrt d)/2 */
            return poly_scale(poly_add(poly_from({1}), sd.s), Rational(1, 2));
          };
          if (one.size() == 3) {
            put(1, half_omega(surds[0]));
            put(2, half_omega(surds[1]));
            put(3, poly_mod(poly_mul(half_omega(surds[0]), half_omega(surds[1])), f));
          } else if (one.size() == 1) {
            put(1, rest[0].s);
            put(2, half_omega(one[0]));
            put(3, poly_scale(poly_add(rest[0].s, rest[1].s), Rational(1, 2)));
          } else if (one.empty()) {
            /* two of the three are 2 mod 4; their half-sum completes the basis */
            std::vector<Surd> evens, odds;
            for (auto &sd : surds) (mod4(sd.d) == 2 ? evens : odds).push_back(sd);
            if (evens.size() == 2 && odds.size() == 1) {
              put(1, evens[0].s);
              put(2, odds[0].s);
              put(3, poly_scale(poly_add(evens[0].s, evens[1].s), Rational(1, 2)));
            } else {
              put(1, sq_m); put(2, sq_k); put(3, poly_scale(poly_add(sq_m, sq_k), Rational(1, 2)));
            }
          }
          K.Bt = B.transpose();
          return true;
        }
      }
    }
  }

  /* squarefree discriminant: power basis is maximal */
  Rational d = poly_discriminant(f);
  if (d.get_den() == 1 && is_squarefree(d.get_num())) {
    K.Bt = B.transpose();
    return true;
  }
  return false;
}

} // namespace detail

inline FieldPtr make_field(const QPoly &fin, const QMatrix *basis_rows = nullptr,
                           long precision_bits = 0) {
  QPoly f = poly_trim(fin);
  int n = poly_deg(f);
  if (n < 1) throw input_error("defining polynomial must have degree >= 1");
  if (f.back() != 1) throw input_error("defining polynomial must be monic");
  if (!poly_is_integral(f)) throw input_error("defining polynomial must have integer coefficients");
  if (!poly_is_squarefree(f)) throw input_error("defining polynomial must be squarefree");

  auto K = std::make_shared<NumberField>();
  K->f = f;
  K->n = n;
  K->theta_traces = detail::newton_power_sums(f, n);

  if (basis_rows) {
    if (basis_rows->rows != n || basis_rows->cols != n)
      throw input_error("integral basis must be a square matrix of the field degree");
    K->Bt = basis_rows->transpose();
  } else if (!detail::set_family_basis(*K)) {
    throw input_error("no integral basis given and the field is not in a built-in family; "
                      "pass the basis explicitly");
  }
  if (det(K->Bt) == 0) throw input_error("integral basis is singular");
  K->Bt_inv = inverse(K->Bt);
  detail::verify_ring_closed(*K);

  QMatrix t = trace_form(f, K->Bt, K->theta_traces);
  Rational d = det(t);
  if (d.get_den() != 1) throw input_error("trace form determinant not integral");
  K->disc = d.get_num();
  if (K->disc == 0) throw input_error("degenerate trace form");

  K->r = n == 1 ? 1 : sturm_real_root_count(f);
  if ((n - K->r) % 2 != 0) throw input_error("signature mismatch");
  K->s = (n - K->r) / 2;

  K->places = compute_places(f, K->r, precision_bits > 0 ? precision_bits : CReal::default_prec());
  if (n <= 12) detail::assert_irreducible(f, K->places);
  return K;
}

struct Signature {
  int r, s, lambda;
};

inline Signature signature(const NumberField &K) { return {K.r, K.s, K.r + K.s - 1}; }

/* embeddings of a at every place (complex ones once, upper half plane) */
inline std::vector<CComplex> embeddings(const FieldElement &a, const std::vector<Place> &places) {
  std::vector<CComplex> out;
  for (auto &pl : places) {
    CComplex z = pl.z;
    /* widen the enclosure by the certification radius before evaluating */
    CReal re = z.re + CReal::of_decimal("0", pl.radius, z.re.prec());
    CReal im = pl.real ? CReal::of(0L, z.re.prec()) : z.im + CReal::of_decimal("0", pl.radius, z.re.prec());
    out.push_back(poly_eval(a.c, CComplex{re, im}));
  }
  return out;
}

struct Automorphism {
  FieldElement image; /* of the field generator */
};

inline FieldElement apply(const Automorphism &s, const FieldElement &x) {
  FieldPtr K = x.K;
  FieldElement acc = K->zero();
  for (auto it = x.c.rbegin(); it != x.c.rend(); ++it) {
    acc = acc * s.image;
    acc = acc + K->element({*it});
  }
  return acc;
}

inline Automorphism compose(const Automorphism &a, const Automorphism &b) {
  return {apply(a, b.image)}; /* (a o b)(theta) = a(b(theta)) */
}

inline bool operator==(const Automorphism &a, const Automorphism &b) { return a.image == b.image; }

namespace detail {

inline void verify_automorphism(const NumberField &K, const Automorphism &s) {
  FieldElement img = s.image;
  /* f(image) = 0 exactly */
  FieldElement v = K.zero();
  for (auto it = K.f.rbegin(); it != K.f.rend(); ++it) {
    v = v * img;
    v = v + K.element({*it});
  }
  if (!poly_is_zero(v.c)) throw input_error("claimed automorphism does not satisfy the minimal polynomial");
  /* stabilizes the maximal order */
  for (int i = 0; i < K.n; ++i)
    if (!K.is_integral(apply(s, K.basis_element(i))))
      throw input_error("claimed automorphism does not preserve the ring of integers");
  /* homomorphism on basis products */
  for (int i = 0; i < K.n; ++i)
    for (int j = i; j < K.n; ++j) {
      FieldElement bi = K.basis_element(i), bj = K.basis_element(j);
      if (!(apply(s, bi * bj) == apply(s, bi) * apply(s, bj)))
        throw input_error("claimed automorphism is not multiplicative");
    }
}

/* integer-relation recognition of sum z_i b_i = target root, via one
   high-precision embedding per basis element */
inline std::vector<Automorphism> discover_automorphisms(const FieldPtr &K) {
  long prec = std::max(CReal::default_prec(), 320L);
  for (; prec <= 1024; prec *= 2) {
    auto places = compute_places(K->f, K->r, prec);
    /* rebuild the full root list, conjugates included */
    std::vector<CComplex> roots;
    for (auto &pl : places) {
      roots.push_back(pl.z);
      if (!pl.real) roots.push_back(pl.z.conj());
    }
    int n = K->n;
    /* identity embedding: first root (deterministic order) */
    const CComplex &alpha1 = roots[0];
    std::vector<CComplex> bx;
    for (int i = 0; i < n; ++i) {
      FieldElement b = K->basis_element(i);
      bx.push_back(poly_eval(b.c, alpha1));
    }
    std::vector<Automorphism> found;
    int failed = 0;
    for (auto &alpha : roots) {
      CComplex tgt = alpha;
      /* recognition lattice rows (e_i ; C b_i(alpha1)), last row (0..0,1 ; C alpha);
         C large enough that only true relations give short vectors, small enough
         that C^2 entries keep the unit diagonal inside the working mantissa */
      double C = std::ldexp(1.0, int(std::min(prec / 3, 320L)));
      CReal c2 = CReal::of_double(C, prec) * CReal::of_double(C, prec);
      GramMatrix g(n + 1);
      auto dot = [&](const CComplex &u, const CComplex &v) {
        return u.re * v.re + u.im * v.im;
      };
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          CComplex u = (i < n) ? bx[size_t(i)] : tgt;
          CComplex v = (j < n) ? bx[size_t(j)] : tgt;
          CReal val = dot(u, v) * c2;
          if (i == j) val = val + CReal::of(1L, prec);
          g.at(i, j) = val;
          g.at(j, i) = val;
        }
      ZMatrix red = lll_reduce(ZMatrix::identity(n + 1), g);
      bool got = false;
      for (int rrow = 0; rrow < red.rows && !got; ++rrow) {
        Integer w = red.at(rrow, n);
        if (abs(w) != 1) continue;
        std::vector<Integer> z(size_t(n), Integer(0));
        for (int i = 0; i < n; ++i) z[size_t(i)] = (w == 1) ? -red.at(rrow, i) : red.at(rrow, i);
        FieldElement cand = K->from_integral_coords(z);
        try {
          Automorphism s{cand};
          verify_automorphism(*K, s);
          if (std::find(found.begin(), found.end(), s) == found.end()) found.push_back(s);
          got = true;
        } catch (const input_error &) { /* try further rows */ }
      }
      if (!got) ++failed;
    }
    /* a failed root either lies outside the field (non-normal input) or the
       precision was too low; escalate first, accept a partial group only at
       the top precision */
    if (failed == 0 || prec * 2 > 1024) {
      Automorphism id{K->theta()};
      std::vector<Automorphism> out{id};
      for (auto &s : found)
        if (!(s == id)) out.push_back(s);
      if (K->n % int(out.size()) != 0)
        throw precision_error("automorphism count does not divide the degree; "
                              "raise the precision or supply generator images");
      return out;
    }
  }
  throw precision_error("automorphism recognition failed; supply explicit generator images");
}

} // namespace detail

/* hints: images of the generator, power-basis coordinates, identity first;
   their order becomes the canonical element order of the Galois group. */
inline std::vector<Automorphism> automorphisms(const FieldPtr &K,
                                               const std::vector<QPoly> &hints = {}) {
  if (hints.empty()) return detail::discover_automorphisms(K);
  std::vector<Automorphism> out;
  for (auto &h : hints) {
    Automorphism s{K->element(poly_trim(h))};
    detail::verify_automorphism(*K, s);
    out.push_back(std::move(s));
  }
  if (!(out[0].image == K->theta()))
    throw input_error("first automorphism hint must be the identity map");
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i] == out[j]) throw input_error("duplicate automorphism hints");
  return out;
}

struct SubfieldData {
  FieldPtr field;                      /* the fixed field on its own generator */
  FieldElement gamma;                  /* that generator inside L */
  std::vector<FieldElement> basis_in_L; /* its integral basis mapped into L */
};

/* image of a subfield element under the inclusion */
inline FieldElement include_element(const SubfieldData &sd, const FieldElement &x) {
  FieldPtr L = sd.gamma.K;
  FieldElement acc = L->zero();
  for (auto it = x.c.rbegin(); it != x.c.rend(); ++it) {
    acc = acc * sd.gamma;
    acc = acc + L->element({*it});
  }
  return acc;
}

inline SubfieldData fixed_field(const FieldPtr &L, const std::vector<Automorphism> &H) {
  int n = L->n;
  if (H.empty() || int(H.size()) > n || n % int(H.size()) != 0)
    throw input_error("subgroup size must divide the degree");
  int m = n / int(H.size());

  /* integer kernel of the stacked (sigma - 1) maps on integral coordinates */
  ZMatrix stack(n * int(H.size()), n);
  int row0 = 0;
  for (auto &s : H) {
    for (int j = 0; j < n; ++j) {
      auto z = L->integral_coords(apply(s, L->basis_element(j)));
      for (int i = 0; i < n; ++i) {
        Rational d = z[size_t(i)] - (i == j ? Rational(1) : Rational(0));
        if (d.get_den() != 1) throw input_error("automorphism does not preserve the order");
        stack.at(row0 + i, j) = d.get_num();
      }
    }
    row0 += n;
  }
  auto fixed = integer_kernel(stack);
  if (int(fixed.size()) != m) throw input_error("fixed module has unexpected rank");

  std::vector<FieldElement> fixed_elems;
  for (auto &v : fixed) fixed_elems.push_back(L->from_integral_coords(v));

  /* primitive element: small integer combinations, budget 10^4 */
  long budget = 10000;
  std::vector<long> coeff(fixed.size(), 0);
  auto next_candidate = [&]() -> bool {
    /* odometer over {0,±1,±2,±3}^m in a deterministic order */
    for (size_t i = 0; i < coeff.size(); ++i) {
      long c = coeff[i];
      long order[] = {0, 1, -1, 2, -2, 3, -3};
      int idx = 0;
      while (order[idx] != c) ++idx;
      if (idx + 1 < 7) { coeff[i] = order[idx + 1]; return true; }
      coeff[i] = 0;
    }
    return false;
  };

  QPoly minpoly;
  FieldElement gamma = L->zero();
  bool have = false;
  while (budget-- > 0 && next_candidate()) {
    FieldElement g = L->zero();
    for (size_t i = 0; i < coeff.size(); ++i)
      if (coeff[i] != 0) g = g + L->element(poly_scale(fixed_elems[i].c, Rational(coeff[i])));
    /* minimal polynomial by incremental kernel of powers */
    QMatrix powers(m + 1, n);
    FieldElement p = L->one();
    int k = 0;
    QPoly mp;
    for (; k <= m; ++k) {
      for (int c2 = 0; c2 < n; ++c2)
        powers.at(k, c2) = c2 < int(p.c.size()) ? p.c[size_t(c2)] : Rational(0);
      QMatrix sub(k + 1, n);
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j < n; ++j) sub.at(i, j) = powers.at(i, j);
      auto ker = rational_kernel(sub.transpose());
      if (!ker.empty()) {
        for (auto &x : ker[0]) mp.emplace_back(x);
        mp = poly_monic(poly_trim(mp));
        break;
      }
      p = p * g;
    }
    if (poly_deg(mp) == m) {
      gamma = g;
      minpoly = mp;
      have = true;
      break;
    }
  }
  if (!have) throw input_error("primitive element search exhausted its budget of 10000 candidates");

  /* subfield basis: solve for each fixed vector on the gamma power basis */
  QMatrix P(n, m);
  FieldElement p = L->one();
  for (int t = 0; t < m; ++t) {
    for (int i = 0; i < n; ++i) P.at(i, t) = i < int(p.c.size()) ? p.c[size_t(i)] : Rational(0);
    p = p * gamma;
  }
  QMatrix rows(m, m);
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> rhs(size_t(n), Rational(0));
    for (int i = 0; i < n; ++i)
      rhs[size_t(i)] = i < int(fixed_elems[size_t(j)].c.size()) ? fixed_elems[size_t(j)].c[size_t(i)] : Rational(0);
    auto w = m == 1 ? std::vector<Rational>{rhs[0]} : solve(P, rhs);
    for (int t = 0; t < m; ++t) rows.at(j, t) = w[size_t(t)];
  }

  SubfieldData sd;
  sd.field = make_field(minpoly, &rows);
  sd.gamma = gamma;
  for (int j = 0; j < m; ++j) sd.basis_in_L.push_back(fixed_elems[size_t(j)]);
  return sd;
}

struct TorsionUnits {
  long w = 1;
  FieldElement generator;
};

/* |mu(K)| and a generator: T2-sphere enumeration plus the exact power test */
inline TorsionUnits torsion_units(const FieldPtr &K) {
  int n = K->n;
  /* T2 gram of the integral basis from certified embeddings */
  std::vector<std::vector<CComplex>> emb;
  for (int i = 0; i < n; ++i) emb.push_back(embeddings(K->basis_element(i), K->places));
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
  CReal radius = CReal::of(Rational(n)) + CReal::of(Rational(1, 1 << 20));
  auto sv = enumerate_short_vectors(g, radius);

  /* all m with euler_phi(m) <= n can occur as torsion orders */
  std::vector<long> orders;
  for (long m = 1; m <= 4 * n * n + 4; ++m)
    if (euler_phi(m) <= n) orders.push_back(m);

  TorsionUnits best{1, K->one()};
  auto consider = [&](const FieldElement &x) {
    if (poly_is_zero(x.c)) return;
    Rational nr = K->norm(x);
    if (nr != 1 && nr != -1) return;
    for (long m : orders) {
      if (pow(x, (unsigned long)m) == K->one()) {
        if (m > best.w) best = {m, x};
        return;
      }
    }
  };
  for (auto &v : sv.vectors) {
    FieldElement x = K->from_integral_coords(v);
    consider(x);
    consider(-x);
  }
  if (best.w == 1) best = {2, -K->one()}; /* -1 is always there; enumeration sanity */
  return best;
}

inline long nu_valuation(const TorsionUnits &t, long p) {
  return valuation(Integer(t.w), Integer(p));
}

} // namespace galrel

#endif
