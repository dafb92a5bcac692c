#ifndef GALREL_ARAKELOV_HPP
#define GALREL_ARAKELOV_HPP

/* Arakelov divisors: integer coefficients on prime ideals plus certified
   real coefficients on the infinite places.  Principal divisors use the
   product-formula normalization (-log|tau f| at real places, -log|tau f|^2
   at complex ones) so that their degree is zero; pushforward along an
   inclusion sums over the fiber, pullback weights by ramification indices
   (local degrees at infinity), and the two compose to [L:K]. */

#include <set>

#include "ideals.hpp"

namespace galrel {

struct ArakelovDivisor {
  FieldPtr K;
  std::vector<std::pair<Ideal, Integer>> finite; /* prime ideal -> coefficient */
  std::vector<CReal> infinite;                   /* one per place of K */
};

inline ArakelovDivisor arakelov_zero(const FieldPtr &K) {
  ArakelovDivisor d;
  d.K = K;
  d.infinite.assign(K->places.size(), CReal::of(0L));
  return d;
}

namespace detail {

/* canonical order on the finite support, merging repeats */
inline void divisor_normalize(ArakelovDivisor &d) {
  std::sort(d.finite.begin(), d.finite.end(),
            [](const std::pair<Ideal, Integer> &a, const std::pair<Ideal, Integer> &b) {
              return a.first.basis.a < b.first.basis.a;
            });
  std::vector<std::pair<Ideal, Integer>> merged;
  for (auto &term : d.finite) {
    if (!merged.empty() && ideal_eq(merged.back().first, term.first))
      merged.back().second += term.second;
    else
      merged.push_back(term);
  }
  d.finite.clear();
  for (auto &term : merged)
    if (term.second != 0) d.finite.push_back(term);
}

/* exact valuation of an integral ideal at a prime: the largest power of P
   containing it */
inline int prime_valuation(const Ideal &P, const Ideal &B) {
  int v = 0;
  Ideal Pk = P;
  while (ideal_contains(Pk, B)) {
    ++v;
    Pk = ideal_mul(Pk, P);
    if (v > 64) throw precision_error("prime valuation runaway");
  }
  return v;
}

/* the rational prime under a prime ideal */
inline long base_prime(const Ideal &P) {
  auto fs = factor(ideal_norm_integral(P));
  if (fs.size() != 1) throw input_error("not a prime ideal");
  return to_long(fs[0].first);
}

} // namespace detail

inline ArakelovDivisor divisor_add(const ArakelovDivisor &a, const ArakelovDivisor &b) {
  if (!(a.K == b.K)) throw input_error("divisors live on different fields");
  ArakelovDivisor d = a;
  d.finite.insert(d.finite.end(), b.finite.begin(), b.finite.end());
  for (size_t i = 0; i < d.infinite.size(); ++i) d.infinite[i] = d.infinite[i] + b.infinite[i];
  detail::divisor_normalize(d);
  return d;
}

inline ArakelovDivisor divisor_scale(const ArakelovDivisor &a, long c) {
  ArakelovDivisor d = a;
  for (auto &term : d.finite) term.second *= c;
  for (auto &x : d.infinite) x = x.mul_si(c);
  detail::divisor_normalize(d);
  return d;
}

/* deg D = sum nu_P log N(P) + sum of the infinite coefficients */
inline CReal degree(const ArakelovDivisor &D) {
  std::vector<CReal> terms = D.infinite;
  for (auto &[P, nu] : D.finite)
    terms.push_back(CReal::of(ideal_norm_integral(P)).log().mul_si(to_long(nu)));
  if (terms.empty()) return CReal::of(0L);
  return sum(terms);
}

/* divisor of a nonzero field element: finite valuations from the ideal it
   generates, -log|tau f| at real places and -log|tau f|^2 at complex ones */
inline ArakelovDivisor principal_divisor(const FieldElement &f) {
  if (poly_is_zero(f.c)) throw input_error("divisor of zero");
  const FieldPtr &K = f.K;
  ArakelovDivisor D = arakelov_zero(K);

  Ideal A = principal_ideal(f);
  Ideal A0{K, A.basis, 1};
  std::set<long> ps;
  for (auto &[p, e] : factor(ideal_norm_integral(A0))) ps.insert(to_long(p));
  for (auto &[p, e] : factor(A.den)) ps.insert(to_long(p));
  for (long p : ps)
    for (auto &pf : factor_prime(K, p)) {
      Integer nu = detail::prime_valuation(pf.P, A0) - Integer(pf.e) * valuation(A.den, Integer(p));
      if (nu != 0) D.finite.push_back({pf.P, nu});
    }
  detail::divisor_normalize(D);

  auto emb = embeddings(f, K->places);
  for (size_t i = 0; i < K->places.size(); ++i) {
    CReal a = emb[i].abs().log();
    D.infinite[i] = K->places[i].real ? a.mul_si(-1) : a.mul_si(-2);
  }
  return D;
}

namespace detail {

/* which place of the subfield sits under each place of L: locate the
   enclosure of gamma's embedding among the subfield's root disks */
inline std::vector<int> places_under(const SubfieldData &sd) {
  const FieldPtr &L = sd.gamma.K;
  const FieldPtr &K = sd.field;
  std::vector<int> under;
  for (auto &pl : L->places) {
    CComplex z = pl.z;
    auto g = poly_eval(sd.gamma.c, z);
    int found = -1;
    for (size_t j = 0; j < K->places.size(); ++j) {
      CReal d1 = (g - K->places[j].z).abs();
      CComplex conj = K->places[j].z.conj();
      CReal d2 = (g - conj).abs();
      if (d1.lower() <= 0 || d2.lower() <= 0) {
        if (found >= 0) throw precision_error("subfield place match is ambiguous");
        found = int(j);
      }
    }
    if (found < 0) throw precision_error("no subfield place under an embedding");
    under.push_back(found);
  }
  return under;
}

} // namespace detail

/* tau_*: sum over the fiber, weighting finite primes by the inertia degree */
inline ArakelovDivisor pushforward(const SubfieldData &sd, const ArakelovDivisor &D) {
  const FieldPtr &L = sd.gamma.K;
  const FieldPtr &K = sd.field;
  if (!(D.K == L)) throw input_error("divisor does not live on the extension");
  ArakelovDivisor out = arakelov_zero(K);
  for (auto &[P, nu] : D.finite) {
    long p = detail::base_prime(P);
    long fL = valuation(ideal_norm_integral(P), Integer(p));
    bool matched = false;
    for (auto &pf : factor_prime(K, p)) {
      if (!ideal_contains(P, extend_ideal(sd, pf.P))) continue;
      long fK = valuation(ideal_norm_integral(pf.P), Integer(p));
      if (fL % fK != 0) throw precision_error("inertia degrees are inconsistent");
      out.finite.push_back({pf.P, nu * Integer(fL / fK)});
      matched = true;
      break;
    }
    if (!matched) throw input_error("unfactorable support");
  }
  auto under = detail::places_under(sd);
  for (size_t i = 0; i < D.infinite.size(); ++i)
    out.infinite[size_t(under[i])] = out.infinite[size_t(under[i])] + D.infinite[i];
  detail::divisor_normalize(out);
  return out;
}

/* tau^*: finite primes spread with ramification indices, infinite places
   with their local degrees */
inline ArakelovDivisor pullback(const SubfieldData &sd, const ArakelovDivisor &D) {
  const FieldPtr &L = sd.gamma.K;
  const FieldPtr &K = sd.field;
  if (!(D.K == K)) throw input_error("divisor does not live on the subfield");
  ArakelovDivisor out = arakelov_zero(L);
  for (auto &[P, nu] : D.finite) {
    long p = detail::base_prime(P);
    Ideal E = extend_ideal(sd, P);
    bool matched = false;
    for (auto &pf : factor_prime(L, p)) {
      int e = detail::prime_valuation(pf.P, E);
      if (e == 0) continue;
      out.finite.push_back({pf.P, nu * Integer(e)});
      matched = true;
    }
    if (!matched) throw input_error("unfactorable support");
  }
  auto under = detail::places_under(sd);
  for (size_t i = 0; i < L->places.size(); ++i) {
    int deg = (!L->places[i].real && K->places[size_t(under[i])].real) ? 2 : 1;
    out.infinite[i] = D.infinite[size_t(under[i])].mul_si(deg);
  }
  detail::divisor_normalize(out);
  return out;
}

/* ---- genus, regulators, and the section-4 identities -------------------- */

struct GenusValue {
  CReal value;
};

/* g = log( w sqrt|d| / (2^r (2 pi)^s) ) */
inline GenusValue arakelov_genus(const FieldPtr &K, long w) {
  CReal half_logd = CReal::of(Integer(abs(K->disc))).log() / CReal::of(2L);
  CReal two_pi = CReal::pi().mul_si(2);
  CReal g = CReal::of(w).log() + half_logd - CReal::of(2L).log().mul_si(K->r) -
            two_pi.log().mul_si(K->s);
  return GenusValue{g};
}

enum class Provenance { computed, supplied };

struct RegulatorData {
  CReal value;
  Provenance provenance = Provenance::computed;
};

inline RegulatorData real_quadratic_regulator(const FieldPtr &K) {
  FieldElement u = real_quadratic_fundamental_unit(K);
  CReal best = CReal::of(1L);
  for (auto &z : embeddings(u, K->places)) {
    CReal a = z.abs();
    if (a.upper() > best.upper()) best = a;
  }
  return RegulatorData{best.log(), Provenance::computed};
}

/* regulator of a totally complex quartic: the lifted real-quadratic unit is
   fundamental up to index 1 or 2; a bounded enumeration decides which by
   looking for a square root of (torsion times the lift) */
inline RegulatorData cm_quartic_regulator(const FieldPtr &K) {
  if (K->n != 4 || K->s != 2) throw input_error("not a totally complex quartic");
  auto us = default_units(K);
  FieldElement u = us.at(0);
  /* a = the large normalized absolute value ||u|| = |sigma u|^2 */
  CReal a = CReal::of(1L);
  for (auto &z : embeddings(u, K->places)) {
    CReal m = z.abs() * z.abs();
    if (m.upper() > a.upper()) a = m;
  }
  /* a square root v would have T2(v) = 2(sqrt a + 1/sqrt a) */
  CReal root = a.sqrt();
  CReal radius = (root + CReal::of(1L) / root).mul_si(2) + CReal::of_double(1e-6);
  GramMatrix g = detail::ideal_gram(whole_ring(K));
  TorsionUnits tor = torsion_units(K);
  FieldElement uinv = K->inverse(u);
  bool halved = false;
  for (auto &v : enumerate_short_vectors(g, radius).vectors) {
    std::vector<Rational> c(size_t(K->n), Rational(0));
    for (int t = 0; t < K->n; ++t) c[size_t(t)] = Rational(v[size_t(t)]);
    FieldElement x = K->from_integral_coords(c);
    Rational nx = K->norm(x);
    if (nx != 1 && nx != -1) continue;
    FieldElement x2 = x * x;
    FieldElement t = K->one();
    for (long j = 0; j < tor.w && !halved; ++j) {
      if (x2 == t * u || x2 == t * uinv) halved = true;
      t = t * tor.generator;
    }
    if (halved) break;
  }
  CReal reg = halved ? a.log() / CReal::of(2L) : a.log();
  return RegulatorData{reg, Provenance::computed};
}

/* regulator for the families the verifier supports: the empty determinant 1
   at unit rank zero, continued fractions for real quadratics, the bounded
   search for totally complex quartics */
inline RegulatorData regulator_data(const FieldPtr &K) {
  int rank = K->r + K->s - 1;
  if (rank == 0) return RegulatorData{CReal::of(1L), Provenance::computed};
  if (rank == 1 && K->r == 2) return real_quadratic_regulator(K);
  if (rank == 1 && K->s == 2) return cm_quartic_regulator(K);
  throw unsupported_error("unsupported unit rank");
}

/* a supplied reference value is cross-checked against the unit search,
   then carried forward with its own enclosure */
inline RegulatorData regulator_data(const FieldPtr &K, const CReal &supplied) {
  RegulatorData computed = regulator_data(K);
  int rank = K->r + K->s - 1;
  CReal own = rank == 0 ? CReal::of(1L) : computed.value;
  CReal diff = own - supplied;
  if (diff.lower() > 0 || diff.upper() < 0)
    throw precision_error("supplied regulator disagrees with the unit search");
  return RegulatorData{supplied, Provenance::supplied};
}

struct GenusRelationReport {
  CReal residual;
  bool hypothesis_held = true; /* gcd(|H|, w_L) = 1 wherever n_H != 0 */
};

/* residual of sum n_H g_{L^H} = sum n_H log w_{L^H} over a subgroup relation;
   subfield i is the fixed field of a subgroup of order [L:subfield] */
inline GenusRelationReport check_genus_relation(const FieldPtr &L,
                                                const std::vector<FieldPtr> &subfields,
                                                const std::vector<long> &n) {
  if (subfields.size() != n.size()) throw input_error("relation length mismatch");
  long wL = torsion_units(L).w;
  GenusRelationReport rep;
  std::vector<CReal> terms;
  for (size_t i = 0; i < subfields.size(); ++i) {
    if (n[i] == 0) continue;
    long order = L->n / subfields[i]->n;
    if (gcd(Integer(order), Integer(wL)) != 1) rep.hypothesis_held = false;
    long w = torsion_units(subfields[i]).w;
    CReal g = arakelov_genus(subfields[i], w).value;
    terms.push_back((g - CReal::of(w).log()).mul_si(n[i]));
  }
  rep.residual = terms.empty() ? CReal::of(0L) : sum(terms);
  return rep;
}

struct HReg {
  Integer h = 1;
  RegulatorData reg;
};

/* residual of the class-number-regulator relation
   prod (h Reg)^{r_H} = prod w^{r_H}, evaluated as
   sum r_H (log h + log Reg - log w); rank-zero regulators contribute log 1 */
inline CReal check_brauer_identity(const FieldPtr &L, const std::vector<FieldPtr> &subfields,
                                   const std::vector<long> &r, const std::vector<HReg> &hreg) {
  (void)L;
  if (subfields.size() != r.size() || subfields.size() != hreg.size())
    throw input_error("missing class number or regulator for a subfield");
  std::vector<CReal> terms;
  for (size_t i = 0; i < subfields.size(); ++i) {
    if (r[i] == 0) continue;
    long w = torsion_units(subfields[i]).w;
    int rank = subfields[i]->r + subfields[i]->s - 1;
    CReal logreg = rank == 0 ? CReal::of(0L) : hreg[i].reg.value.log();
    CReal term = CReal::of(hreg[i].h).log() + logreg - CReal::of(w).log();
    terms.push_back(term.mul_si(r[i]));
  }
  return terms.empty() ? CReal::of(0L) : sum(terms);
}

} // namespace galrel

#endif
