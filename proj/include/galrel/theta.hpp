#ifndef GALREL_THETA_HPP
#define GALREL_THETA_HPP

/* Twisted Minkowski metrics and certified theta sums.  A divisor supported
   on the infinite places rescales each embedding block of the trace form;
   eta is the lattice Gaussian of the rescaled form, summed over a ball with
   a proven tail: for q(x) > R^2, e^{-pi q} <= e^{-pi R^2/2} e^{-pi q/2},
   and the half-exponent series is bounded axis-by-axis through the
   certified Gram-Schmidt diagonal of the reduced form. */

#include <cstdlib>

#include "arakelov.hpp"

namespace galrel {

struct InfiniteDivisor {
  FieldPtr K;
  std::vector<CReal> a; /* one coefficient per place */
};

inline InfiniteDivisor infinite_zero(const FieldPtr &K) {
  return {K, std::vector<CReal>(K->places.size(), CReal::of(0L))};
}

enum class BVariant { paper, trace };

struct EtaValue {
  CReal value;
  CReal tail_bound;
  double radius_sq = 0; /* enumeration radius actually used */
  long points = 0;      /* lattice points in the partial sum */
};

/* Gram of the integral basis under the twisted metric: a real place
   contributes sigma(b_i) sigma(b_j) e^{-2a}, a complex place
   2 Re(sigma(b_i) conj(sigma(b_j))) e^{-a}.  At a = 0 this is the trace
   form with the usual complex doubling. */
inline GramMatrix metric_from_divisor(const FieldPtr &K, const InfiniteDivisor &A) {
  if (!(A.K == K) || A.a.size() != K->places.size())
    throw input_error("divisor does not match the field");
  int n = K->n;
  std::vector<std::vector<CComplex>> emb;
  emb.resize(size_t(n));
  for (int j = 0; j < n; ++j) emb[size_t(j)] = embeddings(K->basis_element(j), K->places);
  std::vector<CReal> scale;
  for (size_t p = 0; p < K->places.size(); ++p)
    scale.push_back(A.a[p].mul_si(K->places[p].real ? -2 : -1).exp());
  GramMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<CReal> terms;
      for (size_t p = 0; p < K->places.size(); ++p) {
        CReal re = emb[size_t(i)][p].re * emb[size_t(j)][p].re +
                   emb[size_t(i)][p].im * emb[size_t(j)][p].im;
        terms.push_back((re * scale[p]).mul_si(K->places[p].real ? 1 : 2));
      }
      g.at(i, j) = sum(terms);
      g.at(j, i) = g.at(i, j);
    }
  return g;
}

namespace detail {

/* Gram-Schmidt diagonal of the LLL-reduced form, certified positive */
inline std::vector<CReal> reduced_gram_diagonal(const GramMatrix &gram) {
  const int n = gram.n;
  ZMatrix U = lll_reduce(ZMatrix::identity(n), gram);
  GramMatrix R(n);
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
  std::vector<CReal> d(size_t(n), CReal::of(0L));
  std::vector<std::vector<CReal>> mu(size_t(n), std::vector<CReal>(size_t(n), CReal::of(0L)));
  for (int i = 0; i < n; ++i) {
    CReal di = R.at(i, i);
    for (int k = 0; k < i; ++k) {
      CReal m = R.at(i, k);
      for (int l = 0; l < k; ++l)
        m = m - mu[size_t(i)][size_t(l)] * mu[size_t(k)][size_t(l)] * d[size_t(l)];
      mu[size_t(i)][size_t(k)] = m / d[size_t(k)];
      di = di - mu[size_t(i)][size_t(k)] * mu[size_t(i)][size_t(k)] * d[size_t(k)];
    }
    if (!di.surely_positive()) throw precision_error("metric not certifiably positive definite");
    d[size_t(i)] = di;
  }
  return d;
}

/* sum over Z^n of e^{-pi q(x)/2}, bounded axis-by-axis: each nested shifted
   sum is at most 3 + 2 e^{-c}/(1 - e^{-c}) with c = pi d_i / 2 */
inline CReal half_theta_box_bound(const GramMatrix &gram) {
  CReal bound = CReal::of(1L);
  for (auto &di : reduced_gram_diagonal(gram)) {
    CReal e = (CReal::pi() * di / CReal::of(2L)).neg().exp();
    bound = bound * (CReal::of(3L) + e.mul_si(2) / (CReal::of(1L) - e));
  }
  return bound;
}

} // namespace detail

/* 1 + the Gaussian sum over nonzero points of q(x) <= R^2, R chosen so the
   certified tail is under tol */
inline EtaValue eta_from_gram(const GramMatrix &gram, double tol) {
  if (!(tol > 0)) throw input_error("tolerance must be positive");
  CReal theta_half = detail::half_theta_box_bound(gram);
  double r2 = 2.0 / M_PI * (std::log(theta_half.upper()) - std::log(tol)) + 1.0;
  if (r2 < 1.0) r2 = 1.0;
  CReal tail;
  for (int tries = 0;; ++tries) {
    tail = (CReal::pi() * CReal::of_double(r2) / CReal::of(2L)).neg().exp() * theta_half;
    if (tail.upper() < tol) break;
    if (tries > 60 || r2 > 1e4) throw precision_error("eta tolerance unreachable");
    r2 *= 1.5;
  }
  auto sv = enumerate_short_vectors(gram, CReal::of_double(r2));
  std::vector<CReal> terms{CReal::of(1L)};
  for (auto &v : sv.vectors) {
    CReal t = (CReal::pi() * detail::form_value(gram, v)).neg().exp();
    terms.push_back(sv.modulo_sign ? t.mul_si(2) : t);
  }
  EtaValue out;
  out.value = sum(terms);
  out.tail_bound = tail;
  out.radius_sq = r2;
  out.points = long(sv.vectors.size()) * (sv.modulo_sign ? 2 : 1) + 1;
  return out;
}

inline EtaValue eta(const FieldPtr &K, const InfiniteDivisor &A, double tol) {
  return eta_from_gram(metric_from_divisor(K, A), tol);
}

/* the divisor B(H): the paper's displayed coefficients, or the ones forced
   by the |H|-scaling of the trace identity; both vanish at |H| = 1 where
   the term must be the untwisted sum */
inline InfiniteDivisor b_divisor(const FieldPtr &K, long h, BVariant variant) {
  if (h < 1) throw input_error("subgroup order must be positive");
  InfiniteDivisor D = infinite_zero(K);
  if (h == 1) return D;
  CReal lh = CReal::of(h).log();
  for (size_t i = 0; i < K->places.size(); ++i) {
    if (variant == BVariant::paper)
      D.a[i] = K->places[i].real ? lh.neg() / CReal::pi().mul_si(2)
                                 : (lh - CReal::of(2L).log()).neg() / CReal::pi();
    else
      D.a[i] = K->places[i].real ? lh.neg() / CReal::of(2L) : lh.neg();
  }
  return D;
}

/* descend an invariant divisor to the subfield.  The base coefficient is
   fixed by summing the actual fiber factors: over a base place tau the
   places of L contribute sum_{sigma | tau} w_sigma e^{-(2|1) a_sigma},
   which must equal |H| times the base factor, so the identity
   ||i(x)||^2_{L,D} = |H| ||x||^2_{K,D'} holds termwise.  With every fiber
   of one type this is the plain coefficient (halved when complex places
   sit over a real one). */
inline InfiniteDivisor descend_divisor(const SubfieldData &sd, const InfiniteDivisor &D) {
  const FieldPtr &L = sd.gamma.K;
  const FieldPtr &K = sd.field;
  if (!(D.K == L)) throw input_error("divisor does not live on the extension");
  long h = L->n / K->n;
  auto under = detail::places_under(sd);
  std::vector<int> first(K->places.size(), -1);
  std::vector<std::vector<CReal>> fiber(K->places.size());
  for (size_t i = 0; i < D.a.size(); ++i) {
    size_t j = size_t(under[i]);
    if (first[j] < 0)
      first[j] = int(i);
    else if (!(D.a[size_t(first[j])] - D.a[i]).contains_zero())
      throw input_error("divisor is not invariant over the subfield");
    fiber[j].push_back(D.a[i].mul_si(L->places[i].real ? -2 : -1).exp()
                           .mul_si(L->places[i].real ? 1 : 2));
  }
  InfiniteDivisor out = infinite_zero(K);
  for (size_t j = 0; j < K->places.size(); ++j) {
    CReal s = sum(fiber[j]) / CReal::of(h);
    out.a[j] = K->places[j].real ? s.log().mul_si(-1) / CReal::of(2L)
                                 : (s / CReal::of(2L)).log().mul_si(-1);
  }
  return out;
}

inline InfiniteDivisor lift_divisor(const SubfieldData &sd, const InfiniteDivisor &A) {
  const FieldPtr &L = sd.gamma.K;
  if (!(A.K == sd.field)) throw input_error("divisor does not live on the subfield");
  auto under = detail::places_under(sd);
  InfiniteDivisor out = infinite_zero(L);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = A.a[size_t(under[i])];
  return out;
}

/* both sides of ||i(x)||^2_{L,D} = |H| ||x||^2_{K,D^H} for x integral in
   the fixed field */
inline std::pair<CReal, CReal> check_change_metric(const SubfieldData &sd,
                                                   const InfiniteDivisor &D,
                                                   const FieldElement &x) {
  const FieldPtr &L = sd.gamma.K;
  long h = L->n / sd.field->n;
  CReal left = detail::form_value(metric_from_divisor(L, D),
                                  detail::integral_coords_int(include_element(sd, x)));
  CReal right = detail::form_value(metric_from_divisor(sd.field, descend_divisor(sd, D)),
                                   detail::integral_coords_int(x))
                    .mul_si(h);
  return {left, right};
}

/* sum of e^{-pi ||i(x)||^2_{L,D}} over the fixed-field lattice: by the
   change of metric this is the subfield sum under |H| times the descended
   form */
inline EtaValue trace_eta(const SubfieldData &sd, const InfiniteDivisor &D, double tol) {
  const FieldPtr &L = sd.gamma.K;
  long h = L->n / sd.field->n;
  GramMatrix g = metric_from_divisor(sd.field, descend_divisor(sd, D));
  for (auto &e : g.g) e = e.mul_si(h);
  return eta_from_gram(g, tol);
}

/* one subgroup of the relation: its elements, its fixed field, and the
   relation coefficient */
struct RelationTerm {
  std::vector<Automorphism> H;
  SubfieldData sd;
  long n = 0;
};

struct EtaRelationReport {
  CReal direct;       /* sum of n_H eta_{B(H)+D^H}(L^H) */
  CReal direct_tail;  /* sum of |n_H| per-term tail bounds */
  CReal grouped;      /* the same double sum, accumulated per element of O_L */
  CReal grouped_tail;
  std::vector<EtaValue> terms; /* per-subgroup values, relation order */
};

/* evaluates the relation residual twice: once per subgroup (each term its
   own certified sum) and once grouped by lattice element of L, where the
   terms of every subgroup fixing x are read off x's own embeddings.  The
   two routes bound the same double sum, so they must agree within their
   combined tails. */
inline EtaRelationReport eta_relation_residual(const FieldPtr &L,
                                               const std::vector<RelationTerm> &rel,
                                               BVariant variant, double tol,
                                               const InfiniteDivisor &ambient) {
  if (!(ambient.K == L)) throw input_error("ambient divisor does not live on the extension");
  long absn = 0;
  for (auto &t : rel) absn += std::labs(t.n);
  EtaRelationReport rep;
  rep.direct = rep.direct_tail = rep.grouped = rep.grouped_tail = CReal::of(0L);
  if (absn == 0) return rep;
  double tol_term = tol / double(absn);

  struct TermData {
    GramMatrix gram;              /* twisted form on the fixed field */
    std::vector<int> rep_place;   /* one L-place over each base place */
    std::vector<CReal> factor;    /* e^{-2a} / e^{-a} per base place */
    std::vector<int> weight;      /* 1 real, 2 complex */
    double kappa = 0;             /* q_H(y) >= kappa ||i(y)||^2_{L,0} */
    CReal crude;                  /* half-exponent box bound */
  };
  std::vector<TermData> data;
  for (auto &t : rel) {
    long h = long(t.H.size());
    if (h < 1 || L->n != t.sd.field->n * h)
      throw input_error("subgroup order does not match its fixed field");
    InfiniteDivisor B = b_divisor(t.sd.field, h, variant);
    InfiniteDivisor down = descend_divisor(t.sd, ambient);
    for (size_t i = 0; i < B.a.size(); ++i) B.a[i] = B.a[i] + down.a[i];
    TermData td;
    td.gram = metric_from_divisor(t.sd.field, B);
    auto under = detail::places_under(t.sd);
    td.rep_place.assign(t.sd.field->places.size(), -1);
    for (size_t i = 0; i < under.size(); ++i)
      if (td.rep_place[size_t(under[i])] < 0) td.rep_place[size_t(under[i])] = int(i);
    double kmin = 0;
    for (size_t j = 0; j < t.sd.field->places.size(); ++j) {
      bool real = t.sd.field->places[j].real;
      CReal f = B.a[j].mul_si(real ? -2 : -1).exp();
      td.factor.push_back(f);
      td.weight.push_back(real ? 1 : 2);
      if (j == 0 || f.lower() < kmin) kmin = f.lower();
    }
    if (!(kmin > 0)) throw precision_error("metric factors not certifiably positive");
    td.kappa = kmin / double(h);
    td.crude = detail::half_theta_box_bound(td.gram);
    data.push_back(std::move(td));
  }

  /* route one: per-subgroup sums */
  {
    std::vector<CReal> vals, tails;
    for (size_t i = 0; i < rel.size(); ++i) {
      EtaValue e = eta_from_gram(data[i].gram, tol_term);
      vals.push_back(e.value.mul_si(rel[i].n));
      tails.push_back(e.tail_bound.mul_si(std::labs(rel[i].n)));
      rep.terms.push_back(std::move(e));
    }
    rep.direct = sum(vals);
    rep.direct_tail = sum(tails);
  }

  /* route two: one enumeration of O_L, each point credited to the
     subgroups that fix it */
  GramMatrix t2 = metric_from_divisor(L, infinite_zero(L));
  double r2 = 1.0;
  for (size_t i = 0; i < rel.size(); ++i) {
    if (rel[i].n == 0) continue;
    double need = 2.0 / (M_PI * data[i].kappa) *
                  (std::log(data[i].crude.upper()) - std::log(tol_term / double(std::labs(rel[i].n))));
    if (need + 1.0 > r2) r2 = need + 1.0;
  }
  for (int tries = 0;; ++tries) {
    std::vector<CReal> tails;
    for (size_t i = 0; i < rel.size(); ++i) {
      if (rel[i].n == 0) continue;
      CReal e = (CReal::pi() * CReal::of_double(data[i].kappa * r2) / CReal::of(2L)).neg().exp();
      tails.push_back((e * data[i].crude).mul_si(std::labs(rel[i].n)));
    }
    rep.grouped_tail = sum(tails);
    if (rep.grouped_tail.upper() < tol) break;
    if (tries > 60 || r2 > 1e4) throw precision_error("eta tolerance unreachable");
    r2 *= 1.5;
  }

  std::vector<CReal> gterms;
  long total = 0;
  for (auto &t : rel) total += t.n;
  gterms.push_back(CReal::of(total)); /* x = 0 belongs to every subfield */
  auto sv = enumerate_short_vectors(t2, CReal::of_double(r2));
  for (auto &v : sv.vectors) {
    FieldElement x = L->from_integral_coords(v);
    std::vector<CComplex> emb;
    std::vector<CReal> contrib;
    for (size_t i = 0; i < rel.size(); ++i) {
      if (rel[i].n == 0) continue;
      bool fixed = true;
      for (auto &s : rel[i].H)
        if (!(apply(s, x) == x)) {
          fixed = false;
          break;
        }
      if (!fixed) continue;
      if (emb.empty()) emb = embeddings(x, L->places);
      std::vector<CReal> q;
      for (size_t j = 0; j < data[i].factor.size(); ++j) {
        const CComplex &z = emb[size_t(data[i].rep_place[j])];
        q.push_back(((z.re * z.re + z.im * z.im) * data[i].factor[j]).mul_si(data[i].weight[j]));
      }
      contrib.push_back((CReal::pi() * sum(q)).neg().exp().mul_si(rel[i].n));
    }
    if (!contrib.empty()) gterms.push_back(sum(contrib).mul_si(sv.modulo_sign ? 2 : 1));
  }
  rep.grouped = sum(gterms);
  return rep;
}

inline EtaRelationReport eta_relation_residual(const FieldPtr &L,
                                               const std::vector<RelationTerm> &rel,
                                               BVariant variant, double tol) {
  return eta_relation_residual(L, rel, variant, tol, infinite_zero(L));
}

} // namespace galrel

#endif
