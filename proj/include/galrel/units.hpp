#ifndef GALREL_UNITS_HPP
#define GALREL_UNITS_HPP

/* Fundamental units for the unit-rank-one families: real quadratic fields by
   continued fractions, totally complex quartics through their real quadratic
   subfield.  Rank zero needs nothing; rank above one is refused. */

#include "number_field.hpp"

namespace galrel {

namespace detail {

/* minimal (x, y), y > 0, with x^2 - m y^2 = +-1, by the continued fraction
   of sqrt(m); m squarefree, not a square, m >= 2 */
inline std::pair<Integer, Integer> pell_minimal(const Integer &m) {
  Integer a0 = isqrt(m);
  if (a0 * a0 == m) throw input_error("pell_minimal needs a nonsquare");
  Integer P = 0, Q = 1, a = a0;
  Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
  for (int guard = 0; guard < 100000; ++guard) {
    if (p * p - m * q * q == 1 || p * p - m * q * q == -1) return {p, q};
    P = a * Q - P;
    Q = (m - P * P) / Q;
    a = (P + a0) / Q;
    Integer pn = a * p + p_prev, qn = a * q + q_prev;
    p_prev = p; p = pn;
    q_prev = q; q = qn;
  }
  throw precision_error("continued fraction did not close");
}

/* minimal (t, u), u > 0, with t^2 - m u^2 = +-4; the fundamental unit of the
   maximal order of Q(sqrt m) is (t + u sqrt m)/2 */
inline std::pair<Integer, Integer> fundamental_unit_tu(const Integer &m) {
  auto [x, y] = pell_minimal(m);
  /* (2x, 2y) solves the +-4 form; anything smaller has u <= 2y */
  for (Integer u = 1; u <= 2 * y; ++u) {
    Integer s = m * u * u;
    for (int sgn : {-1, +1}) {
      Integer t2 = s + 4 * sgn;
      if (t2 < 0) continue;
      Integer t = isqrt(t2);
      if (t * t == t2) return {t, u};
    }
  }
  throw precision_error("fundamental unit search failed");
}

} // namespace detail

/* fundamental unit of a real quadratic field, as a field element */
inline FieldElement real_quadratic_fundamental_unit(const FieldPtr &K) {
  if (K->n != 2 || K->r != 2) throw input_error("not a real quadratic field");
  /* theta = (-b + sqrt(b^2 - 4c))/2 up to conjugation; sqrt m = (2 theta + b)/s
     where b^2 - 4c = m s^2 with m squarefree */
  Integer b = K->f[1].get_num(), c = K->f[0].get_num();
  Integer D0 = b * b - 4 * c;
  Integer s = 1;
  for (auto &[p, e] : factor(D0)) /* split D0 = m s^2, m squarefree */
    for (int k = 0; k + 1 < e; k += 2) s *= p;
  Integer m = D0 / (s * s);
  auto [t, u] = detail::fundamental_unit_tu(m);
  /* (t + u sqrt m)/2 = t/2 + (u/s) theta + (ub)/(2s) */
  Rational c0 = make_rational(t, 2) + make_rational(u * b, 2 * s);
  Rational c1 = make_rational(u, s);
  FieldElement eps = K->element(poly_trim(QPoly{c0, c1}));
  if (!K->is_integral(eps) || (K->norm(eps) != 1 && K->norm(eps) != -1))
    throw precision_error("fundamental unit construction is inconsistent");
  return eps;
}

/* a system of fundamental units modulo torsion for the supported families:
   empty for rank zero, one unit for rank one */
inline std::vector<FieldElement> default_units(const FieldPtr &K) {
  int rank = K->r + K->s - 1;
  if (rank == 0) return {};
  if (rank == 1 && K->r == 2) return {real_quadratic_fundamental_unit(K)};
  if (rank == 1 && K->s == 2) {
    /* totally complex quartic: lift the unit of a real quadratic subfield
       (the subfield fixed by some involution has positive discriminant) */
    auto auts = automorphisms(K);
    for (auto &s : auts) {
      if (s.image == K->theta()) continue;
      if (!(compose(s, s).image == K->theta())) continue;
      SubfieldData sd = fixed_field(K, {auts[0], s});
      if (sd.field->disc > 0) {
        FieldElement eps = real_quadratic_fundamental_unit(sd.field);
        return {include_element(sd, eps)};
      }
    }
    throw unsupported_error("no real quadratic subfield found for the unit");
  }
  throw unsupported_error("unsupported unit rank");
}

} // namespace galrel

#endif
