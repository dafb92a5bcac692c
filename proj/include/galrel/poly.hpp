#ifndef GALREL_POLY_HPP
#define GALREL_POLY_HPP

#include "creal.hpp"
#include "numeric.hpp"

#include <map>
#include <vector>

namespace galrel {

/* Polynomials over Q, coefficients ascending.  Zero polynomial = empty
   vector; the representation is always trimmed. */
using QPoly = std::vector<Rational>;

inline QPoly poly_trim(QPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline int poly_deg(const QPoly &f) { return int(f.size()) - 1; }

inline bool poly_is_zero(const QPoly &f) { return f.empty(); }

inline QPoly poly_from(std::initializer_list<long> cs) {
  QPoly f;
  for (long c : cs) f.emplace_back(c);
  return poly_trim(f);
}

inline QPoly poly_add(const QPoly &a, const QPoly &b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(r);
}

inline QPoly poly_sub(const QPoly &a, const QPoly &b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(r);
}

inline QPoly poly_scale(const QPoly &a, const Rational &c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto &x : r) x *= c;
  return r;
}

inline QPoly poly_mul(const QPoly &a, const QPoly &b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_trim(r);
}

inline std::pair<QPoly, QPoly> poly_divmod(const QPoly &a, const QPoly &b) {
  if (b.empty()) throw input_error("polynomial division by zero");
  QPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  QPoly r = a;
  while (poly_deg(r) >= poly_deg(b)) {
    Rational c = r.back() / b.back();
    int k = poly_deg(r) - poly_deg(b);
    q[k] = c;
    for (size_t i = 0; i < b.size(); ++i) r[i + k] -= c * b[i];
    r = poly_trim(r);
  }
  return {poly_trim(q), r};
}

inline QPoly poly_mod(const QPoly &a, const QPoly &b) { return poly_divmod(a, b).second; }

inline QPoly poly_monic(const QPoly &f) {
  if (f.empty()) return f;
  return poly_scale(f, Rational(1) / f.back());
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : poly_monic(a);
}

inline QPoly poly_derivative(const QPoly &f) {
  QPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * Rational(long(i)));
  return poly_trim(r);
}

inline Rational poly_eval(const QPoly &f, const Rational &x) {
  Rational r(0);
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

inline CReal poly_eval(const QPoly &f, const CReal &x, long prec = 0) {
  CReal r = CReal::of(0L, prec ? prec : x.prec());
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    r = r * x + CReal::of(*it, x.prec());
  return r;
}

inline CComplex poly_eval(const QPoly &f, const CComplex &x) {
  CComplex r{CReal::of(0L, x.re.prec()), CReal::of(0L, x.re.prec())};
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    r = r * x;
    r.re = r.re + CReal::of(*it, x.re.prec());
  }
  return r;
}

inline bool poly_is_integral(const QPoly &f) {
  for (auto &c : f)
    if (c.get_den() != 1) return false;
  return true;
}

inline bool poly_is_squarefree(const QPoly &f) {
  return poly_deg(poly_gcd(f, poly_derivative(f))) <= 0;
}

inline Rational poly_resultant(QPoly f, QPoly g) {
  /* classical recursion over Q: res(f,g) = (-1)^(df dg) lc(g)^(df-dr) res(g,r) */
  if (f.empty() || g.empty()) return Rational(0);
  Rational acc(1);
  bool neg = false;
  while (true) {
    int df = poly_deg(f), dg = poly_deg(g);
    if (dg == 0) {
      Rational l = g[0];
      Rational r(1);
      for (int i = 0; i < df; ++i) r *= l;
      return (neg ? -acc : acc) * r;
    }
    QPoly rem = poly_mod(f, g);
    if (rem.empty()) return Rational(0);
    int dr = poly_deg(rem);
    if ((long(df) * dg) % 2 == 1) neg = !neg;
    Rational l = g.back();
    for (int i = 0; i < df - dr; ++i) acc *= l;
    f = std::move(g);
    g = std::move(rem);
  }
}

inline Rational poly_discriminant(const QPoly &f) {
  int n = poly_deg(f);
  if (n < 1) throw input_error("discriminant needs degree >= 1");
  if (n == 1) return Rational(1);
  Rational res = poly_resultant(f, poly_derivative(f));
  Rational d = res / f.back();
  return (long(n) * (n - 1) / 2) % 2 == 1 ? -d : d;
}

/* Number of real roots (Sturm).  Requires squarefree input. */
inline int sturm_real_root_count(const QPoly &f) {
  if (poly_deg(f) < 1) return 0;
  if (!poly_is_squarefree(f)) throw input_error("sturm: polynomial not squarefree");
  std::vector<QPoly> chain{f, poly_derivative(f)};
  while (poly_deg(chain.back()) > 0) {
    QPoly r = poly_mod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    chain.push_back(poly_scale(r, Rational(-1)));
  }
  /* sign at +inf = sign(lc); at -inf it flips with odd degree */
  auto changes = [&](int dir) {
    int cnt = 0, prev = 0;
    for (auto &g : chain) {
      int s = sgn(g.back());
      if (dir < 0 && poly_deg(g) % 2 == 1) s = -s;
      if (s != 0) {
        if (prev != 0 && s != prev) ++cnt;
        prev = s;
      }
    }
    return cnt;
  };
  return changes(-1) - changes(+1);
}

inline QPoly cyclotomic(long m) {
  static std::map<long, QPoly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  QPoly f(m + 1, Rational(0)); /* x^m - 1 */
  f[0] = -1;
  f[m] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) f = poly_divmod(f, cyclotomic(d)).first;
  cache[m] = f;
  return f;
}

} // namespace galrel

#endif
