#ifndef GALREL_NUMERIC_HPP
#define GALREL_NUMERIC_HPP

#include <gmpxx.h>
#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace galrel {

using Integer  = mpz_class;
using Rational = mpq_class;

struct input_error : std::runtime_error {
  explicit input_error(const std::string &m) : std::runtime_error(m) {}
};
struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string &m) : std::runtime_error(m) {}
};
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string &m) : std::runtime_error(m) {}
};

inline Integer gcd(const Integer &a, const Integer &b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer pow_ui(const Integer &a, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline Integer isqrt(const Integer &a) {
  if (a < 0) throw input_error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline bool is_square(const Integer &a) {
  return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

/* BPSW + Miller-Rabin rounds; no composite below 2^64 passes, and our
   operands stay desk-sized anyway. */
inline bool is_prime(const Integer &a) {
  return mpz_probab_prime_p(a.get_mpz_t(), 40) > 0;
}

inline long valuation(Integer n, const Integer &p) {
  if (n == 0) throw input_error("valuation of zero");
  long v = 0;
  Integer q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    if (r != 0) return v;
    n = q;
    ++v;
  }
}

inline Integer powmod(const Integer &b, const Integer &e, const Integer &m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer invmod(const Integer &a, const Integer &m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw input_error("not invertible mod " + m.get_str());
  return r;
}

namespace detail {

inline Integer pollard_rho(const Integer &n) {
  /* Brent variant; n odd composite, no factor below the trial bound.
     Deterministic restart schedule keeps runs reproducible. */
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer &v) -> Integer { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd(x >= y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_rec(Integer n, std::vector<Integer> &out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

} // namespace detail

/* Full factorization, (prime, exponent) with primes increasing.  Trial
   division first; Pollard rho mops up the desk-scale cofactors. */
inline std::vector<std::pair<Integer, int>> factor(Integer n) {
  if (n == 0) throw input_error("factor of zero");
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, int>> fs;
  auto push = [&](const Integer &p) {
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    if (e) fs.emplace_back(p, e);
  };
  push(2);
  for (Integer p = 3; p * p <= n && p < 100000; p += 2) push(p);
  if (n > 1) {
    std::vector<Integer> rest;
    detail::factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      fs.emplace_back(rest[i], int(j - i));
      i = j;
    }
  }
  std::sort(fs.begin(), fs.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  return fs;
}

inline bool is_squarefree(const Integer &n) {
  if (n == 0) return false;
  for (auto &[p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

inline Rational make_rational(const Integer &num, const Integer &den) {
  if (den == 0) throw input_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/* "p/q" or plain integer string. */
inline Rational parse_rational(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument &) {
    throw input_error("bad rational literal: " + s);
  }
}

inline std::string rational_str(const Rational &q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline long to_long(const Integer &a) {
  if (!a.fits_slong_p()) throw input_error("integer out of long range");
  return a.get_si();
}

inline std::vector<Integer> primes_up_to(long n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<Integer> ps;
  for (long i = 2; i <= n; ++i)
    if (sieve[i]) {
      ps.push_back(i);
      for (long j = 2 * i; j <= n; j += i) sieve[j] = false;
    }
  return ps;
}

inline long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) r -= r / m;
  return r;
}

} // namespace galrel

#endif
