#ifndef GALREL_CREAL_HPP
#define GALREL_CREAL_HPP

#include "numeric.hpp"

#include <mpfr.h>
#include <cfloat>
#include <cmath>
#include <string>
#include <utility>

namespace galrel {

/* Certified real: an MPFR midpoint plus a double error radius, so
   |true - value| <= rad always.  Radius arithmetic is done in doubles and
   inflated by a fudge factor that dominates the handful of double roundings
   per formula; midpoint rounding enters through one ulp per operation. */
class CReal {
public:
  static long &default_prec() {
    static long prec = 128;
    return prec;
  }

  CReal() : rad_(0) { mpfr_init2(v_, default_prec()); mpfr_set_zero(v_, 1); }

  explicit CReal(long prec) : rad_(0) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

  CReal(const CReal &o) : rad_(o.rad_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  CReal(CReal &&o) noexcept : rad_(o.rad_) {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
  }
  CReal &operator=(CReal o) noexcept {
    mpfr_swap(v_, o.v_);
    std::swap(rad_, o.rad_);
    return *this;
  }
  ~CReal() { mpfr_clear(v_); }

  static CReal of(long x, long prec = 0) {
    CReal r(p(prec));
    mpfr_set_si(r.v_, x, MPFR_RNDN); /* exact */
    return r;
  }
  static CReal of(const Integer &x, long prec = 0) {
    CReal r(p(prec));
    int t = mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    if (t) r.rad_ = r.ulp();
    return r;
  }
  static CReal of(const Rational &x, long prec = 0) {
    CReal r(p(prec));
    int t = mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    if (t) r.rad_ = r.ulp();
    return r;
  }
  static CReal of_double(double x, long prec = 0) {
    CReal r(p(prec));
    mpfr_set_d(r.v_, x, MPFR_RNDN); /* doubles are exact in >=53 bits */
    return r;
  }
  /* decimal string + explicit radius (fixture input path) */
  static CReal of_decimal(const std::string &s, double rad, long prec = 0) {
    CReal r(p(prec));
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw input_error("bad decimal literal: " + s);
    r.rad_ = up(rad + r.ulp());
    return r;
  }
  static CReal pi(long prec = 0) {
    CReal r(p(prec));
    mpfr_const_pi(r.v_, MPFR_RNDN);
    r.rad_ = r.ulp();
    return r;
  }

  double rad() const { return rad_; }
  long prec() const { return mpfr_get_prec(v_); }
  const mpfr_t &raw() const { return v_; }

  double mid() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double upper() const { return up_add(mpfr_get_d(v_, MPFR_RNDU), rad_); }
  double lower() const { return -up_add(-mpfr_get_d(v_, MPFR_RNDD), rad_); }
  double abs_upper() const { return up_add(std::fabs(mpfr_get_d(v_, mid() >= 0 ? MPFR_RNDU : MPFR_RNDD)), rad_); }

  bool surely_positive() const { return mpfr_cmp_d(v_, rad_) > 0; }
  bool surely_negative() const { CReal n = neg(); return n.surely_positive(); }
  bool contains_zero() const { return !surely_positive() && !surely_negative(); }

  CReal neg() const {
    CReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  /* the midpoint as an exact value; for iterations that only need a point */
  CReal point() const {
    CReal r(*this);
    r.rad_ = 0;
    return r;
  }
  CReal abs() const {
    CReal r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend CReal operator+(const CReal &a, const CReal &b) {
    CReal r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.rad_ = up(a.rad_ + b.rad_ + r.ulp());
    return r;
  }
  friend CReal operator-(const CReal &a, const CReal &b) {
    CReal r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.rad_ = up(a.rad_ + b.rad_ + r.ulp());
    return r;
  }
  friend CReal operator*(const CReal &a, const CReal &b) {
    CReal r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    double am = a.abs_mid_up(), bm = b.abs_mid_up();
    r.rad_ = up(am * b.rad_ + bm * a.rad_ + a.rad_ * b.rad_ + r.ulp());
    return r;
  }
  friend CReal operator/(const CReal &a, const CReal &b) {
    /* |a/b - a^/b^| <= (ra |b^| + |a^| rb) / (|b^| (|b^| - rb)) */
    double bl = b.abs_mid_down() - b.rad_;
    if (!(bl > 0)) throw precision_error("division by interval containing zero");
    CReal r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    double am = a.abs_mid_up(), bm = b.abs_mid_up();
    r.rad_ = up((a.rad_ * bm + am * b.rad_) / (b.abs_mid_down() * bl) + r.ulp());
    return r;
  }
  CReal &operator+=(const CReal &b) { *this = *this + b; return *this; }
  CReal &operator-=(const CReal &b) { *this = *this - b; return *this; }
  CReal &operator*=(const CReal &b) { *this = *this * b; return *this; }

  CReal mul_si(long k) const {
    CReal r(prec());
    mpfr_mul_si(r.v_, v_, k, MPFR_RNDN);
    r.rad_ = up(rad_ * std::fabs(double(k)) + r.ulp());
    return r;
  }

  CReal sqrt() const {
    CReal r(prec());
    double lb = abs_mid_down() - rad_;
    if (mpfr_sgn(v_) < 0 || !(lb > 0)) {
      /* interval touches 0: collapse to [0, sqrt(upper)] */
      if (mpfr_cmp_d(v_, -rad_) < 0) throw precision_error("sqrt of negative interval");
      double ub = upper();
      mpfr_set_d(r.v_, std::sqrt(std::max(ub, 0.0)) / 2, MPFR_RNDN);
      r.rad_ = up(std::sqrt(std::max(ub, 0.0)) / 2 + r.ulp());
      return r;
    }
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    r.rad_ = up(rad_ / (2 * std::sqrt(lb)) + r.ulp());
    return r;
  }

  CReal exp() const {
    CReal r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    /* e^(v+d) - e^v <= e^v (e^rad - 1); bound e^v by the rounded-up result */
    double m = r.abs_mid_up();
    r.rad_ = up(m * std::expm1(rad_) * (1 + 4 * DBL_EPSILON) + 2 * r.ulp());
    return r;
  }

  CReal log() const {
    double lb = abs_mid_down() - rad_;
    if (mpfr_sgn(v_) <= 0 || !(lb > 0)) throw precision_error("log needs a surely positive interval");
    CReal r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    r.rad_ = up(rad_ / lb + r.ulp());
    return r;
  }

  CReal pow_ui(unsigned long e) const {
    CReal r = of(1, prec());
    CReal b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      if (e > 1) b = b * b;
    }
    return r;
  }

  std::string str(int digits = 20) const {
    char *s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

private:
  mpfr_t v_;
  double rad_;

  static long p(long prec) { return prec > 0 ? prec : default_prec(); }

  static double up(double x) {
    double y = x * (1 + 8 * DBL_EPSILON) + DBL_MIN;
    return y;
  }
  static double up_add(double a, double b) {
    double s = a + b;
    return s + std::fabs(s) * 4 * DBL_EPSILON + DBL_MIN; /* outward regardless of sign */
  }

  double abs_mid_up() const { return std::fabs(mpfr_get_d(v_, mpfr_sgn(v_) >= 0 ? MPFR_RNDU : MPFR_RNDD)); }
  double abs_mid_down() const { return std::fabs(mpfr_get_d(v_, mpfr_sgn(v_) >= 0 ? MPFR_RNDD : MPFR_RNDU)); }

  double ulp() const {
    if (mpfr_zero_p(v_)) return 0;
    long e = mpfr_get_exp(v_) - mpfr_get_prec(v_);
    if (e < -1060) return 5e-324; /* below double range: overshoot, stay sound */
    if (e > 1020) throw precision_error("value out of double radius range");
    return std::ldexp(1.0, int(e));
  }
};

inline CReal sum(const std::vector<CReal> &xs) {
  CReal s;
  for (auto &x : xs) s += x;
  return s;
}

/* Certified complex number: independent balls on the two coordinates. */
struct CComplex {
  CReal re, im;

  CComplex() = default;
  CComplex(CReal r, CReal i) : re(std::move(r)), im(std::move(i)) {}

  CComplex conj() const { return {re, im.neg()}; }
  CComplex operator+(const CComplex &o) const { return {re + o.re, im + o.im}; }
  CComplex operator-(const CComplex &o) const { return {re - o.re, im - o.im}; }
  CComplex operator*(const CComplex &o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CComplex mul(const CReal &s) const { return {re * s, im * s}; }
  CReal norm2() const { return re * re + im * im; }
  CReal abs() const { return norm2().sqrt(); }
};

} // namespace galrel

#endif
