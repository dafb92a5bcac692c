#include <catch2/catch_amalgamated.hpp>
#include <galrel/creal.hpp>

#include <cmath>

using namespace galrel;

/* every certified interval must contain the true value */
static bool contains(const CReal &x, double truth) {
  return x.lower() <= truth && truth <= x.upper();
}

TEST_CASE("construction and bounds", "[creal]") {
  CReal a = CReal::of(3L);
  REQUIRE(a.rad() == 0);
  REQUIRE(a.mid() == 3.0);
  REQUIRE(a.surely_positive());
  REQUIRE(CReal::of(-2L).surely_negative());
  REQUIRE(CReal::of(0L).contains_zero());

  CReal third = CReal::of(Rational(1, 3));
  REQUIRE(third.rad() > 0); /* not dyadic: one ulp */
  REQUIRE(contains(third, 1.0 / 3.0));

  CReal d = CReal::of_decimal("2.7182818284590452353602874713526624977572", 1e-40);
  REQUIRE(contains(d, std::exp(1.0)));
  REQUIRE_THROWS_AS(CReal::of_decimal("not-a-number", 0), input_error);

  REQUIRE(contains(CReal::pi(), M_PI));
}

TEST_CASE("field operations keep the truth inside", "[creal]") {
  CReal a = CReal::of(Rational(1, 3));
  CReal b = CReal::of(Rational(1, 7));
  REQUIRE(contains(a + b, 1.0 / 3 + 1.0 / 7));
  REQUIRE(contains(a - b, 1.0 / 3 - 1.0 / 7));
  REQUIRE(contains(a * b, 1.0 / 21));
  REQUIRE(contains(a / b, 7.0 / 3));
  REQUIRE(contains(a.mul_si(-6), -2.0));

  /* (1/3)*3 straddles 1 within radius */
  CReal one = a.mul_si(3);
  REQUIRE(one.lower() <= 1.0);
  REQUIRE(one.upper() >= 1.0);

  CReal z = a - a;
  REQUIRE(z.contains_zero());
  REQUIRE_THROWS_AS(b / z, precision_error);
}

TEST_CASE("elementary functions", "[creal]") {
  CReal two = CReal::of(2L);
  CReal r = two.sqrt();
  REQUIRE(contains(r, std::sqrt(2.0)));
  REQUIRE(contains(r * r, 2.0));

  CReal l = two.log();
  REQUIRE(contains(l, std::log(2.0)));
  REQUIRE(contains(l.exp(), 2.0));
  REQUIRE_THROWS_AS(CReal::of(-1L).log(), precision_error);
  REQUIRE_THROWS_AS((CReal::of(0L) - CReal::of(Rational(1, 1000))).sqrt(), precision_error);

  /* interval straddling zero: sqrt collapses to [0, sqrt(ub)] */
  CReal t = CReal::of_decimal("0", 1e-6);
  CReal s = t.sqrt();
  REQUIRE(s.lower() <= 1e-12);
  REQUIRE(s.upper() >= 1e-3); /* sqrt of the largest candidate stays inside */

  REQUIRE(contains(CReal::of(3L).pow_ui(7), 2187.0));
  REQUIRE(contains(CReal::of(5L).pow_ui(0), 1.0));
}

TEST_CASE("precision control", "[creal]") {
  long saved = CReal::default_prec();
  CReal::default_prec() = 256;
  CReal x = CReal::of(Rational(1, 3));
  REQUIRE(x.prec() == 256);
  REQUIRE(x.rad() < 1e-70);
  CReal::default_prec() = saved;

  CReal y = CReal::of(Rational(1, 3), 64);
  REQUIRE(y.prec() == 64);
  REQUIRE(y.rad() > x.rad());
}

TEST_CASE("complex balls", "[creal]") {
  CComplex i{CReal::of(0L), CReal::of(1L)};
  CComplex z = i * i;
  REQUIRE(contains(z.re, -1.0));
  REQUIRE(z.im.contains_zero());
  CComplex w{CReal::of(3L), CReal::of(4L)};
  REQUIRE(contains(w.norm2(), 25.0));
  REQUIRE(contains(w.abs(), 5.0));
  REQUIRE(contains((w * w.conj()).re, 25.0));
  REQUIRE((w * w.conj()).im.contains_zero());
}

TEST_CASE("running sums", "[creal]") {
  std::vector<CReal> xs;
  for (int k = 1; k <= 10; ++k) xs.push_back(CReal::of(Rational(1, k)));
  double truth = 0;
  for (int k = 1; k <= 10; ++k) truth += 1.0 / k;
  REQUIRE(contains(sum(xs), truth));
}
