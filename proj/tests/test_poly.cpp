#include <catch2/catch_amalgamated.hpp>
#include <galrel/poly.hpp>

using namespace galrel;

TEST_CASE("ring operations", "[poly]") {
  QPoly f = poly_from({-2, 0, 1}); /* x^2 - 2 */
  QPoly g = poly_from({1, 1});     /* x + 1 */
  REQUIRE(poly_deg(f) == 2);
  REQUIRE(poly_eval(f, Rational(3)) == 7);
  REQUIRE(poly_add(f, g) == poly_from({-1, 1, 1}));
  REQUIRE(poly_sub(f, f).empty());
  REQUIRE(poly_mul(g, g) == poly_from({1, 2, 1}));

  auto [q, r] = poly_divmod(f, g);
  /* x^2 - 2 = (x+1)(x-1) - 1 */
  REQUIRE(q == poly_from({-1, 1}));
  REQUIRE(r == poly_from({-1}));
  REQUIRE(poly_add(poly_mul(q, g), r) == f);
  REQUIRE_THROWS_AS(poly_divmod(f, QPoly{}), input_error);

  REQUIRE(poly_derivative(f) == poly_from({0, 2}));
  REQUIRE(poly_derivative(poly_from({5})).empty());
}

TEST_CASE("gcd and squarefree detection", "[poly]") {
  QPoly a = poly_from({-1, 0, 1});    /* (x-1)(x+1) */
  QPoly b = poly_from({1, -2, 1});    /* (x-1)^2 */
  REQUIRE(poly_gcd(a, b) == poly_from({-1, 1}));
  REQUIRE(poly_gcd(a, poly_from({2})) == poly_from({1})); /* monic */
  REQUIRE(poly_is_squarefree(a));
  REQUIRE(!poly_is_squarefree(b));
  REQUIRE(poly_is_integral(a));
  REQUIRE(!poly_is_integral(poly_monic(poly_from({1, 2}))));
}

TEST_CASE("resultant and discriminant", "[poly]") {
  /* res(x^2-a, x^2-b) = (a-b)^2 */
  REQUIRE(poly_resultant(poly_from({-2, 0, 1}), poly_from({-3, 0, 1})) == 1);
  REQUIRE(poly_resultant(poly_from({-1, 1}), poly_from({-2, 1})) == -1); /* 1-2 */
  REQUIRE(poly_resultant(poly_from({-1, 0, 1}), poly_from({-1, 1})) == 0); /* shared root */

  REQUIRE(poly_discriminant(poly_from({-2, 0, 1})) == 8);
  REQUIRE(poly_discriminant(poly_from({-2, 0, 0, 1})) == -108);   /* x^3 - 2 */
  REQUIRE(poly_discriminant(poly_from({1, 0, -10, 0, 1})) == 147456);
  REQUIRE(poly_discriminant(poly_from({1, 1, 1})) == -3);
  REQUIRE(poly_discriminant(poly_from({7, 1})) == 1);
}

TEST_CASE("real root counting", "[poly]") {
  REQUIRE(sturm_real_root_count(poly_from({1, 0, 1})) == 0);
  REQUIRE(sturm_real_root_count(poly_from({-2, 0, 1})) == 2);
  REQUIRE(sturm_real_root_count(poly_from({1, 0, -10, 0, 1})) == 4); /* ±√2±√3 */
  REQUIRE(sturm_real_root_count(poly_from({-2, 0, 0, 1})) == 1);
  REQUIRE(sturm_real_root_count(poly_from({1, 0, 0, 0, 1})) == 0);   /* 8th roots of unity */
  REQUIRE(sturm_real_root_count(poly_from({484, 0, 48, 0, 1})) == 0);
  REQUIRE(sturm_real_root_count(poly_from({9, 9, 0, 3, 6, 3, 1})) == 0); /* totally imaginary sextic */
  REQUIRE_THROWS_AS(sturm_real_root_count(poly_from({1, -2, 1})), input_error);
}

TEST_CASE("evaluation over certified numbers", "[poly]") {
  QPoly f = poly_from({-2, 0, 1});
  CReal x = CReal::of(2L).sqrt();
  CReal v = poly_eval(f, x);
  REQUIRE(v.contains_zero());
  REQUIRE(v.rad() < 1e-30);

  /* i is a root of x^2 + 1 */
  CComplex i{CReal::of(0L), CReal::of(1L)};
  CComplex w = poly_eval(poly_from({1, 0, 1}), i);
  REQUIRE(w.re.contains_zero());
  REQUIRE(w.im.contains_zero());
}

TEST_CASE("cyclotomic polynomials", "[poly]") {
  REQUIRE(cyclotomic(1) == poly_from({-1, 1}));
  REQUIRE(cyclotomic(2) == poly_from({1, 1}));
  REQUIRE(cyclotomic(4) == poly_from({1, 0, 1}));
  REQUIRE(cyclotomic(8) == poly_from({1, 0, 0, 0, 1}));
  REQUIRE(cyclotomic(12) == poly_from({1, 0, -1, 0, 1}));
  for (long m : {1L, 2L, 3L, 4L, 5L, 6L, 8L, 9L, 12L, 15L, 16L, 23L, 24L}) {
    QPoly f = cyclotomic(m);
    REQUIRE(poly_deg(f) == euler_phi(m));
    /* divides x^m - 1 exactly */
    QPoly xm(m + 1, Rational(0));
    xm[0] = -1;
    xm[size_t(m)] = 1;
    REQUIRE(poly_mod(poly_trim(xm), f).empty());
  }
}
