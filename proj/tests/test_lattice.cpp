#include <catch2/catch_amalgamated.hpp>
#include <galrel/lattice.hpp>

#include <set>

using namespace galrel;

static QMatrix qdiag(std::initializer_list<long> ds) {
  QMatrix m(int(ds.size()), int(ds.size()));
  int i = 0;
  for (long d : ds) { m.at(i, i) = d; ++i; }
  return m;
}

static ZMatrix zmat(int r, int c, std::initializer_list<long> es) {
  ZMatrix m(r, c);
  auto it = es.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Integer(*it++);
  return m;
}

/* expand the ± representatives into a full signed set */
static std::set<std::vector<Integer>> expanded(const ShortVectors &sv) {
  std::set<std::vector<Integer>> s;
  for (auto &v : sv.vectors) {
    s.insert(v);
    std::vector<Integer> n;
    for (auto &x : v) n.push_back(-x);
    s.insert(n);
  }
  return s;
}

/* exhaustive oracle over a coordinate box */
static std::set<std::vector<Integer>> box_search(const QMatrix &g, const Rational &r2, int box) {
  int n = g.rows;
  std::set<std::vector<Integer>> s;
  std::vector<int> x(size_t(n), -box);
  for (;;) {
    Rational q(0);
    bool nz = false;
    for (int i = 0; i < n; ++i) {
      if (x[size_t(i)] != 0) nz = true;
      for (int j = 0; j < n; ++j) q += g.at(i, j) * Rational(long(x[size_t(i)]) * x[size_t(j)]);
    }
    if (nz && q <= r2) {
      std::vector<Integer> v;
      for (int e : x) v.emplace_back(e);
      s.insert(v);
    }
    int k = 0;
    while (k < n && x[size_t(k)] == box) { x[size_t(k)] = -box; ++k; }
    if (k == n) break;
    ++x[size_t(k)];
  }
  return s;
}

/* exact Lovász check with delta = 0.99 on the Gram-Schmidt data */
static void require_lovasz(const ZMatrix &b, const QMatrix &g) {
  int n = b.rows;
  auto inner = [&](int i, int j) {
    Rational s(0);
    for (int p = 0; p < g.rows; ++p)
      for (int q = 0; q < g.cols; ++q) s += g.at(p, q) * Rational(b.at(i, p) * b.at(j, q));
    return s;
  };
  std::vector<Rational> B(size_t(n), Rational(0));
  QMatrix mu(n, n);
  for (int i = 0; i < n; ++i) {
    Rational Bi = inner(i, i);
    for (int j = 0; j < i; ++j) {
      Rational m = inner(i, j);
      for (int k = 0; k < j; ++k) m -= mu.at(i, k) * mu.at(j, k) * B[size_t(k)];
      mu.at(i, j) = m / B[size_t(j)];
      Bi -= mu.at(i, j) * mu.at(i, j) * B[size_t(j)];
    }
    B[size_t(i)] = Bi;
    REQUIRE(Bi > 0);
    for (int j = 0; j < i; ++j) REQUIRE(2 * abs(mu.at(i, j)) <= 1);
    if (i > 0)
      REQUIRE(B[size_t(i)] >= (Rational(99, 100) - mu.at(i, i - 1) * mu.at(i, i - 1)) * B[size_t(i - 1)]);
  }
}

TEST_CASE("gram matrix construction", "[lattice]") {
  GramMatrix g = GramMatrix::from_exact(qdiag({2, 2}));
  REQUIRE(g.exact);
  REQUIRE(g.at(0, 0).mid() == 2.0);
  QMatrix bad(2, 2);
  bad.at(0, 1) = 1; /* not symmetric */
  REQUIRE_THROWS_AS(GramMatrix::from_exact(bad), input_error);
}

TEST_CASE("lll reduction", "[lattice]") {
  GramMatrix std2 = GramMatrix::from_exact(qdiag({1, 1}));

  /* shear of Z^2 comes back short */
  ZMatrix b = lll_reduce(zmat(2, 2, {1, 0, 4, 1}), std2);
  require_lovasz(b, std2.gq);
  for (int i = 0; i < 2; ++i) {
    Rational norm(0);
    for (int j = 0; j < 2; ++j) norm += b.at(i, j) * b.at(i, j);
    REQUIRE(norm <= 2);
  }
  REQUIRE(abs(det(b)) == 1); /* same lattice */

  /* orthogonal basis untouched up to sign */
  ZMatrix o = lll_reduce(ZMatrix::identity(3), GramMatrix::from_exact(qdiag({1, 2, 3})));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) REQUIRE(abs(o.at(i, j)) == (i == j ? 1 : 0));

  /* rank 1: unchanged */
  ZMatrix r1 = lll_reduce(zmat(1, 2, {3, 5}), std2);
  REQUIRE(r1 == zmat(1, 2, {3, 5}));

  /* dependent rows rejected */
  REQUIRE_THROWS_AS(lll_reduce(zmat(2, 2, {1, 1, 2, 2}), std2), input_error);

  /* a classic 3d example with an exact check */
  GramMatrix std3 = GramMatrix::from_exact(qdiag({1, 1, 1}));
  ZMatrix b3 = lll_reduce(zmat(3, 3, {1, 1, 1, -1, 0, 2, 3, 5, 6}), std3);
  require_lovasz(b3, std3.gq);
  REQUIRE(abs(det(b3)) == abs(det(zmat(3, 3, {1, 1, 1, -1, 0, 2, 3, 5, 6}))));
}

TEST_CASE("short vector enumeration, exact filter", "[lattice]") {
  GramMatrix std2 = GramMatrix::from_exact(qdiag({1, 1}));

  auto sv1 = enumerate_short_vectors(std2, Rational(1));
  REQUIRE(sv1.modulo_sign);
  REQUIRE(expanded(sv1).size() == 4); /* (±1,0),(0,±1) */

  auto sv2 = enumerate_short_vectors(std2, Rational(2));
  REQUIRE(expanded(sv2).size() == 8);

  /* metric of the Gaussian integers at the untwisted divisor */
  auto svg = enumerate_short_vectors(GramMatrix::from_exact(qdiag({2, 2})), Rational(2));
  auto e = expanded(svg);
  REQUIRE(e.size() == 4); /* ±1, ±i */

  REQUIRE_THROWS_AS(enumerate_short_vectors(std2, Rational(-1)), input_error);
}

TEST_CASE("enumeration matches brute force", "[lattice]") {
  /* assorted exact forms of dimension 2..4, radius up to 10 */
  std::vector<QMatrix> grams;
  grams.push_back(qdiag({1, 3}));
  {
    QMatrix g(2, 2);
    g.at(0, 0) = 2; g.at(0, 1) = 1; g.at(1, 0) = 1; g.at(1, 1) = 2;
    grams.push_back(g);
  }
  {
    /* B^T B for B = [[1,1,0],[0,1,1],[1,0,3]] */
    ZMatrix B = zmat(3, 3, {1, 1, 0, 0, 1, 1, 1, 0, 3});
    QMatrix bt = to_rational(B.transpose());
    grams.push_back(bt * to_rational(B));
  }
  {
    QMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g.at(i, j) = (i == j) ? 2 : Rational(1, 2);
    grams.push_back(g);
  }
  for (auto &gq : grams) {
    GramMatrix g = GramMatrix::from_exact(gq);
    for (long r2 : {1L, 4L, 10L}) {
      auto mine = expanded(enumerate_short_vectors(g, Rational(r2)));
      auto oracle = box_search(gq, Rational(r2), 8);
      REQUIRE(mine == oracle);
    }
  }
}

TEST_CASE("enumeration with certified radius", "[lattice]") {
  /* inexact gram: all vectors inside the ball are found (superset allowed) */
  GramMatrix g(2);
  g.at(0, 0) = CReal::of(2L);
  g.at(1, 1) = CReal::of(2L);
  g.at(0, 1) = g.at(1, 0) = CReal::of(Rational(1, 3));
  auto sv = enumerate_short_vectors(g, CReal::of(5L));
  QMatrix gq(2, 2);
  gq.at(0, 0) = gq.at(1, 1) = 2;
  gq.at(0, 1) = gq.at(1, 0) = Rational(1, 3);
  auto oracle = box_search(gq, Rational(5), 4);
  auto got = expanded(sv);
  for (auto &v : oracle) REQUIRE(got.count(v) == 1);
}

TEST_CASE("non positive definite rejected", "[lattice]") {
  QMatrix g(2, 2);
  g.at(0, 0) = 1; g.at(1, 1) = -1;
  REQUIRE_THROWS_AS(enumerate_short_vectors(GramMatrix::from_exact(g), Rational(1)), input_error);
}
