#include <catch2/catch_amalgamated.hpp>
#include <galrel/group.hpp>

using namespace galrel;

static bool is_zero(const GroupAlgebraElement &e) {
  for (auto &c : e)
    if (c != 0) return false;
  return true;
}

TEST_CASE("group construction", "[group]") {
  FiniteGroup c1 = build_group("C1");
  REQUIRE(c1.n == 1);

  FiniteGroup v4 = build_group("V4");
  REQUIRE(v4.n == 4);
  for (int g = 0; g < 4; ++g) REQUIRE(v4.mul(g, g) == v4.identity); /* exponent 2 */
  REQUIRE(build_group("C2xC2").table == v4.table);

  FiniteGroup s3 = build_group("S3");
  REQUIRE(s3.n == 6);
  REQUIRE(s3.identity == 0);

  FiniteGroup d4 = build_group("D4");
  REQUIRE(d4.n == 8);

  REQUIRE(build_group("C12").element_order(1) == 12);
  REQUIRE_THROWS_AS(build_group("C65"), input_error);
  REQUIRE_THROWS_AS(build_group("S5"), input_error);
  REQUIRE_THROWS_AS(build_group("Q8"), input_error);

  /* transpositions generate S3 */
  FiniteGroup g = build_group_from_generators({{1, 0, 2}, {1, 2, 0}});
  REQUIRE(g.n == 6);
  REQUIRE_THROWS_AS(build_group_from_generators({{1, 1, 0}}), input_error);

  /* broken table: constant row is not cancellative */
  REQUIRE_THROWS_AS(FiniteGroup::from_table(2, {0, 0, 0, 0}), input_error);
}

TEST_CASE("subgroup enumeration", "[group]") {
  auto v4 = build_group("V4");
  auto sv = subgroups(v4);
  REQUIRE(sv.size() == 5);
  REQUIRE(sv[0] == Subgroup{0});
  REQUIRE(sv[1] == (Subgroup{0, 1}));
  REQUIRE(sv[2] == (Subgroup{0, 2}));
  REQUIRE(sv[3] == (Subgroup{0, 3}));
  REQUIRE(sv[4] == (Subgroup{0, 1, 2, 3}));

  auto c5 = build_group("C5");
  REQUIRE(subgroups(c5).size() == 2);

  auto s3 = build_group("S3");
  auto ss = subgroups(s3);
  REQUIRE(ss.size() == 6);
  REQUIRE(ss[0].size() == 1);
  REQUIRE((ss[1].size() == 2 && ss[2].size() == 2 && ss[3].size() == 2));
  REQUIRE(ss[4].size() == 3);
  REQUIRE(ss[5].size() == 6);

  /* D4 has 10 subgroups */
  REQUIRE(subgroups(build_group("D4")).size() == 10);

  /* each reported subgroup is closed */
  for (auto &H : ss)
    for (int a : H)
      for (int b : H) {
        int p = s3.mul(a, b);
        REQUIRE(std::find(H.begin(), H.end(), p) != H.end());
      }
}

TEST_CASE("norm idempotents", "[group]") {
  auto v4 = build_group("V4");
  auto sv = subgroups(v4);

  auto e1 = norm_idempotent(v4, sv[0]);
  REQUIRE(e1[0] == 1); /* indicator of the identity */
  for (int i = 1; i < 4; ++i) REQUIRE(e1[size_t(i)] == 0);

  auto eg = norm_idempotent(v4, sv[4]);
  for (auto &c : eg) REQUIRE(c == Rational(1, 4));

  /* idempotency under convolution, for every subgroup of several groups */
  for (auto name : {"V4", "S3", "C6", "D4"}) {
    auto G = build_group(name);
    for (auto &H : subgroups(G)) {
      auto e = norm_idempotent(G, H);
      auto ee = convolve(G, e, e);
      for (int i = 0; i < G.n; ++i) REQUIRE(ee[size_t(i)] == e[size_t(i)]);
    }
  }

  auto s3 = build_group("S3");
  auto ss = subgroups(s3);
  /* conjugate order-2 subgroups give distinct idempotents */
  REQUIRE(norm_idempotent(s3, ss[1]) != norm_idempotent(s3, ss[2]));
  REQUIRE(norm_idempotent(s3, ss[1]) != norm_idempotent(s3, ss[3]));
}

TEST_CASE("idempotent relations", "[group]") {
  auto v4 = build_group("V4");
  auto sv = subgroups(v4);
  auto rels = find_relations(v4, sv);
  REQUIRE(rels.size() == 1);
  std::vector<Integer> want{Integer(1), Integer(-1), Integer(-1), Integer(-1), Integer(2)};
  REQUIRE(rels[0].r == want);
  REQUIRE(relation_coefficient_sum(rels[0]) == 0);
  REQUIRE(is_zero(verify_relation(v4, sv, rels[0])));

  auto s3 = build_group("S3");
  auto ss = subgroups(s3);
  auto rs = find_relations(s3, ss);
  REQUIRE(rs.size() == 1);
  std::vector<Integer> want3{Integer(3), Integer(-2), Integer(-2), Integer(-2), Integer(-3), Integer(6)};
  REQUIRE(rs[0].r == want3);
  REQUIRE(relation_coefficient_sum(rs[0]) == 0);
  REQUIRE(is_zero(verify_relation(s3, ss, rs[0])));

  /* prime cyclic: idempotents independent */
  auto c5 = build_group("C5");
  REQUIRE(find_relations(c5, subgroups(c5)).empty());

  /* a lone idempotent is not a relation */
  IdempotentRelation bogus{{Integer(1), Integer(0), Integer(0), Integer(0), Integer(0)}};
  REQUIRE(!is_zero(verify_relation(v4, sv, bogus)));

  /* basis count = #subgroups - rank */
  auto d4 = build_group("D4");
  auto sd = subgroups(d4);
  auto rd = find_relations(d4, sd);
  for (auto &rel : rd) {
    REQUIRE(is_zero(verify_relation(d4, sd, rel)));
    REQUIRE(relation_coefficient_sum(rel) == 0);
    Integer g(0);
    for (auto &c : rel.r) g = gcd(g, c);
    REQUIRE(g == 1);
  }
  QMatrix m(d4.n, int(sd.size()));
  for (size_t k = 0; k < sd.size(); ++k) {
    auto e = norm_idempotent(d4, sd[k]);
    for (int i = 0; i < d4.n; ++i) m.at(i, int(k)) = e[size_t(i)];
  }
  REQUIRE(int(rd.size()) == int(sd.size()) - rank(m));
}
