#ifndef GALREL_GROUP_HPP
#define GALREL_GROUP_HPP

#include "matrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace galrel {

/* A finite group as a multiplication table over element indices 0..n-1.
   Construction checks the full group axioms, so everything downstream may
   assume them. */
struct FiniteGroup {
  int n = 0;
  int identity = 0;
  std::vector<int> table; /* table[i*n+j] = index of g_i g_j */

  int mul(int i, int j) const { return table[size_t(i) * n + j]; }

  int inv(int i) const {
    for (int j = 0; j < n; ++j)
      if (mul(i, j) == identity) return j;
    throw input_error("element without inverse"); /* unreachable after validation */
  }

  int element_order(int i) const {
    int k = 1, p = i;
    while (p != identity) { p = mul(p, i); ++k; }
    return k;
  }

  static FiniteGroup from_table(int n, std::vector<int> table) {
    if (n < 1 || n > 64) throw input_error("group order must be between 1 and 64");
    if (int(table.size()) != n * n) throw input_error("multiplication table has wrong size");
    for (int v : table)
      if (v < 0 || v >= n) throw input_error("multiplication table entry out of range");
    FiniteGroup G;
    G.n = n;
    G.table = std::move(table);
    /* identity */
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
      bool ok = true;
      for (int j = 0; j < n; ++j)
        if (G.mul(i, j) != j || G.mul(j, i) != j) { ok = false; break; }
      if (ok) e = i;
    }
    if (e < 0) throw input_error("multiplication table has no identity");
    G.identity = e;
    /* each row and column a permutation => inverses exist */
    for (int i = 0; i < n; ++i) {
      std::vector<bool> row(n, false), col(n, false);
      for (int j = 0; j < n; ++j) {
        if (row[G.mul(i, j)] || col[G.mul(j, i)])
          throw input_error("multiplication table is not cancellative");
        row[G.mul(i, j)] = col[G.mul(j, i)] = true;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (G.mul(G.mul(i, j), k) != G.mul(i, G.mul(j, k)))
            throw input_error("multiplication table is not associative");
    return G;
  }
};

/* sorted element indices, closed, containing the identity */
using Subgroup = std::vector<int>;

inline Subgroup closure(const FiniteGroup &G, std::vector<int> seed) {
  std::set<int> s(seed.begin(), seed.end());
  s.insert(G.identity);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur)
        if (s.insert(G.mul(a, b)).second) grew = true;
  }
  return Subgroup(s.begin(), s.end());
}

/* All subgroups, smallest first, ties by lexicographic element list.  Seeded
   from the cyclic subgroups and saturated under pairwise joins; complete
   because every subgroup is a join of cyclic ones. */
inline std::vector<Subgroup> subgroups(const FiniteGroup &G) {
  std::set<Subgroup> found;
  found.insert(Subgroup{G.identity});
  for (int g = 0; g < G.n; ++g) found.insert(closure(G, {g}));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Subgroup> cur(found.begin(), found.end());
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = a + 1; b < cur.size(); ++b) {
        std::vector<int> seed = cur[a];
        seed.insert(seed.end(), cur[b].begin(), cur[b].end());
        if (found.insert(closure(G, seed)).second) grew = true;
      }
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Subgroup &x, const Subgroup &y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

using GroupAlgebraElement = std::vector<Rational>; /* coefficient per element */

inline GroupAlgebraElement convolve(const FiniteGroup &G, const GroupAlgebraElement &a,
                                    const GroupAlgebraElement &b) {
  GroupAlgebraElement c(size_t(G.n), Rational(0));
  for (int i = 0; i < G.n; ++i) {
    if (a[size_t(i)] == 0) continue;
    for (int j = 0; j < G.n; ++j)
      if (b[size_t(j)] != 0) c[size_t(G.mul(i, j))] += a[size_t(i)] * b[size_t(j)];
  }
  return c;
}

/* (1/|H|) sum of the elements of H */
inline GroupAlgebraElement norm_idempotent(const FiniteGroup &G, const Subgroup &H) {
  GroupAlgebraElement e(size_t(G.n), Rational(0));
  Rational w(1, long(H.size()));
  for (int h : H) e[size_t(h)] = w;
  return e;
}

struct IdempotentRelation {
  std::vector<Integer> r; /* one coefficient per subgroup, canonical order */
};

inline GroupAlgebraElement verify_relation(const FiniteGroup &G,
                                           const std::vector<Subgroup> &subs,
                                           const IdempotentRelation &rel) {
  if (rel.r.size() != subs.size()) throw input_error("relation length mismatch");
  GroupAlgebraElement acc(size_t(G.n), Rational(0));
  for (size_t k = 0; k < subs.size(); ++k) {
    if (rel.r[k] == 0) continue;
    GroupAlgebraElement e = norm_idempotent(G, subs[k]);
    for (int i = 0; i < G.n; ++i) acc[size_t(i)] += Rational(rel.r[k]) * e[size_t(i)];
  }
  return acc;
}

inline Integer relation_coefficient_sum(const IdempotentRelation &rel) {
  Integer s(0);
  for (auto &c : rel.r) s += c;
  return s;
}

/* Integer basis of { r : sum_H r_H eps_H = 0 }, each vector primitive with
   positive leading coefficient. */
inline std::vector<IdempotentRelation> find_relations(const FiniteGroup &G,
                                                      const std::vector<Subgroup> &subs) {
  QMatrix m(G.n, int(subs.size()));
  for (size_t k = 0; k < subs.size(); ++k) {
    GroupAlgebraElement e = norm_idempotent(G, subs[k]);
    for (int i = 0; i < G.n; ++i) m.at(i, int(k)) = e[size_t(i)];
  }
  std::vector<IdempotentRelation> rels;
  for (auto &v : rational_kernel(m)) {
    IdempotentRelation rel{v};
    GroupAlgebraElement res = verify_relation(G, subs, rel);
    for (auto &x : res)
      if (x != 0) throw input_error("kernel vector fails relation check"); /* unreachable */
    rels.push_back(std::move(rel));
  }
  return rels;
}

namespace detail {

inline std::vector<std::vector<int>> permutation_closure(std::vector<std::vector<int>> gens) {
  if (gens.empty()) throw input_error("no generators given");
  size_t deg = gens[0].size();
  if (deg < 1 || deg > 16) throw input_error("permutation degree must be between 1 and 16");
  for (auto &p : gens) {
    if (p.size() != deg) throw input_error("generators have mixed degrees");
    std::vector<bool> seen(deg, false);
    for (int v : p) {
      if (v < 0 || v >= int(deg) || seen[size_t(v)]) throw input_error("generator is not a permutation");
      seen[size_t(v)] = true;
    }
  }
  std::vector<int> id(deg);
  for (size_t i = 0; i < deg; ++i) id[i] = int(i);
  std::set<std::vector<int>> elems{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto &p : frontier)
      for (auto &g : gens) {
        std::vector<int> q(deg);
        for (size_t i = 0; i < deg; ++i) q[i] = g[size_t(p[i])];
        if (elems.insert(q).second) {
          if (elems.size() > 64) throw input_error("group order exceeds 64");
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  return std::vector<std::vector<int>>(elems.begin(), elems.end()); /* lex order, identity first */
}

inline FiniteGroup group_from_permutations(const std::vector<std::vector<int>> &elems) {
  int n = int(elems.size());
  size_t deg = elems[0].size();
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < n; ++i) idx[elems[size_t(i)]] = i;
  std::vector<int> table(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> q(deg);
      for (size_t p = 0; p < deg; ++p) q[p] = elems[size_t(i)][size_t(elems[size_t(j)][p])];
      auto it = idx.find(q);
      if (it == idx.end()) throw input_error("generators do not close");
      table[size_t(i) * n + j] = it->second;
    }
  return FiniteGroup::from_table(n, std::move(table));
}

inline std::vector<std::vector<int>> all_permutations(int deg) {
  std::vector<int> p(size_t(deg), 0);
  for (int i = 0; i < deg; ++i) p[size_t(i)] = i;
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

} // namespace detail

inline FiniteGroup build_group_from_generators(const std::vector<std::vector<int>> &gens) {
  return detail::group_from_permutations(detail::permutation_closure(gens));
}

/* Named families: Cn, V4 (= C2xC2), Dn (order 2n), Sn (n <= 4). */
inline FiniteGroup build_group(const std::string &name) {
  auto cyclic = [](int n) {
    if (n < 1 || n > 64) throw input_error("cyclic order must be between 1 and 64");
    std::vector<int> t(size_t(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[size_t(i) * n + j] = (i + j) % n;
    return FiniteGroup::from_table(n, std::move(t));
  };
  if (name == "V4" || name == "C2xC2") {
    std::vector<int> t(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[size_t(i) * 4 + j] = i ^ j;
    return FiniteGroup::from_table(4, std::move(t));
  }
  if (name.size() >= 2 && name[0] == 'C') {
    try {
      size_t pos = 0;
      int n = std::stoi(name.substr(1), &pos);
      if (pos + 1 == name.size()) return cyclic(n);
    } catch (const std::exception &) { /* fall through */ }
  }
  if (name.size() >= 2 && name[0] == 'D') {
    try {
      size_t pos = 0;
      int n = std::stoi(name.substr(1), &pos);
      if (pos + 1 == name.size()) {
        if (n < 3 || 2 * n > 64) throw input_error("dihedral parameter out of range");
        std::vector<int> r(size_t(n), 0), s(size_t(n), 0);
        for (int i = 0; i < n; ++i) { r[size_t(i)] = (i + 1) % n; s[size_t(i)] = (n - i) % n; }
        return build_group_from_generators({r, s});
      }
    } catch (const input_error &) { throw; } catch (const std::exception &) { /* fall through */ }
  }
  if (name.size() >= 2 && name[0] == 'S') {
    try {
      size_t pos = 0;
      int n = std::stoi(name.substr(1), &pos);
      if (pos + 1 == name.size()) {
        if (n < 1 || n > 4) throw input_error("symmetric group supported only up to S4");
        return detail::group_from_permutations(detail::all_permutations(n));
      }
    } catch (const input_error &) { throw; } catch (const std::exception &) { /* fall through */ }
  }
  throw input_error("unknown group family: " + name);
}

} // namespace galrel

#endif
