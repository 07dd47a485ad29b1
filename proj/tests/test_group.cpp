#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "bsll/group.hpp"
#include "bsll/pcgroup.hpp"

using namespace bsll;

namespace {

// Brute-force subgroup oracle: every subset containing the identity that is
// closed under products. Only sane for tiny groups.
std::set<std::vector<int>> all_subgroups_brute(const GroupTable& g) {
  const int n = g.order();
  std::set<std::vector<int>> out;
  for (unsigned long long mask = 1; mask < (1ull << n); ++mask) {
    if (!(mask & 1)) continue; // must contain the identity
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1ull << i)) elems.push_back(i);
    bool closed = true;
    for (int a : elems) {
      for (int b : elems)
        if (!(mask & (1ull << g.mul(a, b)))) { closed = false; break; }
      if (!closed) break;
    }
    if (closed) out.insert(elems);
  }
  return out;
}

// Number of subgroups of (Z/p)^m via Gaussian binomials.
long long gaussian_subgroup_count(long long p, int m) {
  auto gauss = [&](int mm, int r) {
    long long num = 1, den = 1;
    for (int i = 0; i < r; ++i) {
      long long pm = 1, pr = 1;
      for (int j = 0; j < mm - i; ++j) pm *= p;
      for (int j = 0; j < r - i; ++j) pr *= p;
      num *= pm - 1;
      den *= pr - 1;
    }
    return num / den;
  };
  long long total = 0;
  for (int r = 0; r <= m; ++r) total += gauss(m, r);
  return total;
}

GroupPtr d8() { // the consistent p=2, k=2, a11=1 build
  const MatrixA a(2, 2, {{1}});
  const GAGroup g = build_group(a);
  REQUIRE(g.consistent);
  return g.table;
}

} // namespace

TEST_CASE("group table constructor enforces the axioms") {
  CHECK_NOTHROW(GroupTable(4, {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0}));
  // identity must be element 0
  CHECK_THROWS_AS(GroupTable(2, {1, 0, 0, 1}), StructureError);
  // non-associative magma with two-sided identity
  std::vector<int> bad{0, 1, 2, 3, 4,
                       1, 0, 3, 4, 2,
                       2, 4, 0, 1, 3,
                       3, 2, 4, 0, 1,
                       4, 3, 1, 2, 0};
  CHECK(GroupTable::verify(5, bad).has_value());
}

TEST_CASE("closure") {
  auto z4 = cyclic_group(4);
  SUBCASE("empty generating set gives the trivial subgroup") {
    const Subgroup s = closure(z4, {});
    CHECK(s.elements() == std::vector<int>{0});
  }
  SUBCASE("an involution closes to order 2") {
    auto v4 = elementary_abelian(2, 2);
    const Subgroup s = closure(v4, {1});
    CHECK(s.order() == 2);
  }
  SUBCASE("g0 and g2 generate the whole p=2 k=2 a11=1 group") {
    auto g = d8();
    // ids: g0 = 4, g2 = 1 under the lexicographic ranking
    const Subgroup s = closure(g, {4, 1});
    CHECK(s.order() == 8);
    // breadth-first oracle over the table
    std::set<int> seen{0, 4, 1};
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a : std::set<int>(seen))
        for (int b : std::set<int>(seen))
          if (seen.insert(g->mul(a, b)).second) grew = true;
    }
    CHECK(static_cast<int>(seen.size()) == s.order());
  }
  SUBCASE("closure is idempotent") {
    auto g = d8();
    for (int a = 0; a < g->order(); ++a)
      for (int b = a; b < g->order(); ++b) {
        const Subgroup once = closure(g, {a, b});
        const Subgroup twice = closure(g, once.elements());
        CHECK(once.elements() == twice.elements());
      }
  }
}

TEST_CASE("is_normal") {
  auto g = d8();
  CHECK(is_normal(Subgroup::trivial(g)));
  CHECK(is_normal(Subgroup::whole(g)));
  // <g0> is not normal: g2 g0 g2^-1 = g1 g0 lies outside
  const Subgroup s = closure(g, {4});
  CHECK_FALSE(is_normal(s));
  const int g0 = 4, g2 = 1;
  const int conj = g->mul(g->mul(g2, g0), g->inv(g2));
  CHECK_FALSE(s.contains(conj));
  CHECK(conj == 6); // g1 g0 = g0 g1 has exponents (1,1,0) -> id 6
}

TEST_CASE("subgroups_all matches the brute-force subset oracle") {
  for (int p : {2, 3, 5}) {
    auto zp = cyclic_group(p);
    CHECK(subgroups_all(zp).size() == 2);
  }
  auto v4 = elementary_abelian(2, 2);
  const auto subs4 = subgroups_all(v4);
  CHECK(subs4.size() == 5);
  auto e8 = elementary_abelian(2, 3);
  const auto subs8 = subgroups_all(e8);
  CHECK(subs8.size() == 16);

  for (GroupPtr g : {v4, e8, d8()}) {
    const auto brute = all_subgroups_brute(*g);
    const auto fast = subgroups_all(g);
    REQUIRE(fast.size() == brute.size());
    for (const auto& s : fast) CHECK(brute.count(s.elements()) == 1);
    // sorted by order then element set, no duplicates
    for (size_t i = 1; i < fast.size(); ++i) {
      const bool ordered =
          fast[i - 1].order() < fast[i].order() ||
          (fast[i - 1].order() == fast[i].order() &&
           fast[i - 1].elements() < fast[i].elements());
      CHECK(ordered);
    }
  }

  SUBCASE("Gaussian binomial counts for elementary abelian groups") {
    for (int p : {2, 3})
      for (int m = 1; m <= 3; ++m)
        CHECK(static_cast<long long>(subgroups_all(elementary_abelian(p, m)).size()) ==
              gaussian_subgroup_count(p, m));
  }

  SUBCASE("cap refusal") {
    CHECK_THROWS_AS(subgroups_all(elementary_abelian(2, 3), 4), CapExceeded);
  }
}

TEST_CASE("element_order") {
  auto g = d8();
  CHECK(element_order(*g, 0) == 1);
  CHECK(element_order(*g, 4) == 2);  // g0
  CHECK(element_order(*g, 5) == 4);  // g0 g2: (g0 g2)^2 = g1
  CHECK(g->mul(5, 5) == 2);          // g1 has id 2
  for (int p : {2, 3}) {
    auto zp = cyclic_group(p);
    for (int a = 1; a < p; ++a) CHECK(element_order(*zp, a) == p);
  }
}

TEST_CASE("conjugacy_class") {
  auto g = d8();
  CHECK(conjugacy_class(*g, 0) == std::vector<int>{0});
  auto v4 = elementary_abelian(2, 2);
  for (int a = 0; a < 4; ++a) CHECK(conjugacy_class(*v4, a) == std::vector<int>{a});
  // class of g0 is {g0, g0 g1}: ids 4 and 6
  CHECK(conjugacy_class(*g, 4) == std::vector<int>{4, 6});
  // direct orbit over all 8 conjugators
  std::set<int> orbit;
  for (int h = 0; h < 8; ++h) orbit.insert(g->mul(g->mul(h, 4), g->inv(h)));
  CHECK(std::vector<int>(orbit.begin(), orbit.end()) == conjugacy_class(*g, 4));
}

TEST_CASE("iso_search") {
  auto v4 = elementary_abelian(2, 2);
  auto z4 = cyclic_group(4);

  SUBCASE("groups with different order statistics have no isomorphism") {
    CHECK(iso_search(v4, z4, {}).empty());
  }

  SUBCASE("fixing one involution of the Klein group leaves 2 isomorphisms") {
    IsoConstraints cons;
    cons.element_images = {{1, 1}};
    const auto found = iso_search(v4, v4, cons);
    CHECK(found.size() == 2);
    // brute-force oracle over all 24 bijections fixing 0
    int oracle = 0;
    std::vector<int> perm{0, 1, 2, 3};
    do {
      if (perm[0] != 0 || perm[1] != 1) continue;
      bool hom = true;
      for (int a = 0; a < 4 && hom; ++a)
        for (int b = 0; b < 4 && hom; ++b)
          if (perm[v4->mul(a, b)] != v4->mul(perm[a], perm[b])) hom = false;
      if (hom) ++oracle;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(oracle == 2);
  }

  SUBCASE("intertwining the shift pins the identity") {
    // (Z/2)^3 with the shift structure: G1 = {e2=0}, G2 = {e0=0},
    // shift by exponents. Constrained self-isomorphisms: only the identity.
    const MatrixA a(2, 2, {{0}});
    const GAGroup g = build_group(a);
    REQUIRE(g.consistent);
    const ShiftData sd = shift_data(g);
    IsoConstraints cons;
    cons.subgroup_images = {{sd.g1, sd.g1}, {sd.g2, sd.g2}};
    cons.intertwine = {{sd.shift, sd.shift}};
    const auto found = iso_search(g.table, g.table, cons);
    REQUIRE(found.size() == 1);
    for (int x = 0; x < 8; ++x) CHECK(found[0](x) == x);

    // brute-force over all 8! bijections fixing 0
    std::vector<int> perm{0, 1, 2, 3, 4, 5, 6, 7};
    int oracle = 0;
    do {
      if (perm[0] != 0) continue;
      bool ok = true;
      for (int x = 0; x < 8 && ok; ++x)
        for (int y = 0; y < 8 && ok; ++y)
          if (perm[g.table->mul(x, y)] != g.table->mul(perm[x], perm[y])) ok = false;
      for (int x : sd.g1.elements())
        if (ok && !sd.g1.contains(perm[x])) ok = false;
      for (int x : sd.g2.elements())
        if (ok && !sd.g2.contains(perm[x])) ok = false;
      for (int x : sd.g1.elements())
        if (ok && perm[sd.shift(x)] != sd.shift(perm[x])) ok = false;
      if (ok) ++oracle;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(oracle == 1);
  }

  SUBCASE("returned homs re-verify against their constraints") {
    auto e8 = elementary_abelian(2, 3);
    IsoConstraints cons;
    cons.subgroup_images = {{closure(e8, {1, 2}), closure(e8, {1, 2})}};
    for (const auto& hom : iso_search(e8, e8, cons)) {
      for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
          CHECK(hom(e8->mul(x, y)) == e8->mul(hom(x), hom(y)));
      std::vector<int> img;
      for (int x : cons.subgroup_images[0].first.elements()) img.push_back(hom(x));
      std::sort(img.begin(), img.end());
      CHECK(img == cons.subgroup_images[0].second.elements());
    }
  }
}
