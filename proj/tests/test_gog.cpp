#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bsll/count.hpp"
#include "bsll/gog.hpp"

using namespace bsll;

namespace {

// Two vertices joined by one geometric edge, with the given vertex groups
// and trivial edge group.
GraphOfGroups segment(GroupPtr a, GroupPtr b) {
  GraphOfGroups g;
  g.graph.num_vertices = 2;
  g.graph.bar = {1, 0};
  g.graph.origin = {0, 1};
  g.vertex_groups = {std::move(a), std::move(b)};
  GroupPtr triv = trivial_group();
  g.edge_groups = {triv, triv};
  g.alphas = {GroupHom(Subgroup::whole(triv), Subgroup::whole(g.vertex_groups[0]), {0}, true),
              GroupHom(Subgroup::whole(triv), Subgroup::whole(g.vertex_groups[1]), {0}, true)};
  return g;
}

GraphOfGroups loop_with(GroupPtr h, const std::vector<int>& g1_gens,
                        const std::vector<int>& g2_gens,
                        const std::vector<std::pair<int, int>>& phi_pairs) {
  const Subgroup g1 = closure(h, g1_gens);
  const Subgroup g2 = closure(h, g2_gens);
  std::vector<int> img(h->order(), -1);
  img[0] = 0;
  // extend the generator images multiplicatively
  for (auto [a, b] : phi_pairs) img[a] = b;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x : g1.elements())
      for (int y : g1.elements())
        if (img[x] >= 0 && img[y] >= 0 && img[h->mul(x, y)] < 0) {
          img[h->mul(x, y)] = h->mul(img[x], img[y]);
          grew = true;
        }
  }
  GroupHom phi(g1, g2, img, true);
  return assemble_loop(h, g1, g2, phi);
}

} // namespace

TEST_CASE("covolume") {
  for (int p : {2, 3, 5}) CHECK(covolume(make_loop_base(p)) == Rational(1, p));
  CHECK(covolume(segment(cyclic_group(2), cyclic_group(3))) == Rational(5, 6));
  // one-vertex loop with a group of order p^(k+1)
  const GAGroup g = build_group(MatrixA(2, 2, {{1}}));
  const ShiftData sd = shift_data(g);
  CHECK(covolume(assemble_loop(sd.group.table, sd.g1, sd.g2, sd.shift)) == Rational(1, 8));
}

TEST_CASE("covolume is invariant under relabeling the vertex group") {
  // transport Z/4 along the permutation swapping the two generators
  auto z4 = cyclic_group(4);
  std::vector<int> perm{0, 3, 2, 1}; // an automorphism of Z/4
  std::vector<int> mul(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int pa = perm[a], pb = perm[b];
      mul[a * 4 + b] = perm[z4->mul(pa, pb)];
    }
  auto z4r = std::make_shared<GroupTable>(4, mul);
  CHECK(covolume(segment(z4, cyclic_group(3))) == covolume(segment(z4r, cyclic_group(3))));
}

TEST_CASE("edge_indexed") {
  for (int p : {2, 3, 5}) {
    const auto eig = edge_indexed(make_loop_base(p));
    CHECK(eig.index == std::vector<long long>{p, p});
  }
  // vertex group order 8 over edge group order 8 -> index 1
  auto e8 = elementary_abelian(2, 3);
  GraphOfGroups g;
  g.graph.num_vertices = 1;
  g.graph.bar = {1, 0};
  g.graph.origin = {0, 0};
  g.vertex_groups = {e8};
  g.edge_groups = {e8, e8};
  std::vector<int> id_img(8);
  for (int i = 0; i < 8; ++i) id_img[i] = i;
  GroupHom ident(Subgroup::whole(e8), Subgroup::whole(e8), id_img, true);
  g.alphas = {ident, ident};
  CHECK(edge_indexed(g).index == std::vector<long long>{1, 1});

  // loop target of a consistent shift build: indices (p, p)
  const ShiftData sd = shift_data(build_group(MatrixA(2, 2, {{1}})));
  const auto eig = edge_indexed(assemble_loop(sd.group.table, sd.g1, sd.g2, sd.shift));
  CHECK(eig.index == std::vector<long long>{2, 2});
}

TEST_CASE("validate_gog") {
  CHECK(validate_gog(make_loop_base(2)).empty());
  CHECK(validate_gog(make_loop_base(5)).empty());

  SUBCASE("alpha into the wrong vertex group") {
    GraphOfGroups g = segment(cyclic_group(2), cyclic_group(3));
    // rewire alpha of edge 1 to land in vertex 0's group
    g.alphas[1] = GroupHom(Subgroup::whole(g.edge_groups[1]),
                           Subgroup::whole(g.vertex_groups[0]), {0}, true);
    const auto v = validate_gog(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].where == "edge 1");
  }
  SUBCASE("broken involution") {
    GraphOfGroups g = make_loop_base(2);
    g.graph.bar = {0, 1}; // fixed points
    CHECK_FALSE(validate_gog(g).empty());
  }
  SUBCASE("edge groups not shared across the pair") {
    GraphOfGroups g = make_loop_base(2);
    g.edge_groups[1] = trivial_group(); // structurally equal, different object
    const auto v = validate_gog(g);
    CHECK(!v.empty());
  }
  SUBCASE("a collapsing alpha is reported with the pair's image") {
    auto z2 = cyclic_group(2);
    GraphOfGroups g;
    g.graph.num_vertices = 1;
    g.graph.bar = {1, 0};
    g.graph.origin = {0, 0};
    g.vertex_groups = {z2};
    g.edge_groups = {z2, z2};
    GroupHom collapse(Subgroup::whole(z2), Subgroup::whole(z2), {0, 0}, false);
    GroupHom ident(Subgroup::whole(z2), Subgroup::whole(z2), {0, 1}, true);
    g.alphas = {collapse, ident};
    const auto v = validate_gog(g);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].where == "edge 0");
    CHECK(v[0].what.find("collapses") != std::string::npos);
  }
}

TEST_CASE("is_faithful") {
  SUBCASE("the loop base is faithful: trivial edge groups force trivial families") {
    for (int p : {2, 3}) {
      const auto r = is_faithful(make_loop_base(p));
      CHECK(r.faithful);
      CHECK_FALSE(r.witness.has_value());
    }
  }
  SUBCASE("H = Z/4, G1 = G2 = the order-2 subgroup, phi = identity: not faithful") {
    auto z4 = cyclic_group(4);
    const GraphOfGroups g = loop_with(z4, {2}, {2}, {{2, 2}});
    const auto r = is_faithful(g);
    REQUIRE_FALSE(r.faithful);
    REQUIRE(r.witness.has_value());
    CHECK(family_valid(g, *r.witness));
    CHECK(r.witness->vertex_subgroups[0] == std::vector<int>{0, 2});
  }
  SUBCASE("H = (Z/2)^2 with phi: <a> -> <b> is faithful") {
    auto v4 = elementary_abelian(2, 2);
    const GraphOfGroups g = loop_with(v4, {1}, {2}, {{1, 2}});
    CHECK(is_faithful(g).faithful);
  }
  SUBCASE("witnesses re-validate") {
    for (int k = 1; k <= 2; ++k)
      for (const auto& a : enumerate_matrices(2, k)) {
        const GAGroup g = build_group(a);
        if (!g.consistent) continue;
        const ShiftData sd = shift_data(g);
        const GraphOfGroups loop = assemble_loop(sd.group.table, sd.g1, sd.g2, sd.shift);
        const auto r = is_faithful(loop);
        if (!r.faithful) CHECK(family_valid(loop, *r.witness));
      }
  }
  SUBCASE("a two-vertex graph with identified vertex groups is unfaithful") {
    auto z2 = cyclic_group(2);
    GraphOfGroups g;
    g.graph.num_vertices = 2;
    g.graph.bar = {1, 0};
    g.graph.origin = {0, 1};
    g.vertex_groups = {z2, z2};
    g.edge_groups = {z2, z2};
    GroupHom ident(Subgroup::whole(z2), Subgroup::whole(z2), {0, 1}, true);
    g.alphas = {ident, ident};
    REQUIRE(validate_gog(g).empty());
    const auto r = is_faithful(g);
    REQUIRE_FALSE(r.faithful);
    REQUIRE(r.witness.has_value());
    CHECK(family_valid(g, *r.witness));
    CHECK(r.witness->vertex_subgroups[0] == std::vector<int>{0, 1});
    CHECK(r.witness->vertex_subgroups[1] == std::vector<int>{0, 1});
  }
}

TEST_CASE("is_faithful_loop") {
  SUBCASE("trivial G1 is faithful") {
    auto zp = cyclic_group(3);
    const Subgroup t = Subgroup::trivial(zp);
    std::vector<int> img(3, -1);
    img[0] = 0;
    GroupHom phi(t, t, img, true);
    CHECK(is_faithful_loop(zp, t, t, phi).faithful);
  }
  SUBCASE("the Z/4 example is not faithful") {
    auto z4 = cyclic_group(4);
    const Subgroup s = closure(z4, {2});
    std::vector<int> img(4, -1);
    img[0] = 0;
    img[2] = 2;
    GroupHom phi(s, s, img, true);
    const auto r = is_faithful_loop(z4, s, s, phi);
    REQUIRE_FALSE(r.faithful);
    CHECK(r.witness->elements() == std::vector<int>{0, 2});
  }
  SUBCASE("loop specialization agrees with the general search on every consistent build") {
    for (int p : {2, 3}) {
      const int kmax = p == 2 ? 3 : 2;
      for (int k = 1; k <= kmax; ++k)
        for (const auto& a : enumerate_matrices(p, k)) {
          const GAGroup g = build_group(a);
          if (!g.consistent) continue;
          const ShiftData sd = shift_data(g);
          const auto lv = is_faithful_loop(sd.group.table, sd.g1, sd.g2, sd.shift);
          const auto gv = is_faithful(assemble_loop(sd.group.table, sd.g1, sd.g2, sd.shift));
          INFO(a.to_string());
          CHECK(lv.faithful == gv.faithful);
          if (!lv.faithful) {
            CHECK(gv.witness.has_value());
            CHECK(lv.witness.has_value());
          }
        }
    }
  }
}

TEST_CASE("make_loop_base rejects composites") {
  CHECK_THROWS_AS(make_loop_base(4), std::invalid_argument);
  CHECK_THROWS_AS(make_loop_base(1), std::invalid_argument);
  CHECK_THROWS_AS(make_loop_base(6), std::invalid_argument);
}
