#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bsll/coset_enum.hpp"
#include "bsll/count.hpp"

using namespace bsll;

TEST_CASE("coset enumeration on known presentations") {
  SUBCASE("Z/n from a single power relator") {
    for (int n : {1, 2, 3, 5, 8}) {
      Presentation pres;
      pres.num_gens = 1;
      pres.relators = {std::vector<int>(n, 0)};
      CHECK(enumerate_cosets(pres, CosetEnumOptions{64}).order == n);
    }
  }
  SUBCASE("S3 as <a, b | a^2, b^2, (ab)^3>") {
    Presentation pres;
    pres.num_gens = 2;
    pres.relators = {{0, 0}, {2, 2}, {0, 2, 0, 2, 0, 2}};
    CHECK(enumerate_cosets(pres, CosetEnumOptions{64}).order == 6);
  }
  SUBCASE("the quaternion presentation <a, b | a^4, a^2 b^-2, b^-1 a b a>") {
    Presentation pres;
    pres.num_gens = 2;
    pres.relators = {{0, 0, 0, 0}, {0, 0, 3, 3}, {3, 0, 2, 0}};
    CHECK(enumerate_cosets(pres, CosetEnumOptions{64}).order == 8);
  }
  SUBCASE("the action table is the regular representation") {
    Presentation pres;
    pres.num_gens = 1;
    pres.relators = {std::vector<int>(4, 0)};
    const auto res = enumerate_cosets(pres, CosetEnumOptions{64});
    REQUIRE(res.order == 4);
    int c = 0;
    for (int step = 1; step <= 4; ++step) {
      c = res.action[c][0];
      CHECK((step == 4 ? c == 0 : c != 0));
    }
  }
  SUBCASE("a too-small limit is surfaced, not swallowed") {
    Presentation pres;
    pres.num_gens = 1;
    pres.relators = {std::vector<int>(50, 0)};
    CHECK_THROWS_AS(enumerate_cosets(pres, CosetEnumOptions{8}), OracleInconclusive);
  }
}

TEST_CASE("order oracle on matrix presentations") {
  CHECK(order_oracle(MatrixA(2, 2, {{0}})) == 8);
  CHECK(order_oracle(MatrixA(2, 2, {{1}})) == 8);
  CHECK(order_oracle(MatrixA(3, 2, {{0}})) == 27);
}

TEST_CASE("oracle agreement: consistency verdict vs enumerated order") {
  // Exhaustive over every matrix at the desk scales that matter; dialing
  // k higher belongs to the acceptance suite.
  for (int k = 1; k <= 3; ++k)
    for (const auto& a : enumerate_matrices(2, k)) {
      const GAGroup g = build_group(a);
      const int oracle = order_oracle(a);
      const int full = 1 << (k + 1);
      INFO(a.to_string());
      CHECK(oracle <= full);
      CHECK(g.consistent == (oracle == full));
      if (!g.consistent) CHECK(oracle < full);
    }
  for (const auto& a : enumerate_matrices(3, 2)) {
    const GAGroup g = build_group(a);
    const int oracle = order_oracle(a);
    INFO(a.to_string());
    CHECK(g.consistent == (oracle == 27));
  }
}
