#include <cstdio>

#include "doctest.h"
#include "forge/instances.hpp"
#include "forge/io.hpp"
#include "forge/moduli.hpp"

using namespace forge;

namespace {

void check_round_trip(const HopfAlgebra& H) {
  nlohmann::ordered_json j = hopf_to_json(H);
  HopfAlgebra G = hopf_from_json(j);
  nlohmann::ordered_json j2 = hopf_to_json(G);
  CHECK(j.dump() == j2.dump());
  CHECK(G.dim == H.dim);
  CHECK(G.scalar_order == H.scalar_order);
  CHECK(verify_hopf(G).all_ok());
  if (H.ribbon) {
    REQUIRE(G.ribbon.has_value());
    CHECK(G.ribbon->v == H.ribbon->v);
    CHECK(G.ribbon->pivot_g == H.ribbon->pivot_g);
    CHECK(G.ribbon->integral_lambda == H.ribbon->integral_lambda);
  }
}

}  // namespace

TEST_CASE("hopf json round-trips bit-exactly") {
  check_round_trip(build_double_cyclic(3).H());
  check_round_trip(build_double_sweedler().H());
}

TEST_CASE("hopf json file save and load") {
  Instance inst = build_double_cyclic(2);
  std::string path = "io_test_tmp.json";
  save_hopf(inst.H(), path);
  HopfAlgebra G = load_hopf(path);
  std::remove(path.c_str());
  CHECK(hopf_to_json(G).dump() == hopf_to_json(inst.H()).dump());
}

TEST_CASE("schema field is checked") {
  nlohmann::ordered_json j;
  j["schema"] = "hopf-v0";
  CHECK_THROWS_AS((void)hopf_from_json(j), Error);
}

TEST_CASE("surface element json round-trips bit-exactly") {
  Instance inst = build_double_cyclic(3);
  const HopfAlgebra& H = inst.H();
  BraidedDual L = build_braided_dual(H);
  LgnAlgebra A(L, 1, 1);
  LgnElement x = A.one();
  x.add({2, 5, 1}, Cyc::root_of_unity(3, 2));
  x.add({0, 8, 4}, Cyc::from_int(-7, 3));
  nlohmann::ordered_json j = lgn_to_json(x);
  LgnElement y = lgn_from_json(j);
  CHECK(x == y);
  CHECK(lgn_to_json(y).dump() == j.dump());

  nlohmann::ordered_json bad = j;
  bad["terms"][0][0] = nlohmann::ordered_json::array({1, 2});
  CHECK_THROWS_AS((void)lgn_from_json(bad), Error);
}
