#include <random>

#include "doctest.h"
#include "forge/hopf.hpp"
#include "forge/instances.hpp"

using namespace forge;

namespace {

const VerificationItem* find_item(const VerificationReport& r,
                                  const std::string& name) {
  for (const auto& it : r.items)
    if (it.name == name) return &it;
  return nullptr;
}

Vec random_dual(const HopfAlgebra& H, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Vec v(H.dim);
  for (auto& c : v) c = Cyc::from_rational(Rational(d(rng))).embedded(H.scalar_order);
  return v;
}

}  // namespace

TEST_CASE("cyclic group algebra satisfies every hopf axiom") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  auto rep = verify_hopf(H);
  CHECK(rep.all_ok());
}

TEST_CASE("perturbed multiplication fails associativity with a witness") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  // add a spurious identity component to h*h
  H.mult_table[1][1].terms.emplace_back(0, H.scalar_one());
  auto rep = verify_hopf(H);
  CHECK_FALSE(rep.all_ok());
  const auto* assoc = find_item(rep, "associativity");
  REQUIRE(assoc != nullptr);
  CHECK_FALSE(assoc->ok);
  CHECK_FALSE(assoc->witness.empty());
}

TEST_CASE("trivial quasitriangular structure on a group algebra") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  RibbonData rd;
  rd.R = {{H.unit, H.unit}};
  H.ribbon = std::move(rd);
  complete_ribbon_data(H);
  CHECK(H.ribbon->v == H.unit);
  CHECK(H.ribbon->pivot_g == H.unit);
  auto rep = verify_quasitriangular_ribbon(H);
  CHECK(rep.all_ok());
}

TEST_CASE("left integral of a group algebra is the identity-coefficient functional") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  Vec lam = compute_integral(H);
  REQUIRE(static_cast<int>(lam.size()) == 3);
  CHECK(lam[0] == H.scalar_one());
  CHECK(lam[1].is_zero());
  CHECK(lam[2].is_zero());
}

TEST_CASE("convolution unit and trivial coregular actions") {
  HopfAlgebra H = group_algebra_cyclic(4, 4);
  std::mt19937 rng(20260817u);
  Vec eps = H.counit_functional();
  for (int t = 0; t < 5; ++t) {
    Vec phi = random_dual(H, rng);
    CHECK(H.star(eps, phi) == phi);
    CHECK(H.star(phi, eps) == phi);
    CHECK(H.coreg_left(H.unit, phi) == phi);
    CHECK(H.coreg_right(phi, H.unit) == phi);
  }
}

TEST_CASE("coregular action distributes over convolution") {
  HopfAlgebra H = group_algebra_cyclic(4, 4);
  std::mt19937 rng(7u);
  for (int t = 0; t < 4; ++t) {
    Vec phi = random_dual(H, rng);
    Vec psi = random_dual(H, rng);
    Vec h = random_dual(H, rng);  // any element works as a test vector
    Vec lhs = H.coreg_left(h, H.star(phi, psi));
    Vec rhs = vec_zero(H.dim);
    for (const auto& ct : H.comult(h)) {
      Vec a = H.coreg_left(vec_unit(H.dim, ct.j), phi);
      Vec b = H.coreg_left(vec_unit(H.dim, ct.k), psi);
      axpy(rhs, ct.c, H.star(a, b));
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("convolution is associative") {
  HopfAlgebra H = group_algebra_cyclic(5, 5);
  std::mt19937 rng(99u);
  for (int t = 0; t < 4; ++t) {
    Vec a = random_dual(H, rng), b = random_dual(H, rng), c = random_dual(H, rng);
    CHECK(H.star(H.star(a, b), c) == H.star(a, H.star(b, c)));
  }
}

TEST_CASE("iterated comultiplication of a grouplike basis") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  const auto& lst = H.sweedler(2, 2);
  REQUIRE(lst.size() == 1);
  CHECK(lst[0].idx == std::vector<int>{2, 2, 2});
  CHECK(lst[0].c == H.scalar_one());
}

TEST_CASE("matrix coefficients of the regular module") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  HModule reg = left_regular_module(H);
  CHECK(verify_module(reg).all_ok());
  Vec sigma = vec_unit(3, 0);  // coefficient of the identity
  Vec x = vec_unit(3, 1);
  Vec mc = H.matrix_coefficient(reg.action, sigma, x);
  CHECK(mc == Vec{H.scalar_zero(), H.scalar_zero(), H.scalar_one()});
}

TEST_CASE("dual antipode is the transpose action") {
  HopfAlgebra H = group_algebra_cyclic(4, 4);
  std::mt19937 rng(5u);
  Vec phi = random_dual(H, rng);
  Vec sphi = H.dual_antipode(phi);
  for (int i = 0; i < H.dim; ++i)
    CHECK(sphi[i] == H.dual_eval(phi, H.apply_antipode(vec_unit(H.dim, i))));
  CHECK(H.dual_antipode_inv(sphi) == phi);
}

TEST_CASE("quantum trace of the trivial module is the counit") {
  HopfAlgebra H = group_algebra_cyclic(3, 3);
  RibbonData rd;
  rd.R = {{H.unit, H.unit}};
  H.ribbon = std::move(rd);
  complete_ribbon_data(H);
  HModule triv = trivial_module(H);
  CHECK(verify_module(triv).all_ok());
  CHECK(quantum_trace(H, triv) == H.counit);
}
