#include <set>

#include "doctest.h"
#include "forge/hopf.hpp"
#include "forge/instances.hpp"

using namespace forge;

namespace {

const Instance& cyclic3() {
  static Instance inst = build_double_cyclic(3);
  return inst;
}
const Instance& sweedler16() {
  static Instance inst = build_double_sweedler();
  return inst;
}
const Instance& sl2ext2() {
  static Instance inst = build_small_sl2_ext(2);
  return inst;
}

// kernel dimension of the trace form of left multiplication
int trace_form_nullity(const HopfAlgebra& H) {
  std::vector<Mat> left(H.dim);
  for (int i = 0; i < H.dim; ++i)
    left[i] = H.left_mult_matrix(vec_unit(H.dim, i));
  Mat gram(H.dim, H.dim);
  for (int i = 0; i < H.dim; ++i)
    for (int j = 0; j < H.dim; ++j) gram.at(i, j) = (left[i] * left[j]).trace();
  return static_cast<int>(kernel_basis(gram).size());
}

void check_integral_identities(const HopfAlgebra& H,
                               bool expect_unibalance = true) {
  const Vec& lam = H.ribbon->integral_lambda;
  // lambda(x y) = lambda(y S^2(x)) for all basis pairs
  for (int i = 0; i < H.dim; ++i) {
    Vec s2 = H.apply_antipode(H.apply_antipode(vec_unit(H.dim, i)));
    for (int j = 0; j < H.dim; ++j) {
      Cyc lhs = H.dual_eval(lam, H.mul(vec_unit(H.dim, i), vec_unit(H.dim, j)));
      Cyc rhs = H.dual_eval(lam, H.mul(vec_unit(H.dim, j), s2));
      CHECK(lhs == rhs);
    }
  }
  // unibalance: lambda o S^{-1} = lambda <| g^{-2}; requires a true ribbon
  // element, so a balancing-only pivot must fail it
  Vec lhs = H.dual_antipode_inv(lam);
  Vec gm2 = H.mul(H.ribbon->pivot_g_inv, H.ribbon->pivot_g_inv);
  Vec rhs = H.coreg_right(lam, gm2);
  CHECK((lhs == rhs) == expect_unibalance);
  // normalization lambda(v) = 1
  CHECK(H.dual_eval(lam, H.ribbon->v) == H.scalar_one());
}

}  // namespace

TEST_CASE("double of Z/2 has dimension 4") {
  Instance inst = build_double_cyclic(2);
  CHECK(inst.H().dim == 4);
  CHECK(verify_hopf(inst.H()).all_ok());
}

TEST_CASE("double of Z/3 passes the axiom suites and is semisimple") {
  const HopfAlgebra& H = cyclic3().H();
  CHECK(H.dim == 9);
  CHECK(verify_hopf(H).all_ok());
  CHECK(verify_quasitriangular_ribbon(H).all_ok());
  CHECK(trace_form_nullity(H) == 0);
}

TEST_CASE("double of Z/3 integral identities") {
  check_integral_identities(cyclic3().H());
}

TEST_CASE("sweedler double: axioms pass, ribbon weakens to balancing") {
  const HopfAlgebra& H = sweedler16().H();
  CHECK(H.dim == 16);
  CHECK(verify_hopf(H).all_ok());
  // No ribbon element exists here: every grouplike squares to the unit, so a
  // ribbon would force S(u) = u, which fails. The completed data holds a
  // balancing element instead, and exactly the two ribbon-only axioms fail.
  VerificationReport rep = verify_quasitriangular_ribbon(H);
  std::set<std::string> failed;
  for (const auto& it : rep.items)
    if (!it.ok) failed.insert(it.name);
  CHECK(failed == std::set<std::string>{"S(v) = v", "v^2 = u S(u)"});
  auto note = H.metadata.find("ribbon_element");
  REQUIRE(note != H.metadata.end());
  CHECK(note->second.find("balancing") != std::string::npos);
}

TEST_CASE("sweedler double is not semisimple") {
  CHECK(trace_form_nullity(sweedler16().H()) > 0);
}

TEST_CASE("sweedler double integral identities") {
  check_integral_identities(sweedler16().H(), /*expect_unibalance=*/false);
}

TEST_CASE("sweedler double carries a simple two-dimensional module") {
  const Instance& inst = sweedler16();
  REQUIRE(inst.two_dim.has_value());
  CHECK(verify_module(*inst.two_dim).all_ok());
  // simplicity: no common eigenvector line; the two x-type generators act by
  // a nonzero lower and a nonzero upper triangular matrix
  bool lower = false, upper = false;
  for (const auto& m : inst.two_dim->action) {
    if (!m.at(1, 0).is_zero()) lower = true;
    if (!m.at(0, 1).is_zero()) upper = true;
  }
  CHECK(lower);
  CHECK(upper);
}

TEST_CASE("small quantum group extension at p=2: structure") {
  const HopfAlgebra& H = sl2ext2().H();
  CHECK(H.dim == 32);  // 4 p^3
  const int p = 2, kper = 8;
  auto idx = [&](int a, int b, int c) { return (a * p + b) * kper + c; };
  // E^p = 0 and F^p = 0 as structure-constant identities
  CHECK(H.mult_table[idx(1, 0, 0)][idx(1, 0, 0)].terms.empty());
  CHECK(H.mult_table[idx(0, 1, 0)][idx(0, 1, 0)].terms.empty());
  // k^{4p} = 1
  Vec kv = vec_unit(32, idx(0, 0, 1));
  CHECK(H.power(kv, 8) == H.unit);
  // K = k^2 and the 2-dim image of K is diag(eps^2, eps^-2)
  const HModule& rep = *sl2ext2().two_dim;
  Mat K = rep.act_matrix(vec_unit(32, idx(0, 0, 2)));
  Cyc eps2 = Cyc::root_of_unity(16, 4);
  CHECK(K.at(0, 0) == eps2);
  CHECK(K.at(1, 1) == eps2.inverse());
  CHECK(K.at(0, 1).is_zero());
  CHECK(K.at(1, 0).is_zero());
  CHECK(verify_module(rep).all_ok());
}

TEST_CASE("small quantum group extension at p=2: axiom suites") {
  const HopfAlgebra& H = sl2ext2().H();
  CHECK(verify_hopf(H).all_ok());
  CHECK(verify_quasitriangular_ribbon(H).all_ok());
}

TEST_CASE("small quantum group extension at p=2: integral identities") {
  check_integral_identities(sl2ext2().H());
}

TEST_CASE("casimir element is central, the linear-coefficient variant is not") {
  const HopfAlgebra& H = sl2ext2().H();
  const int p = 2, kper = 8;
  auto idx = [&](int a, int b, int c) { return (a * p + b) * kper + c; };
  Cyc q = Cyc::root_of_unity(16, 4);
  Cyc qinv = q.inverse();
  Cyc qd = q - qinv;
  Vec FE = H.mul(vec_unit(32, idx(0, 1, 0)), vec_unit(32, idx(1, 0, 0)));
  Vec casimir = vec_zero(32);
  axpy(casimir, qd * qd, FE);
  casimir[idx(0, 0, 2)] += q;
  casimir[idx(0, 0, kper - 2)] += qinv;
  CHECK(H.is_central(casimir));

  Vec other = vec_zero(32);
  axpy(other, qd, FE);
  other[idx(0, 0, 2)] += q;
  other[idx(0, 0, kper - 2)] += qinv;
  CHECK_FALSE(H.is_central(other));
}

TEST_CASE("instance parser") {
  Instance a = build_instance("double_cyclic:3");
  CHECK(a.H().dim == 9);
  CHECK(a.parameter == 3);
  Instance b = build_instance("double_sweedler");
  CHECK(b.H().dim == 16);
  CHECK_THROWS_AS(build_instance("nonsense"), Error);
}

TEST_CASE("pivot acts on the two-dim module by -eps^2, -eps^-2") {
  const Instance& inst = sl2ext2();
  const HopfAlgebra& H = inst.H();
  Mat g = inst.two_dim->act_matrix(H.ribbon->pivot_g);
  Cyc eps2 = Cyc::root_of_unity(16, 4);
  CHECK(g.at(0, 0) == -eps2);
  CHECK(g.at(1, 1) == -(eps2.inverse()));
  CHECK(g.at(0, 1).is_zero());
  CHECK(g.at(1, 0).is_zero());
}
