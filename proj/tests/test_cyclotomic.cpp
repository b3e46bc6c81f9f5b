#include "forge/cyclotomic.hpp"

#include <random>

#include "doctest.h"

using forge::Cyc;
using forge::Rational;

namespace {

Cyc random_element(std::mt19937& rng, unsigned order) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> c(forge::euler_phi(order));
  for (auto& r : c) r = Rational(num(rng), den(rng));
  return Cyc::from_poly(order, std::move(c));
}

}  // namespace

TEST_CASE("primitive roots reduce to canonical form") {
  CHECK(Cyc::root_of_unity(4, 2) == Cyc::from_int(-1));
  CHECK(Cyc::root_of_unity(1, 0) == Cyc::one());
  CHECK(Cyc::root_of_unity(8, 4) == Cyc::from_int(-1));
  CHECK(Cyc::root_of_unity(2, 1) == Cyc::from_int(-1));
  CHECK(Cyc::root_of_unity(6, 3) == Cyc::from_int(-1));
  for (unsigned n = 1; n <= 16; ++n) {
    CAPTURE(n);
    CHECK(Cyc::root_of_unity(n, 1).pow(n) == Cyc::one());
    CHECK(Cyc::root_of_unity(n, -1) == Cyc::root_of_unity(n, n - 1));
  }
}

TEST_CASE("cyclotomic polynomials by iterated exact division") {
  auto phi4 = forge::cyclotomic_polynomial(4);  // x^2 + 1
  REQUIRE(phi4.size() == 3);
  CHECK(phi4[0] == 1);
  CHECK(phi4[1] == 0);
  CHECK(phi4[2] == 1);
  auto phi8 = forge::cyclotomic_polynomial(8);  // x^4 + 1
  REQUIRE(phi8.size() == 5);
  CHECK(phi8[0] == 1);
  CHECK(phi8[4] == 1);
  CHECK(phi8[1] == 0);
  auto phi12 = forge::cyclotomic_polynomial(12);  // x^4 - x^2 + 1
  REQUIRE(phi12.size() == 5);
  CHECK(phi12[0] == 1);
  CHECK(phi12[2] == -1);
  CHECK(phi12[4] == 1);
}

TEST_CASE("field arithmetic identities") {
  Cyc i = Cyc::root_of_unity(4, 1);
  CHECK(i.inverse() == -i);
  Cyc z3 = Cyc::root_of_unity(3, 1);
  CHECK((Cyc::one() + z3) * (Cyc::one() + z3 * z3) == Cyc::one());
  Cyc s = Cyc::zero(5);
  for (int k = 0; k < 5; ++k) s += Cyc::root_of_unity(5, k);
  CHECK(s.is_zero());
}

TEST_CASE("inverse is a true field inverse") {
  std::mt19937 rng(20260817);
  for (unsigned order : {1u, 2u, 3u, 4u, 5u, 8u, 12u, 16u}) {
    for (int trial = 0; trial < 8; ++trial) {
      Cyc a = random_element(rng, order);
      if (a.is_zero()) continue;
      CAPTURE(order);
      CHECK(a * a.inverse() == Cyc::one());
      CHECK(a / a == Cyc::one());
    }
  }
  CHECK_THROWS_AS(Cyc::zero(4).inverse(), forge::Error);
}

TEST_CASE("mixed orders embed into the lcm field") {
  Cyc i = Cyc::root_of_unity(4, 1);
  Cyc z3 = Cyc::root_of_unity(3, 1);
  Cyc prod = i * z3;
  CHECK(prod.order() == 12);
  CHECK(prod == Cyc::root_of_unity(12, 7));  // zeta_12^3 * zeta_12^4
  CHECK(i == Cyc::root_of_unity(8, 2));
  CHECK(i + Cyc::from_int(0, 3) == i.embedded(12));
}

TEST_CASE("embedding commutes with field operations") {
  std::mt19937 rng(7);
  for (unsigned n = 1; n <= 12; ++n) {
    for (unsigned m = n; m <= 12; ++m) {
      if (m % n != 0) continue;
      Cyc a = random_element(rng, n);
      Cyc b = random_element(rng, n);
      CAPTURE(n);
      CAPTURE(m);
      CHECK((a + b).embedded(m) == a.embedded(m) + b.embedded(m));
      CHECK((a * b).embedded(m) == a.embedded(m) * b.embedded(m));
      CHECK((a - b).embedded(m) == a.embedded(m) - b.embedded(m));
      if (!b.is_zero())
        CHECK((a / b).embedded(m) == a.embedded(m) / b.embedded(m));
    }
  }
}

TEST_CASE("reduction is idempotent") {
  std::mt19937 rng(99);
  for (unsigned order : {3u, 4u, 8u, 16u}) {
    Cyc a = random_element(rng, order);
    std::vector<Rational> c = a.coeffs();
    Cyc again = Cyc::from_poly(order, c);
    CHECK(a == again);
    CHECK(a.coeffs() == again.coeffs());
  }
}

TEST_CASE("serialization round-trips bit-exactly") {
  std::mt19937 rng(1234);
  for (unsigned order : {1u, 2u, 4u, 5u, 8u, 16u}) {
    for (int trial = 0; trial < 6; ++trial) {
      Cyc a = random_element(rng, order);
      std::string s = a.to_string();
      Cyc b = Cyc::from_string(s);
      CHECK(a == b);
      CHECK(b.to_string() == s);
    }
  }
  Cyc i = Cyc::root_of_unity(4, 1);
  CHECK(i.to_string() == "0/1,1/1;4");
  CHECK(Cyc::from_string("0/1,1/1;4") == i);
  CHECK(Cyc::from_string("-1/2,3/1;4").to_string() == "-1/2,3/1;4");
  CHECK_THROWS_AS(Cyc::from_string("1/1;0"), forge::Error);
  CHECK_THROWS_AS(Cyc::from_string("1/1,0/1,0/1;4"), forge::Error);
  CHECK_THROWS_AS(Cyc::from_string("nonsense"), forge::Error);
}

TEST_CASE("rational detection and extraction") {
  Cyc half = Cyc::from_rational(Rational(1, 2), 8);
  CHECK(half.is_rational());
  CHECK(half.rational_value() == Rational(1, 2));
  Cyc z = Cyc::root_of_unity(8, 1);
  CHECK(!z.is_rational());
  CHECK_THROWS_AS(z.rational_value(), forge::Error);
  CHECK((z.pow(8)).is_one());
}

TEST_CASE("powers agree with repeated multiplication") {
  Cyc z = Cyc::root_of_unity(16, 3);
  Cyc acc = Cyc::one(16);
  for (int k = 0; k < 10; ++k) {
    CHECK(z.pow(k) == acc);
    CHECK(z.pow(-k) == acc.inverse());
    acc *= z;
  }
}
