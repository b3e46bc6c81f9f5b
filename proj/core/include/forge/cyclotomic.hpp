#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace forge {

using Rational = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

unsigned euler_phi(unsigned n);
unsigned lcm_order(unsigned a, unsigned b);

// Monic minimal polynomial of a primitive n-th root of unity over Q,
// as a coefficient vector of length phi(n)+1 (constant term first).
const std::vector<Rational>& cyclotomic_polynomial(unsigned n);

// Canonical "p/q" rendering: denominator always present, GMP-reduced.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

// Exact element of Q(zeta_N) in the power basis {1, z, ..., z^{phi(N)-1}},
// z = exp(2*pi*i/N), coefficients reduced modulo the N-th cyclotomic
// polynomial. Elements of different orders combine after embedding into
// Q(zeta_lcm). All arithmetic is exact.
class CycNumber {
 public:
  CycNumber() : order_(1), c_(1) {}

  static CycNumber zero(unsigned order = 1);
  static CycNumber one(unsigned order = 1);
  static CycNumber from_rational(const Rational& r, unsigned order = 1);
  static CycNumber from_int(long v, unsigned order = 1);
  // zeta_N^k, canonically reduced
  static CycNumber root_of_unity(unsigned n, long k);
  // reduce an arbitrary-degree polynomial in zeta_N
  static CycNumber from_poly(unsigned order, std::vector<Rational> poly);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  // throws Error unless is_rational()
  Rational rational_value() const;

  // image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^{M/N}; N must divide M
  CycNumber embedded(unsigned m) const;

  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& rhs);
  CycNumber& operator-=(const CycNumber& rhs);
  CycNumber& operator*=(const CycNumber& rhs);
  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator/(const CycNumber& a, const CycNumber& b);
  friend bool operator==(const CycNumber& a, const CycNumber& b);
  friend bool operator!=(const CycNumber& a, const CycNumber& b) {
    return !(a == b);
  }

  // extended Euclid against the cyclotomic polynomial; throws Error on zero
  CycNumber inverse() const;
  CycNumber pow(long e) const;

  CycNumber scaled(const Rational& r) const;

  // "c0,c1,...,c_{phi(N)-1};N" with each coefficient as "p/q"
  std::string to_string() const;
  static CycNumber from_string(const std::string& s);

 private:
  CycNumber(unsigned order, std::vector<Rational> c)
      : order_(order), c_(std::move(c)) {}

  unsigned order_;
  std::vector<Rational> c_;
};

using Cyc = CycNumber;

}  // namespace forge
