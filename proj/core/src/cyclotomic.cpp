#include "forge/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace forge {

unsigned euler_phi(unsigned n) {
  if (n == 0) throw Error("euler_phi: order must be positive");
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

namespace {

using Poly = std::vector<Rational>;  // constant term first

void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// exact division by a monic divisor; remainder must vanish
Poly poly_divide_exact(Poly num, const Poly& den) {
  if (den.empty() || den.back() != 1)
    throw Error("poly_divide_exact: divisor must be monic");
  if (num.size() < den.size())
    throw Error("poly_divide_exact: degree underflow");
  Poly quot(num.size() - den.size() + 1);
  for (size_t i = quot.size(); i-- > 0;) {
    Rational c = num[i + den.size() - 1];
    quot[i] = c;
    if (c != 0) {
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
  }
  for (const auto& r : num)
    if (r != 0) throw Error("poly_divide_exact: nonzero remainder");
  return quot;
}

struct OrderData {
  Poly phi;                 // Phi_N, monic, degree euler_phi(N)
  std::vector<Poly> rows;   // rows[d-deg] = x^d mod Phi_N, d in [deg, 2deg-2]
};

struct CycloCache {
  std::mutex mu;
  std::map<unsigned, Poly> phi_poly;
  std::map<unsigned, OrderData> orders;
};

CycloCache& cache() {
  static CycloCache c;
  return c;
}

const Poly& phi_poly_locked(CycloCache& cc, unsigned n) {
  auto it = cc.phi_poly.find(n);
  if (it != cc.phi_poly.end()) return it->second;
  Poly num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_divide_exact(std::move(num), phi_poly_locked(cc, d));
  }
  return cc.phi_poly.emplace(n, std::move(num)).first->second;
}

// map nodes are stable, entries immutable once inserted: the returned
// pointer stays valid for concurrent readers after the lock is released
const OrderData* order_data(unsigned n) {
  if (n == 0) throw Error("order must be positive");
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  auto it = cc.orders.find(n);
  if (it != cc.orders.end()) return &it->second;
  OrderData data;
  data.phi = phi_poly_locked(cc, n);
  unsigned deg = static_cast<unsigned>(data.phi.size()) - 1;
  Poly cur(deg);
  for (unsigned j = 0; j < deg; ++j) cur[j] = -data.phi[j];
  data.rows.push_back(cur);  // x^deg mod Phi
  for (unsigned d = deg + 1; d + 2 <= 2 * deg; ++d) {
    Poly next(deg);
    for (unsigned j = deg; j-- > 1;) next[j] = cur[j - 1];
    if (cur[deg - 1] != 0) {
      const Poly& top = data.rows[0];
      for (unsigned j = 0; j < deg; ++j) next[j] += cur[deg - 1] * top[j];
    }
    data.rows.push_back(next);
    cur = std::move(next);
  }
  return &cc.orders.emplace(n, std::move(data)).first->second;
}

std::vector<Rational> reduce_mod_phi(unsigned n, std::vector<Rational> p) {
  const OrderData* od = order_data(n);
  const unsigned deg = static_cast<unsigned>(od->phi.size()) - 1;
  if (p.size() <= deg) {
    p.resize(deg);
    return p;
  }
  if (p.size() <= 2 * deg - 1) {
    std::vector<Rational> out(p.begin(), p.begin() + deg);
    for (size_t d = deg; d < p.size(); ++d) {
      if (p[d] == 0) continue;
      const Poly& row = od->rows[d - deg];
      for (unsigned j = 0; j < deg; ++j) out[j] += p[d] * row[j];
    }
    return out;
  }
  while (p.size() > deg) {
    if (p.back() != 0) {
      Rational c = p.back();
      size_t shift = p.size() - 1 - deg;
      for (unsigned j = 0; j < deg; ++j) p[shift + j] -= c * od->phi[j];
    }
    p.pop_back();
  }
  return p;
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(unsigned n) {
  return order_data(n)->phi;
}

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw Error("rational_from_string: empty token");
  Rational r;
  try {
    r = Rational(s);
  } catch (const std::invalid_argument&) {
    throw Error("rational_from_string: bad token '" + s + "'");
  }
  if (r.get_den() == 0) throw Error("rational_from_string: zero denominator");
  r.canonicalize();
  return r;
}

CycNumber CycNumber::zero(unsigned order) {
  order_data(order);
  return CycNumber(order, std::vector<Rational>(euler_phi(order)));
}

CycNumber CycNumber::one(unsigned order) {
  return from_rational(Rational(1), order);
}

CycNumber CycNumber::from_rational(const Rational& r, unsigned order) {
  CycNumber x = zero(order);
  Rational c = r;
  c.canonicalize();
  x.c_[0] = c;
  return x;
}

CycNumber CycNumber::from_int(long v, unsigned order) {
  return from_rational(Rational(v), order);
}

CycNumber CycNumber::root_of_unity(unsigned n, long k) {
  if (n == 0) throw Error("root_of_unity: order must be positive");
  long kk = k % static_cast<long>(n);
  if (kk < 0) kk += n;
  std::vector<Rational> p(static_cast<size_t>(kk) + 1);
  p[static_cast<size_t>(kk)] = 1;
  return from_poly(n, std::move(p));
}

CycNumber CycNumber::from_poly(unsigned order, std::vector<Rational> poly) {
  if (order == 0) throw Error("from_poly: order must be positive");
  if (poly.empty()) poly.assign(1, Rational(0));
  auto c = reduce_mod_phi(order, std::move(poly));
  for (auto& r : c) r.canonicalize();
  return CycNumber(order, std::move(c));
}

bool CycNumber::is_zero() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const Rational& r) { return r == 0; });
}

bool CycNumber::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycNumber::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational CycNumber::rational_value() const {
  if (!is_rational()) throw Error("rational_value: element is irrational");
  return c_[0];
}

CycNumber CycNumber::embedded(unsigned m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) throw Error("embedded: target order not a multiple");
  unsigned step = m / order_;
  std::vector<Rational> p(static_cast<size_t>(c_.size() - 1) * step + 1);
  for (size_t j = 0; j < c_.size(); ++j) p[j * step] = c_[j];
  return from_poly(m, std::move(p));
}

CycNumber CycNumber::operator-() const {
  CycNumber x = *this;
  for (auto& r : x.c_) r = -r;
  return x;
}

CycNumber& CycNumber::operator+=(const CycNumber& rhs) {
  if (order_ == rhs.order_) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
  }
  unsigned l = lcm_order(order_, rhs.order_);
  *this = embedded(l);
  CycNumber other = rhs.embedded(l);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& rhs) {
  if (order_ == rhs.order_) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
  }
  unsigned l = lcm_order(order_, rhs.order_);
  *this = embedded(l);
  CycNumber other = rhs.embedded(l);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
  if (a.order_ != b.order_) {
    unsigned l = lcm_order(a.order_, b.order_);
    return a.embedded(l) * b.embedded(l);
  }
  if (a.is_zero() || b.is_zero()) return CycNumber::zero(a.order_);
  const auto& x = a.c_;
  const auto& y = b.c_;
  std::vector<Rational> conv(x.size() + y.size() - 1);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      conv[i + j] += x[i] * y[j];
    }
  }
  return CycNumber::from_poly(a.order_, std::move(conv));
}

CycNumber& CycNumber::operator*=(const CycNumber& rhs) {
  *this = *this * rhs;
  return *this;
}

CycNumber operator/(const CycNumber& a, const CycNumber& b) {
  return a * b.inverse();
}

bool operator==(const CycNumber& a, const CycNumber& b) {
  if (a.order_ == b.order_) return a.c_ == b.c_;
  unsigned l = lcm_order(a.order_, b.order_);
  return a.embedded(l).c_ == b.embedded(l).c_;
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw Error("inverse: division by zero");
  if (is_rational()) return from_rational(1 / c_[0], order_);
  // extended Euclid in Q[x] against Phi_order; s tracks the coefficient
  // of *this, so at termination s0 * this == gcd (a nonzero constant)
  Poly r0 = cyclotomic_polynomial(order_);
  Poly r1 = c_;
  poly_trim(r1);
  Poly s0{Rational(0)}, s1{Rational(1)};
  while (!(r1.size() == 1 && r1[0] == 0)) {
    Poly q(r0.size() - r1.size() + 1);
    Poly rem = r0;
    for (size_t i = q.size(); i-- > 0;) {
      Rational c = rem[i + r1.size() - 1] / r1.back();
      q[i] = c;
      if (c != 0) {
        for (size_t j = 0; j < r1.size(); ++j) rem[i + j] -= c * r1[j];
      }
    }
    poly_trim(rem);
    Poly qs(q.size() + s1.size() - 1);
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    }
    Poly s2(std::max(s0.size(), qs.size()));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1 || r0[0] == 0)
    throw Error("inverse: unexpected gcd degree");
  for (auto& c : s0) c /= r0[0];
  return from_poly(order_, std::move(s0));
}

CycNumber CycNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNumber acc = one(order_);
  CycNumber base = *this;
  unsigned long exp = static_cast<unsigned long>(e);
  while (exp > 0) {
    if (exp & 1) acc *= base;
    base *= base;
    exp >>= 1;
  }
  return acc;
}

CycNumber CycNumber::scaled(const Rational& r) const {
  CycNumber x = *this;
  for (auto& c : x.c_) {
    c *= r;
    c.canonicalize();
  }
  return x;
}

std::string CycNumber::to_string() const {
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += rational_to_string(c_[i]);
  }
  out += ';';
  out += std::to_string(order_);
  return out;
}

CycNumber CycNumber::from_string(const std::string& s) {
  auto semi = s.rfind(';');
  if (semi == std::string::npos)
    throw Error("CycNumber::from_string: missing order separator");
  unsigned order = 0;
  try {
    order = static_cast<unsigned>(std::stoul(s.substr(semi + 1)));
  } catch (const std::exception&) {
    throw Error("CycNumber::from_string: bad order");
  }
  if (order == 0)
    throw Error("CycNumber::from_string: order must be positive");
  std::vector<Rational> coeffs;
  std::stringstream body(s.substr(0, semi));
  std::string tok;
  while (std::getline(body, tok, ','))
    coeffs.push_back(rational_from_string(tok));
  if (coeffs.size() != euler_phi(order))
    throw Error("CycNumber::from_string: coefficient count mismatch");
  order_data(order);
  return CycNumber(order, std::move(coeffs));
}

}  // namespace forge
