#pragma once

#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/linalg.hpp"

namespace forge {

// sparse element of H in the basis (index, coefficient)
struct SparseVec {
  std::vector<std::pair<int, Cyc>> terms;
};

// one term of a comultiplication: c * e_j (x) e_k
struct CoTerm {
  int j;
  int k;
  Cyc c;
};

// term of an iterated comultiplication: c * e_{idx[0]} (x) ... (x) e_{idx[k]}
struct SweedlerTerm {
  std::vector<int> idx;
  Cyc c;
};
using SweedlerList = std::vector<SweedlerTerm>;

struct VerificationItem {
  std::string name;
  bool ok;
  std::string witness;  // empty on pass
};

struct VerificationReport {
  std::vector<VerificationItem> items;
  void add(const std::string& name, bool ok, const std::string& witness = "");
  bool all_ok() const;
  std::string summary() const;
};

// rank-decomposed element of H (x) H: sum of pure tensors
using TensorRank = std::vector<std::pair<Vec, Vec>>;

struct RibbonData {
  TensorRank R;
  TensorRank R_inv;
  Vec v;
  Vec v_inv;
  Vec u;
  Vec u_inv;
  Vec pivot_g;
  Vec pivot_g_inv;
  Vec integral_lambda;  // left integral on H, coefficients in the dual basis
};

// Finite-dimensional Hopf algebra by structure constants over Q(zeta_N).
// Elements of H and of H* both travel as coefficient vectors (Vec); dual
// vectors hold the values on the basis, phi = sum phi_i e^i.
class HopfAlgebra {
 public:
  int dim = 0;
  unsigned scalar_order = 1;
  std::string name;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<SparseVec>> mult_table;  // [i][j] = e_i * e_j
  Vec unit;
  std::vector<std::vector<CoTerm>> comult_table;  // [i] = Delta(e_i)
  Vec counit;                                     // epsilon(e_i)
  Mat antipode_mat;      // row i = coefficients of S(e_i)
  Mat antipode_inv_mat;  // row i = coefficients of S^{-1}(e_i)
  std::optional<RibbonData> ribbon;
  // instance-supplied extras consumed by searches and invariant shortcuts
  std::vector<Vec> known_grouplikes;
  std::vector<Vec> designated_generators;  // elements generating H as an algebra
  std::map<std::string, std::string> metadata;

  // ---- algebra/coalgebra evaluation ----
  const SparseVec& basis_mul(int i, int j) const { return mult_table[i][j]; }
  Vec mul(const Vec& x, const Vec& y) const;
  Vec mul_basis_vec(int i, const Vec& y) const;  // e_i * y
  Vec mul_vec_basis(const Vec& x, int j) const;  // x * e_j
  Vec power(const Vec& x, long k) const;         // k >= 0
  Cyc counit_of(const Vec& x) const;
  Vec apply_antipode(const Vec& x) const;
  Vec apply_antipode_inv(const Vec& x) const;
  std::vector<CoTerm> comult(const Vec& x) const;
  Mat left_mult_matrix(const Vec& x) const;
  Mat right_mult_matrix(const Vec& x) const;
  std::optional<Vec> element_inverse(const Vec& x) const;
  bool is_central(const Vec& x) const;
  bool is_grouplike(const Vec& x) const;
  Cyc scalar_zero() const { return Cyc::zero(scalar_order); }
  Cyc scalar_one() const { return Cyc::one(scalar_order); }

  // iterated comultiplication Delta^k(e_i) as rank-decomposed terms with
  // k+1 legs; k = 0 returns e_i itself. Tables are built lazily under a
  // lock and then shared read-only across workers.
  const SweedlerList& sweedler(int i, int k) const;
  void warm_sweedler(int k) const;

  // ---- dual side: functionals as value vectors ----
  Cyc dual_eval(const Vec& phi, const Vec& x) const;
  Vec star(const Vec& phi, const Vec& psi) const;  // convolution product
  Vec counit_functional() const;                   // unit of (H*, star)
  Vec coreg_left(const Vec& h, const Vec& phi) const;   // (h |> phi)(y) = phi(y h)
  Vec coreg_right(const Vec& phi, const Vec& h) const;  // (phi <| h)(y) = phi(h y)
  Vec dual_antipode(const Vec& phi) const;      // phi o S
  Vec dual_antipode_inv(const Vec& phi) const;  // phi o S^{-1}
  // the functional h -> sigma(h . x) of a left module given by action matrices
  Vec matrix_coefficient(const std::vector<Mat>& action, const Vec& sigma,
                         const Vec& x) const;

  std::string describe_basis(int i) const;

 private:
  struct SweedlerCache {
    std::mutex mu;
    std::atomic<int> depth{-1};
    // tables[k][i] = Delta^k(e_i)
    std::vector<std::vector<SweedlerList>> tables;
  };
  // copying or moving an algebra starts with a fresh, empty cache
  struct CacheHolder {
    SweedlerCache c;
    CacheHolder() = default;
    CacheHolder(const CacheHolder&) {}
    CacheHolder& operator=(const CacheHolder&) { return *this; }
    CacheHolder(CacheHolder&&) noexcept {}
    CacheHolder& operator=(CacheHolder&&) noexcept { return *this; }
  };
  mutable CacheHolder sweedler_cache_;
};

// dense vector in H (x) H, index i*dim + j
Vec tensor2_dense(const HopfAlgebra& H, const TensorRank& t);
TensorRank tensor_flip(const TensorRank& t);

// ---- verification ----
VerificationReport verify_hopf(const HopfAlgebra& H);
VerificationReport verify_quasitriangular_ribbon(const HopfAlgebra& H);

// left integral on H: lambda(h_(2)) h_(1) = lambda(h) 1_H, solution space
// must be one-dimensional; normalized so lambda(v) = 1 when ribbon data is
// present (error if lambda(v) = 0), otherwise first nonzero value = 1
Vec compute_integral(const HopfAlgebra& H);

// Drinfeld element u = S(R_[2]) R_[1] and friends, from H.ribbon->R
Vec drinfeld_u(const HopfAlgebra& H);

// ribbon element search: linear system {v central, Delta(v)(R'R) = v (x) v
// viewed linearly via counit marginals, S(v) = v, eps(v) = 1}, then the
// quadratic filters v^2 = u S(u) and Delta(v)(R'R) = v (x) v exactly.
// Falls back to u-shifts of known grouplikes when the slice is not a point.
std::optional<Vec> ribbon_search(const HopfAlgebra& H);

// completes ribbon data from R (+ optionally v): u, inverses, pivot,
// integral; verifies nothing by itself
void complete_ribbon_data(HopfAlgebra& H);

// left H-module on k^m given by action matrices per basis element
struct HModule {
  const HopfAlgebra* H = nullptr;
  int dim = 0;
  std::vector<Mat> action;  // action[i] = matrix of e_i

  Vec act(const Vec& h, const Vec& x) const;
  Mat act_matrix(const Vec& h) const;
};

HModule trivial_module(const HopfAlgebra& H);
HModule left_regular_module(const HopfAlgebra& H);
VerificationReport verify_module(const HModule& X);

// quantum trace of a module: h -> Tr(rho(pivot_g * h))
Vec quantum_trace(const HopfAlgebra& H, const HModule& X);

}  // namespace forge
