#pragma once

#include "forge/hopf.hpp"

namespace forge {

// Right H-module-algebra by structure constants. h_action[i] is the matrix
// of ? <| e_i acting on coordinate columns.
struct ModuleAlgebra {
  const HopfAlgebra* H = nullptr;
  int dim = 0;
  std::vector<std::vector<SparseVec>> mult;
  Vec unit;
  std::vector<Mat> h_action;

  Vec mul(const Vec& x, const Vec& y) const;
  Vec act(const Vec& x, const Vec& h) const;  // x <| h
  Mat act_matrix(const Vec& h) const;
  Mat left_mult_matrix(const Vec& x) const;
};

VerificationReport verify_module_algebra(const ModuleAlgebra& A);

// Left A-module with a compatible right H-action: rho is an algebra
// morphism, D reverses products, and (a.v) <| h = (a <| h_(1)).(v <| h_(2)).
struct EquivariantModule {
  const ModuleAlgebra* A = nullptr;
  int dim = 0;
  std::vector<Mat> rho;  // [a] = action of the A-basis element e_a
  std::vector<Mat> D;    // [i] = right action of the H-basis element e_i

  Vec a_act(const Vec& a, const Vec& v) const;
  Vec h_act(const Vec& v, const Vec& h) const;
  Mat a_act_matrix(const Vec& a) const;
  Mat h_act_matrix(const Vec& h) const;
};

VerificationReport verify_equivariant(const EquivariantModule& M);

ModuleAlgebra braided_tensor(const ModuleAlgebra& A1, const ModuleAlgebra& A2);

// external product of M1, M2 over a braided_tensor(A1, A2) built beforehand
EquivariantModule braided_external(const EquivariantModule& M1,
                                   const EquivariantModule& M2,
                                   const ModuleAlgebra& A12);

// basis of {v : v <| h = eps(h) v}; designated generators of H are used
// when available unless use_generators is false
std::vector<Vec> invariant_subspace(const HopfAlgebra& H,
                                    const std::vector<Mat>& action,
                                    bool use_generators = true);

// H acting on itself by a <| h = S(h_(1)) a h_(2)
ModuleAlgebra adjoint_module_algebra(const HopfAlgebra& H);

// h -> ad^r(R_[1])(h_(1)) (x) S(R_[2]) h_(2)
TensorRank braided_coproduct(const HopfAlgebra& H, const Vec& h);

struct QuantumMomentMap {
  const ModuleAlgebra* A = nullptr;
  std::vector<Vec> mu;  // [i] = value on the H-basis element e_i

  Vec apply(const Vec& h) const;
};

VerificationReport qmm_verify(const QuantumMomentMap& m);
QuantumMomentMap qmm_fuse(const QuantumMomentMap& m1,
                          const QuantumMomentMap& m2,
                          const ModuleAlgebra& A12);
// equips a left A-module with v <|_mu h = mu(S(h)).v
EquivariantModule qmm_equivariant(const std::vector<Mat>& rho, int dim,
                                  const QuantumMomentMap& m);

}  // namespace forge
