#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "forge/module_algebra.hpp"

namespace forge {

// The handle algebra built on the dual space of H.  Functionals are stored
// as value vectors (coordinate i = value on e_i), matching the dual-side
// helpers of HopfAlgebra.  The product twists the convolution product by
// the R-matrix; the coadjoint action of H makes it a module algebra.
struct BraidedDual {
  const HopfAlgebra* H = nullptr;
  int dim = 0;
  Vec unit;                                // counit of H as a functional
  std::vector<std::vector<Vec>> mul_table; // [i][j] = f^i f^j
  std::vector<Mat> coad;                   // [i] = coadjoint action of e_i
  Mat antipode;                            // braided antipode
  Mat rsd;                                 // the map phi: dual -> H
  std::optional<Mat> rsd_inv;              // present iff phi is invertible

  // splitting table for the dual coproduct: dual_co[i] lists (j, k, c)
  // with c the coefficient of e_i in e_j e_k
  std::vector<std::vector<std::tuple<int, int, Cyc>>> dual_co;

  Vec mul(const Vec& x, const Vec& y) const;
  Vec coad_apply(const Vec& h, const Vec& x) const;
  Vec antipode_apply(const Vec& x) const;
  bool factorizable() const { return rsd_inv.has_value(); }

  // dual coproduct iterated to the given number of legs, with indices
  // running over the dual basis
  SweedlerList dual_legs(const Vec& phi, int legs) const;

  // is coad(h)(x) = eps(h) x for every basis h?
  bool is_invariant(const Vec& x) const;
};

BraidedDual build_braided_dual(const HopfAlgebra& H);

// table-free forms of the same operations, used as independent checks
Vec l01_mul(const HopfAlgebra& H, const Vec& x, const Vec& y);
Vec l01_coad(const HopfAlgebra& H, const Vec& h, const Vec& x);
Vec l01_antipode(const HopfAlgebra& H, const Vec& x);
Vec phi01(const HopfAlgebra& H, const Vec& x);

// phi01 run backwards; throws when the map is singular
Vec phi01_inverse(const BraidedDual& L, const Vec& h);

// the handle algebra packaged for the generic module-algebra machinery
ModuleAlgebra l01_module_algebra(const BraidedDual& L);

// quantum trace of a module as a functional: h -> Tr(rho(w h)) with the
// weight w the Drinfeld element, or the pivot when use_pivot is set.
// Throws unless the result is coadjoint-invariant.
Vec qtrace(const HopfAlgebra& H, const HModule& X, bool use_pivot);

// ---- surface algebras ----

// a loop generator on the surface: one of the 2g handle curves or one of
// the n boundary curves, possibly traversed backwards
struct LoopEmbeddingLabel {
  enum Kind { B, A, M };
  Kind kind = B;
  int index = 1;  // 1-based: b_i / a_i for i <= g, m_{g+j} carries g+j
  int sign = 1;   // -1 composes the embedding with the braided antipode
};

// element of the surface algebra for genus g with n punctures, expanded
// over the tensor basis of 2g + n dual copies.  Multi-indices are kept
// sorted and zero coefficients are dropped.
struct LgnElement {
  int g = 0;
  int n = 0;
  std::map<std::vector<int>, Cyc> terms;

  int slots() const { return 2 * g + n; }
  void add(const std::vector<int>& idx, const Cyc& c);
  LgnElement& operator+=(const LgnElement& o);
  LgnElement scaled(const Cyc& c) const;
  bool operator==(const LgnElement& o) const;
  bool operator!=(const LgnElement& o) const { return !(*this == o); }
  bool is_zero() const { return terms.empty(); }

  // dense coordinates in the tensor basis, slot 0 slowest
  Vec dense(int dual_dim) const;
};

// x (x) y with the slots of y appended after the slots of x: handles of y
// after handles of x, punctures of y after punctures of x.  Valid glue for
// normally ordered blocks, where juxtaposition is the plain tensor.
LgnElement lgn_tensor(const LgnElement& x, const LgnElement& y);

class LgnAlgebra {
 public:
  LgnAlgebra(const BraidedDual& L, int g, int n);
  ~LgnAlgebra();
  LgnAlgebra(const LgnAlgebra&) = delete;
  LgnAlgebra& operator=(const LgnAlgebra&) = delete;

  const BraidedDual& dual() const { return *L_; }
  const HopfAlgebra& hopf() const { return *L_->H; }
  int genus() const { return g_; }
  int punctures() const { return n_; }
  int slots() const { return 2 * g_ + n_; }

  LgnElement zero() const;
  LgnElement one() const;
  LgnElement embed(const LoopEmbeddingLabel& lab, const Vec& phi) const;
  LgnElement mul(const LgnElement& x, const LgnElement& y) const;
  LgnElement coad(const Vec& h, const LgnElement& x) const;

  // product of single-slot factors in the given order, each factor a
  // functional placed at that slot
  LgnElement from_word(const std::vector<std::pair<int, Vec>>& factors) const;

  // the action of h on the whole tensor space, slot 0 slowest
  Mat coad_matrix(const Vec& h) const;

  // embedding of the total boundary loop b_1 a_1^{-1} b_1^{-1} a_1 ...
  // m_{g+1} ... m_{g+n}
  LgnElement boundary_embed(const Vec& phi) const;

  // basis of the invariant subalgebra, computed from the designated
  // generators when available
  std::vector<LgnElement> invariants() const;

  // slot position of a label in the normal order [b1 a1 .. bg ag m..]
  int slot_of(const LoopEmbeddingLabel& lab) const;

 private:
  const BraidedDual* L_;
  int g_, n_;

  // exchange tables, built lazily per index pair.
  // t10_[i][j]: moves a-copy f^i left past b-copy f^j on one handle,
  // tx_[i][j]: moves f^i at a higher loop index left past f^j at a lower
  // one.  Entries are (k, l, c): the pair rewrites to c f^k f^l with f^k
  // in the lower slot.
  struct ExchangeTable {
    std::vector<std::vector<std::vector<std::tuple<int, int, Cyc>>>> cell;
    std::vector<std::vector<char>> built;
  };
  mutable ExchangeTable t10_, tx_;
  mutable std::recursive_mutex lock_;

  // per R-term coadjoint matrices for the cross exchange
  mutable std::vector<std::pair<Mat, Mat>> cross_ops_;
  // per four-fold R-term translation matrices for the one-handle exchange
  mutable std::vector<std::pair<Mat, Mat>> handle_ops_;
  mutable bool cross_ready_ = false;
  mutable bool handle_ready_ = false;

  // boundary embeddings of the dual basis on a single handle
  mutable std::vector<LgnElement> b10_;
  mutable std::unique_ptr<LgnAlgebra> block_;  // helper (1,0) copy

  const std::vector<std::tuple<int, int, Cyc>>& t10(int i, int j) const;
  const std::vector<std::tuple<int, int, Cyc>>& tx(int i, int j) const;
  const std::vector<LgnElement>& boundary_blocks() const;

  int loop_index(int slot) const;  // b_i, a_i -> i; m_{g+j} -> g+j

  // words are products of single-slot basis factors (slot, dual index);
  // a word is normal when slots strictly increase left to right
  using Word = std::vector<std::pair<int, int>>;
  using WordMap = std::map<Word, Cyc>;
  WordMap normalize(WordMap&& pending) const;
  WordMap mul_words(const WordMap& x, const WordMap& y) const;
  LgnElement finish(const WordMap& words) const;
  void pad(const Word& w, const Cyc& c, LgnElement& out) const;
};

LgnAlgebra build_lgn(const BraidedDual& L, int g, int n);

// materialized multiplication and action tables over the full tensor
// basis; meant for small total dimension
ModuleAlgebra lgn_module_algebra(const LgnAlgebra& A);

// moment map h -> boundary_embed(phi01^{-1}(h)); needs factorizability
struct LgnMomentMap {
  const LgnAlgebra* A = nullptr;
  std::vector<LgnElement> mu;  // [i] = image of e_i

  LgnElement apply(const Vec& h) const;
};

LgnMomentMap moduli_qmm(const LgnAlgebra& A);

// moment map for the composite surface assembled from per-block maps
// through the braided coproduct
LgnMomentMap lgn_fused_qmm(const LgnAlgebra& A);

// moment map laws checked without materializing the product table:
// unit, morphism, the exchange law
//   a mu(h) = mu(h_(1)) (a <| h_(2))
// and the inner form of the action, with a running over the slot
// embeddings of the dual basis and h over the designated generators.
// Both laws multiply up in every argument, so generator coverage decides
// them; with generator_morphism the morphism check also restricts its
// left factor to the designated generators.  inner_samples >= 0 caps the
// inner-form check to that many evenly spread (a, h) pairs; the inner
// form follows from the other two laws, so capping it keeps large
// surfaces affordable without weakening the axiom.
VerificationReport lgn_qmm_verify(const LgnMomentMap& m,
                                  bool generator_morphism = false,
                                  int inner_samples = -1);

}  // namespace forge
