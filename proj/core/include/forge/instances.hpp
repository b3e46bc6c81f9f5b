#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/hopf.hpp"

namespace forge {

// Group algebra k[Z/n]: basis h^0..h^{n-1}, every basis element grouplike.
HopfAlgebra group_algebra_cyclic(int n, unsigned scalar_order);

// The 4-dimensional algebra <g, x | g^2 = 1, x^2 = 0, gx = -xg> with
// Delta(g) = g (x) g and Delta(x) = x (x) 1 + g (x) x.
HopfAlgebra taft_sweedler_base();

// Drinfeld double D(A) = A*^cop (bowtie) A on the basis f^i (x) e_j,
// index i * dim(A) + j.  Carries the canonical R = sum_i (eps (x) e_i) (x) (e^i (x) 1).
// dual_characters: algebra characters of A (coordinates chi(e_m)), grouplike in A*^cop.
// grouplikes: grouplike elements of A.  Their pairwise products seed the ribbon search.
HopfAlgebra drinfeld_double(const HopfAlgebra& A,
                            const std::vector<Vec>& dual_characters,
                            const std::vector<Vec>& grouplikes);

struct Instance {
  // shared_ptr so modules can hold a stable pointer across copies
  std::shared_ptr<HopfAlgebra> hopf;
  // Preferred small module for quantum-trace colors, when the instance has one.
  std::optional<HModule> two_dim;
  std::string kind;
  int parameter = 0;

  HopfAlgebra& H() { return *hopf; }
  const HopfAlgebra& H() const { return *hopf; }
};

Instance build_double_cyclic(int n);
Instance build_double_sweedler();
Instance build_small_sl2_ext(int p);

// Parses "double_cyclic:3", "double_sweedler", "small_sl2_ext:2".
Instance build_instance(const std::string& kind_spec);

}  // namespace forge
