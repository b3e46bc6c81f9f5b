#include "forge/module_algebra.hpp"

namespace forge {

namespace {

SparseVec sparsify(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.terms.push_back({static_cast<int>(i), v[i]});
  return s;
}

}  // namespace

Vec ModuleAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out = vec_zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      Cyc c = x[i] * y[j];
      for (const auto& [o, s] : mult[i][j].terms) out[o] += c * s;
    }
  }
  return out;
}

Vec ModuleAlgebra::act(const Vec& x, const Vec& h) const {
  Vec out = vec_zero(dim);
  for (size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero()) continue;
    axpy(out, h[i], mat_vec(h_action[i], x));
  }
  return out;
}

Mat ModuleAlgebra::act_matrix(const Vec& h) const {
  Mat m(dim, dim);
  for (size_t i = 0; i < h.size(); ++i)
    if (!h[i].is_zero()) m = m + h_action[i].scaled(h[i]);
  return m;
}

Mat ModuleAlgebra::left_mult_matrix(const Vec& x) const {
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec col = mul(x, vec_unit(dim, j));
    for (int i = 0; i < dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

VerificationReport verify_module_algebra(const ModuleAlgebra& A) {
  VerificationReport rep;
  const HopfAlgebra& H = *A.H;
  const int d = A.dim;
  {
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      Vec e = vec_unit(d, i);
      ok = A.mul(A.unit, e) == e && A.mul(e, A.unit) == e;
    }
    rep.add("algebra unit", ok);
  }
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < d && ok; ++i)
      for (int j = 0; j < d && ok; ++j) {
        Vec ij = A.mul(vec_unit(d, i), vec_unit(d, j));
        for (int k = 0; k < d && ok; ++k) {
          Vec jk = A.mul(vec_unit(d, j), vec_unit(d, k));
          if (A.mul(ij, vec_unit(d, k)) != A.mul(vec_unit(d, i), jk)) {
            ok = false;
            wit = "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                  std::to_string(k) + ")";
          }
        }
      }
    rep.add("associativity", ok, wit);
  }
  {
    // right action law: (x <| e_i) <| e_j = x <| (e_i e_j)
    bool ok = true;
    for (int i = 0; i < H.dim && ok; ++i)
      for (int j = 0; j < H.dim && ok; ++j) {
        Mat lhs = A.h_action[j] * A.h_action[i];
        Mat rhs(d, d);
        for (const auto& [o, s] : H.mult_table[i][j].terms)
          rhs = rhs + A.h_action[o].scaled(s);
        ok = lhs == rhs;
      }
    rep.add("right action multiplicativity", ok);
    rep.add("unit of H acts as identity",
            A.act_matrix(H.unit) == Mat::identity(d));
  }
  {
    // (xy) <| h = (x <| h_(1))(y <| h_(2))
    bool ok = true;
    std::string wit;
    for (int hi = 0; hi < H.dim && ok; ++hi)
      for (int i = 0; i < d && ok; ++i) {
        for (int j = 0; j < d && ok; ++j) {
          Vec lhs = mat_vec(A.h_action[hi],
                            A.mul(vec_unit(d, i), vec_unit(d, j)));
          Vec rhs = vec_zero(d);
          for (const CoTerm& t : H.comult_table[hi]) {
            Vec x1 = mat_vec(A.h_action[t.j], vec_unit(d, i));
            Vec y2 = mat_vec(A.h_action[t.k], vec_unit(d, j));
            axpy(rhs, t.c, A.mul(x1, y2));
          }
          if (lhs != rhs) {
            ok = false;
            wit = "x=" + std::to_string(i) + " y=" + std::to_string(j) +
                  " h=" + std::to_string(hi);
          }
        }
      }
    rep.add("module-algebra law", ok, wit);
  }
  {
    bool ok = true;
    for (int hi = 0; hi < H.dim && ok; ++hi) {
      Vec lhs = mat_vec(A.h_action[hi], A.unit);
      Vec rhs = A.unit;
      for (auto& c : rhs) c = c * H.counit[hi];
      ok = lhs == rhs;
    }
    rep.add("unit is invariant", ok);
  }
  return rep;
}

Vec EquivariantModule::a_act(const Vec& a, const Vec& v) const {
  Vec out = vec_zero(dim);
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) axpy(out, a[i], mat_vec(rho[i], v));
  return out;
}

Vec EquivariantModule::h_act(const Vec& v, const Vec& h) const {
  Vec out = vec_zero(dim);
  for (size_t i = 0; i < h.size(); ++i)
    if (!h[i].is_zero()) axpy(out, h[i], mat_vec(D[i], v));
  return out;
}

Mat EquivariantModule::a_act_matrix(const Vec& a) const {
  Mat m(dim, dim);
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) m = m + rho[i].scaled(a[i]);
  return m;
}

Mat EquivariantModule::h_act_matrix(const Vec& h) const {
  Mat m(dim, dim);
  for (size_t i = 0; i < h.size(); ++i)
    if (!h[i].is_zero()) m = m + D[i].scaled(h[i]);
  return m;
}

VerificationReport verify_equivariant(const EquivariantModule& M) {
  VerificationReport rep;
  const ModuleAlgebra& A = *M.A;
  const HopfAlgebra& H = *A.H;
  {
    bool ok = M.a_act_matrix(A.unit) == Mat::identity(M.dim);
    for (int i = 0; i < A.dim && ok; ++i)
      for (int j = 0; j < A.dim && ok; ++j) {
        Mat rhs(M.dim, M.dim);
        for (const auto& [o, s] : A.mult[i][j].terms)
          rhs = rhs + M.rho[o].scaled(s);
        ok = M.rho[i] * M.rho[j] == rhs;
      }
    rep.add("A-action is an algebra morphism", ok);
  }
  {
    bool ok = M.h_act_matrix(H.unit) == Mat::identity(M.dim);
    for (int i = 0; i < H.dim && ok; ++i)
      for (int j = 0; j < H.dim && ok; ++j) {
        Mat rhs(M.dim, M.dim);
        for (const auto& [o, s] : H.mult_table[i][j].terms)
          rhs = rhs + M.D[o].scaled(s);
        ok = M.D[j] * M.D[i] == rhs;
      }
    rep.add("H-action is a right action", ok);
  }
  {
    // (a.v) <| h = (a <| h_(1)).(v <| h_(2))
    bool ok = true;
    std::string wit;
    for (int hi = 0; hi < H.dim && ok; ++hi)
      for (int a = 0; a < A.dim && ok; ++a) {
        Mat lhs = M.D[hi] * M.rho[a];
        Mat rhs(M.dim, M.dim);
        for (const CoTerm& t : H.comult_table[hi]) {
          Vec ah = mat_vec(A.h_action[t.j], vec_unit(A.dim, a));
          rhs = rhs + (M.a_act_matrix(ah) * M.D[t.k]).scaled(t.c);
        }
        if (lhs != rhs) {
          ok = false;
          wit = "a=" + std::to_string(a) + " h=" + std::to_string(hi);
        }
      }
    rep.add("equivariance", ok, wit);
  }
  return rep;
}

ModuleAlgebra braided_tensor(const ModuleAlgebra& A1, const ModuleAlgebra& A2) {
  if (A1.H != A2.H) throw Error("braided_tensor: mismatched parent H");
  const HopfAlgebra& H = *A1.H;
  if (!H.ribbon || H.ribbon->R.empty())
    throw Error("braided_tensor: R-matrix required");
  const int d1 = A1.dim, d2 = A2.dim, d = d1 * d2;
  ModuleAlgebra A;
  A.H = A1.H;
  A.dim = d;
  A.unit = vec_zero(d);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) {
      Cyc c = A1.unit[i] * A2.unit[j];
      if (!c.is_zero()) A.unit[i * d2 + j] = c;
    }
  A.mult.assign(d, std::vector<SparseVec>(d));
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2) {
          Vec out = vec_zero(d);
          for (const auto& [r1, r2] : H.ribbon->R) {
            Vec left = A1.mul(vec_unit(d1, i1),
                              A1.act(vec_unit(d1, j1), r1));
            Vec right = A2.mul(A2.act(vec_unit(d2, i2), r2),
                               vec_unit(d2, j2));
            for (int o1 = 0; o1 < d1; ++o1) {
              if (left[o1].is_zero()) continue;
              for (int o2 = 0; o2 < d2; ++o2)
                if (!right[o2].is_zero())
                  out[o1 * d2 + o2] += left[o1] * right[o2];
            }
          }
          A.mult[i1 * d2 + i2][j1 * d2 + j2] = sparsify(out);
        }
  A.h_action.reserve(H.dim);
  for (int hi = 0; hi < H.dim; ++hi) {
    Mat m(d, d);
    for (const CoTerm& t : H.comult_table[hi])
      m = m + kron(A1.h_action[t.j], A2.h_action[t.k]).scaled(t.c);
    A.h_action.push_back(std::move(m));
  }
  return A;
}

EquivariantModule braided_external(const EquivariantModule& M1,
                                   const EquivariantModule& M2,
                                   const ModuleAlgebra& A12) {
  const ModuleAlgebra& A1 = *M1.A;
  const ModuleAlgebra& A2 = *M2.A;
  if (A1.H != A2.H) throw Error("braided_external: mismatched parent H");
  const HopfAlgebra& H = *A1.H;
  if (A12.dim != A1.dim * A2.dim)
    throw Error("braided_external: wrong product algebra");
  EquivariantModule M;
  M.A = &A12;
  M.dim = M1.dim * M2.dim;
  // (a1 (x) a2) . (v1 (x) v2) = a1.(v1 <| R1) (x) (a2 <| R2).v2
  M.rho.reserve(A12.dim);
  for (int a1 = 0; a1 < A1.dim; ++a1)
    for (int a2 = 0; a2 < A2.dim; ++a2) {
      Mat m(M.dim, M.dim);
      for (const auto& [r1, r2] : H.ribbon->R) {
        Mat left = M1.rho[a1] * M1.h_act_matrix(r1);
        Mat right = M2.a_act_matrix(A2.act(vec_unit(A2.dim, a2), r2));
        m = m + kron(left, right);
      }
      M.rho.push_back(std::move(m));
    }
  M.D.reserve(H.dim);
  for (int hi = 0; hi < H.dim; ++hi) {
    Mat m(M.dim, M.dim);
    for (const CoTerm& t : H.comult_table[hi])
      m = m + kron(M1.D[t.j], M2.D[t.k]).scaled(t.c);
    M.D.push_back(std::move(m));
  }
  return M;
}

std::vector<Vec> invariant_subspace(const HopfAlgebra& H,
                                    const std::vector<Mat>& action,
                                    bool use_generators) {
  const int d = action.empty() ? 0 : action[0].rows;
  std::vector<Vec> gens;
  if (use_generators && !H.designated_generators.empty())
    gens = H.designated_generators;
  else
    for (int i = 0; i < H.dim; ++i) gens.push_back(vec_unit(H.dim, i));
  std::vector<Vec> rows;
  for (const Vec& g : gens) {
    Mat m(d, d);
    for (int i = 0; i < H.dim; ++i)
      if (!g[i].is_zero()) m = m + action[i].scaled(g[i]);
    Cyc e = H.counit_of(g);
    for (int r = 0; r < d; ++r) {
      Vec row = vec_zero(d);
      for (int c = 0; c < d; ++c) row[c] = m.at(r, c);
      row[r] -= e;
      if (!vec_is_zero(row)) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < d; ++i) all.push_back(vec_unit(d, i));
    return all;
  }
  return kernel_basis(Mat::from_rows(rows));
}

ModuleAlgebra adjoint_module_algebra(const HopfAlgebra& H) {
  ModuleAlgebra A;
  A.H = &H;
  A.dim = H.dim;
  A.mult = H.mult_table;
  A.unit = H.unit;
  A.h_action.reserve(H.dim);
  for (int hi = 0; hi < H.dim; ++hi) {
    Mat m(H.dim, H.dim);
    for (const CoTerm& t : H.comult_table[hi]) {
      Mat L = H.left_mult_matrix(H.apply_antipode(vec_unit(H.dim, t.j)));
      Mat R = H.right_mult_matrix(vec_unit(H.dim, t.k));
      m = m + (L * R).scaled(t.c);
    }
    A.h_action.push_back(std::move(m));
  }
  return A;
}

TensorRank braided_coproduct(const HopfAlgebra& H, const Vec& h) {
  if (!H.ribbon || H.ribbon->R.empty())
    throw Error("braided_coproduct: R-matrix required");
  TensorRank out;
  for (const CoTerm& t : H.comult(h)) {
    for (const auto& [r1, r2] : H.ribbon->R) {
      // ad^r(r1)(e_j) = S(r1_(1)) e_j r1_(2)
      Vec left = vec_zero(H.dim);
      for (const CoTerm& r : H.comult(r1)) {
        Vec x = H.mul_vec_basis(H.apply_antipode(vec_unit(H.dim, r.j)), t.j);
        axpy(left, r.c, H.mul(x, vec_unit(H.dim, r.k)));
      }
      if (vec_is_zero(left)) continue;
      Vec right = H.mul(H.apply_antipode(r2), vec_unit(H.dim, t.k));
      if (vec_is_zero(right)) continue;
      for (auto& c : left) c = c * t.c;
      out.push_back({std::move(left), std::move(right)});
    }
  }
  return out;
}

Vec QuantumMomentMap::apply(const Vec& h) const {
  Vec out = vec_zero(A->dim);
  for (size_t i = 0; i < h.size(); ++i)
    if (!h[i].is_zero()) axpy(out, h[i], mu[i]);
  return out;
}

VerificationReport qmm_verify(const QuantumMomentMap& m) {
  VerificationReport rep;
  const ModuleAlgebra& A = *m.A;
  const HopfAlgebra& H = *A.H;
  rep.add("mu(1) = 1", m.apply(H.unit) == A.unit);
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < H.dim && ok; ++i)
      for (int j = 0; j < H.dim && ok; ++j) {
        Vec lhs = vec_zero(A.dim);
        for (const auto& [o, s] : H.mult_table[i][j].terms)
          axpy(lhs, s, m.mu[o]);
        Vec rhs = A.mul(m.mu[i], m.mu[j]);
        if (lhs != rhs) {
          ok = false;
          wit = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    rep.add("mu is an algebra morphism", ok, wit);
  }
  {
    // a mu(h) = mu(h_(1)) (a <| h_(2))
    bool ok = true;
    std::string wit;
    for (int hi = 0; hi < H.dim && ok; ++hi)
      for (int a = 0; a < A.dim && ok; ++a) {
        Vec lhs = A.mul(vec_unit(A.dim, a), m.mu[hi]);
        Vec rhs = vec_zero(A.dim);
        for (const CoTerm& t : H.comult_table[hi]) {
          Vec ah = mat_vec(A.h_action[t.k], vec_unit(A.dim, a));
          axpy(rhs, t.c, A.mul(m.mu[t.j], ah));
        }
        if (lhs != rhs) {
          ok = false;
          wit = "a=" + std::to_string(a) + " h=" + std::to_string(hi);
        }
      }
    rep.add("moment map exchange law", ok, wit);
  }
  {
    // a <| h = mu(S(h_(1))) a mu(h_(2))
    bool ok = true;
    std::string wit;
    for (int hi = 0; hi < H.dim && ok; ++hi)
      for (int a = 0; a < A.dim && ok; ++a) {
        Vec lhs = mat_vec(A.h_action[hi], vec_unit(A.dim, a));
        Vec rhs = vec_zero(A.dim);
        for (const CoTerm& t : H.comult_table[hi]) {
          Vec l = m.apply(H.apply_antipode(vec_unit(H.dim, t.j)));
          axpy(rhs, t.c, A.mul(A.mul(l, vec_unit(A.dim, a)), m.mu[t.k]));
        }
        if (lhs != rhs) {
          ok = false;
          wit = "a=" + std::to_string(a) + " h=" + std::to_string(hi);
        }
      }
    rep.add("action is inner through mu", ok, wit);
  }
  return rep;
}

QuantumMomentMap qmm_fuse(const QuantumMomentMap& m1,
                          const QuantumMomentMap& m2,
                          const ModuleAlgebra& A12) {
  const ModuleAlgebra& A1 = *m1.A;
  const ModuleAlgebra& A2 = *m2.A;
  const HopfAlgebra& H = *A1.H;
  if (A12.dim != A1.dim * A2.dim) throw Error("qmm_fuse: wrong product algebra");
  QuantumMomentMap m;
  m.A = &A12;
  m.mu.reserve(H.dim);
  for (int hi = 0; hi < H.dim; ++hi) {
    Vec out = vec_zero(A12.dim);
    for (const auto& [x, y] : braided_coproduct(H, vec_unit(H.dim, hi))) {
      Vec l = m1.apply(x);
      Vec r = m2.apply(y);
      for (int o1 = 0; o1 < A1.dim; ++o1) {
        if (l[o1].is_zero()) continue;
        for (int o2 = 0; o2 < A2.dim; ++o2)
          if (!r[o2].is_zero()) out[o1 * A2.dim + o2] += l[o1] * r[o2];
      }
    }
    m.mu.push_back(std::move(out));
  }
  return m;
}

EquivariantModule qmm_equivariant(const std::vector<Mat>& rho, int dim,
                                  const QuantumMomentMap& m) {
  const ModuleAlgebra& A = *m.A;
  const HopfAlgebra& H = *A.H;
  EquivariantModule M;
  M.A = m.A;
  M.dim = dim;
  M.rho = rho;
  M.D.reserve(H.dim);
  for (int hi = 0; hi < H.dim; ++hi) {
    Vec ms = m.apply(H.apply_antipode(vec_unit(H.dim, hi)));
    Mat d(dim, dim);
    for (int a = 0; a < A.dim; ++a)
      if (!ms[a].is_zero()) d = d + rho[a].scaled(ms[a]);
    M.D.push_back(std::move(d));
  }
  return M;
}

}  // namespace forge
