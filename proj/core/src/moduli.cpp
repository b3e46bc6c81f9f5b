#include "forge/moduli.hpp"

#include <algorithm>

namespace forge {

namespace {

const TensorRank& r_matrix(const HopfAlgebra& H) {
  if (!H.ribbon || H.ribbon->R.empty())
    throw Error("moduli: instance carries no R-matrix");
  return H.ribbon->R;
}

SparseVec sparsify(const Vec& v) {
  SparseVec s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) s.terms.push_back({i, v[i]});
  return s;
}

// coadjoint action of an arbitrary element, as a matrix on dual coordinates
Mat elem_coad(const BraidedDual& L, const Vec& x) {
  Mat acc(L.dim, L.dim);
  for (int k = 0; k < L.dim; ++k)
    if (!x[k].is_zero()) acc = acc + L.coad[k].scaled(x[k]);
  return acc;
}

LoopEmbeddingLabel slot_label(int g, int slot) {
  LoopEmbeddingLabel lab;
  if (slot < 2 * g) {
    lab.kind = slot % 2 ? LoopEmbeddingLabel::A : LoopEmbeddingLabel::B;
    lab.index = slot / 2 + 1;
  } else {
    lab.kind = LoopEmbeddingLabel::M;
    lab.index = slot - g + 1;
  }
  return lab;
}

}  // namespace

Vec l01_mul(const HopfAlgebra& H, const Vec& x, const Vec& y) {
  const TensorRank& R = r_matrix(H);
  Vec out = vec_zero(H.dim);
  for (const auto& [a1, b1] : R) {
    Vec sb1 = H.apply_antipode(b1);
    Vec yr = H.coreg_right(y, a1);
    for (const auto& [a2, b2] : R) {
      Vec left = H.coreg_left(H.mul(b2, sb1), x);
      if (vec_is_zero(left)) continue;
      Vec right = H.coreg_left(a2, yr);
      out += H.star(left, right);
    }
  }
  return out;
}

Vec l01_coad(const HopfAlgebra& H, const Vec& h, const Vec& x) {
  Vec out = vec_zero(H.dim);
  for (const auto& t : H.comult(h)) {
    Vec s2 = H.apply_antipode(vec_unit(H.dim, t.k));
    Vec w = H.coreg_left(s2, H.coreg_right(x, vec_unit(H.dim, t.j)));
    axpy(out, t.c, w);
  }
  return out;
}

Vec l01_antipode(const HopfAlgebra& H, const Vec& x) {
  const TensorRank& R = r_matrix(H);
  const Vec& uinv = H.ribbon->u_inv;
  Vec out = vec_zero(H.dim);
  std::vector<Vec> s_col(H.dim);
  for (int y = 0; y < H.dim; ++y)
    s_col[y] = H.apply_antipode(vec_unit(H.dim, y));
  for (const auto& [a, b] : R) {
    Vec front = H.mul(b, uinv);
    Vec sa = H.apply_antipode(a);
    for (int y = 0; y < H.dim; ++y)
      out[y] += H.dual_eval(x, H.mul(H.mul(front, s_col[y]), sa));
  }
  return out;
}

Vec phi01(const HopfAlgebra& H, const Vec& x) {
  const TensorRank& R = r_matrix(H);
  Vec out = vec_zero(H.dim);
  for (const auto& [a1, b1] : R)
    for (const auto& [a2, b2] : R) {
      Cyc c = H.dual_eval(x, H.mul(a1, b2));
      if (!c.is_zero()) axpy(out, c, H.mul(b1, a2));
    }
  return out;
}

Vec phi01_inverse(const BraidedDual& L, const Vec& h) {
  if (!L.rsd_inv) throw Error("phi01_inverse: the map is singular here");
  return mat_vec(*L.rsd_inv, h);
}

BraidedDual build_braided_dual(const HopfAlgebra& H) {
  const TensorRank& R = r_matrix(H);
  const int d = H.dim;
  const int r = static_cast<int>(R.size());
  BraidedDual L;
  L.H = &H;
  L.dim = d;
  L.unit = H.counit_functional();

  // product table; both R-sandwich transforms of the basis are hoisted
  std::vector<Vec> sb(r);
  for (int s = 0; s < r; ++s) sb[s] = H.apply_antipode(R[s].second);
  std::vector<std::vector<std::vector<Vec>>> lf(r), rf(r);
  for (int t = 0; t < r; ++t) {
    lf[t].resize(r);
    rf[t].resize(r);
    for (int s = 0; s < r; ++s) {
      Vec hl = H.mul(R[t].second, sb[s]);
      lf[t][s].resize(d);
      rf[t][s].resize(d);
      for (int i = 0; i < d; ++i) {
        lf[t][s][i] = H.coreg_left(hl, vec_unit(d, i));
        rf[t][s][i] =
            H.coreg_left(R[t].first, H.coreg_right(vec_unit(d, i), R[s].first));
      }
    }
  }
  L.mul_table.assign(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec acc = vec_zero(d);
      for (int t = 0; t < r; ++t)
        for (int s = 0; s < r; ++s) {
          if (vec_is_zero(lf[t][s][i])) continue;
          acc += H.star(lf[t][s][i], rf[t][s][j]);
        }
      L.mul_table[i][j] = std::move(acc);
    }

  L.coad.reserve(d);
  for (int k = 0; k < d; ++k) {
    std::vector<std::pair<Vec, Vec>> legs;  // (e_j as vector, S(e_k'))
    for (const auto& t : H.comult_table[k])
      legs.push_back({vec_unit(d, t.j), H.apply_antipode(vec_unit(d, t.k))});
    std::vector<Vec> cols(d);
    for (int i = 0; i < d; ++i) {
      Vec acc = vec_zero(d);
      int li = 0;
      for (const auto& t : H.comult_table[k]) {
        Vec w = H.coreg_left(legs[li].second,
                             H.coreg_right(vec_unit(d, i), legs[li].first));
        axpy(acc, t.c, w);
        ++li;
      }
      cols[i] = std::move(acc);
    }
    L.coad.push_back(Mat::from_columns(d, cols));
  }

  {
    const Vec& uinv = H.ribbon->u_inv;
    std::vector<Vec> s_col(d);
    for (int y = 0; y < d; ++y) s_col[y] = H.apply_antipode(vec_unit(d, y));
    std::vector<Vec> acols(d, vec_zero(d));
    for (const auto& [a, b] : R) {
      Vec front = H.mul(b, uinv);
      Vec sa = H.apply_antipode(a);
      for (int y = 0; y < d; ++y) {
        Vec m = H.mul(H.mul(front, s_col[y]), sa);
        for (int i = 0; i < d; ++i)
          if (!m[i].is_zero()) acols[i][y] += m[i];
      }
    }
    L.antipode = Mat::from_columns(d, acols);
  }

  {
    std::vector<Vec> pcols(d, vec_zero(d));
    for (const auto& [a1, b1] : R)
      for (const auto& [a2, b2] : R) {
        Vec p = H.mul(a1, b2);
        Vec q = H.mul(b1, a2);
        for (int j = 0; j < d; ++j)
          if (!p[j].is_zero()) axpy(pcols[j], p[j], q);
      }
    L.rsd = Mat::from_columns(d, pcols);
    L.rsd_inv = inverse(L.rsd);
  }

  L.dual_co.resize(d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (const auto& t : H.mult_table[j][k].terms)
        L.dual_co[t.first].push_back({j, k, t.second});

  return L;
}

Vec BraidedDual::mul(const Vec& x, const Vec& y) const {
  Vec out = vec_zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      axpy(out, x[i] * y[j], mul_table[i][j]);
    }
  }
  return out;
}

Vec BraidedDual::coad_apply(const Vec& h, const Vec& x) const {
  Vec out = vec_zero(dim);
  for (int k = 0; k < dim; ++k) {
    if (h[k].is_zero()) continue;
    axpy(out, h[k], mat_vec(coad[k], x));
  }
  return out;
}

Vec BraidedDual::antipode_apply(const Vec& x) const {
  return mat_vec(antipode, x);
}

SweedlerList BraidedDual::dual_legs(const Vec& phi, int legs) const {
  if (legs < 1) throw Error("dual_legs: need at least one leg");
  std::map<std::vector<int>, Cyc> acc;
  for (int i = 0; i < dim; ++i)
    if (!phi[i].is_zero()) acc[{i}] = phi[i];
  for (int step = 1; step < legs; ++step) {
    std::map<std::vector<int>, Cyc> next;
    for (const auto& [idx, c] : acc) {
      for (const auto& [j, k, w] : dual_co[idx.back()]) {
        std::vector<int> nidx = idx;
        nidx.back() = j;
        nidx.push_back(k);
        next[nidx] += c * w;
      }
    }
    acc.swap(next);
  }
  SweedlerList out;
  for (auto& [idx, c] : acc)
    if (!c.is_zero()) out.push_back({idx, c});
  return out;
}

bool BraidedDual::is_invariant(const Vec& x) const {
  for (int k = 0; k < dim; ++k) {
    Vec lhs = mat_vec(coad[k], x);
    const Cyc& e = H->counit[k];
    for (int y = 0; y < dim; ++y)
      if (lhs[y] != e * x[y]) return false;
  }
  return true;
}

ModuleAlgebra l01_module_algebra(const BraidedDual& L) {
  ModuleAlgebra A;
  A.H = L.H;
  A.dim = L.dim;
  A.unit = L.unit;
  A.h_action = L.coad;
  A.mult.assign(L.dim, std::vector<SparseVec>(L.dim));
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j) A.mult[i][j] = sparsify(L.mul_table[i][j]);
  return A;
}

Vec qtrace(const HopfAlgebra& H, const HModule& X, bool use_pivot) {
  if (!H.ribbon) throw Error("qtrace: instance carries no ribbon data");
  const Vec& w = use_pivot ? H.ribbon->pivot_g : H.ribbon->u;
  Mat W = X.act_matrix(w);
  Vec out = vec_zero(H.dim);
  for (int i = 0; i < H.dim; ++i) out[i] = (W * X.action[i]).trace();
  for (int k = 0; k < H.dim; ++k) {
    Vec lhs = l01_coad(H, vec_unit(H.dim, k), out);
    for (int y = 0; y < H.dim; ++y)
      if (lhs[y] != H.counit[k] * out[y])
        throw Error("qtrace: trace functional is not coadjoint invariant");
  }
  return out;
}

// ---- surface algebras ----

void LgnElement::add(const std::vector<int>& idx, const Cyc& c) {
  if (c.is_zero()) return;
  auto it = terms.find(idx);
  if (it == terms.end()) {
    terms.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

LgnElement& LgnElement::operator+=(const LgnElement& o) {
  for (const auto& [idx, c] : o.terms) add(idx, c);
  return *this;
}

LgnElement LgnElement::scaled(const Cyc& c) const {
  LgnElement out;
  out.g = g;
  out.n = n;
  if (c.is_zero()) return out;
  for (const auto& [idx, w] : terms) out.add(idx, c * w);
  return out;
}

bool LgnElement::operator==(const LgnElement& o) const {
  return g == o.g && n == o.n && terms == o.terms;
}

Vec LgnElement::dense(int dual_dim) const {
  long total = 1;
  for (int s = 0; s < slots(); ++s) total *= dual_dim;
  Vec out = vec_zero(static_cast<int>(total));
  for (const auto& [idx, c] : terms) {
    long pos = 0;
    for (int v : idx) pos = pos * dual_dim + v;
    out[pos] = c;
  }
  return out;
}

LgnElement lgn_tensor(const LgnElement& x, const LgnElement& y) {
  LgnElement out;
  out.g = x.g + y.g;
  out.n = x.n + y.n;
  for (const auto& [xi, xc] : x.terms)
    for (const auto& [yi, yc] : y.terms) {
      std::vector<int> idx;
      idx.reserve(out.slots());
      idx.insert(idx.end(), xi.begin(), xi.begin() + 2 * x.g);
      idx.insert(idx.end(), yi.begin(), yi.begin() + 2 * y.g);
      idx.insert(idx.end(), xi.begin() + 2 * x.g, xi.end());
      idx.insert(idx.end(), yi.begin() + 2 * y.g, yi.end());
      out.add(idx, xc * yc);
    }
  return out;
}

LgnAlgebra::LgnAlgebra(const BraidedDual& L, int g, int n)
    : L_(&L), g_(g), n_(n) {
  if (g < 0 || n < 0 || g + n == 0)
    throw Error("surface algebra needs g >= 0, n >= 0, g + n > 0");
  const int d = L.dim;
  t10_.cell.assign(d, std::vector<std::vector<std::tuple<int, int, Cyc>>>(d));
  t10_.built.assign(d, std::vector<char>(d, 0));
  tx_.cell.assign(d, std::vector<std::vector<std::tuple<int, int, Cyc>>>(d));
  tx_.built.assign(d, std::vector<char>(d, 0));
}

LgnAlgebra::~LgnAlgebra() = default;

int LgnAlgebra::loop_index(int slot) const {
  return slot < 2 * g_ ? slot / 2 + 1 : slot - g_ + 1;
}

int LgnAlgebra::slot_of(const LoopEmbeddingLabel& lab) const {
  if (lab.kind == LoopEmbeddingLabel::M) {
    int j = lab.index - g_;
    if (j < 1 || j > n_) throw Error("loop label out of range");
    return 2 * g_ + j - 1;
  }
  if (lab.index < 1 || lab.index > g_) throw Error("loop label out of range");
  return 2 * (lab.index - 1) + (lab.kind == LoopEmbeddingLabel::A ? 1 : 0);
}

const std::vector<std::tuple<int, int, Cyc>>& LgnAlgebra::tx(int i,
                                                             int j) const {
  std::lock_guard<std::recursive_mutex> lk(lock_);
  if (!cross_ready_) {
    const TensorRank& R = r_matrix(*L_->H);
    cross_ops_.clear();
    cross_ops_.reserve(R.size());
    for (const auto& [a, b] : R)
      cross_ops_.push_back({elem_coad(*L_, a), elem_coad(*L_, b)});
    cross_ready_ = true;
  }
  if (!tx_.built[i][j]) {
    std::map<std::pair<int, int>, Cyc> acc;
    for (const auto& [ma, mb] : cross_ops_) {
      Vec va = ma.column(j);
      Vec vb = mb.column(i);
      for (int k = 0; k < L_->dim; ++k) {
        if (va[k].is_zero()) continue;
        for (int l = 0; l < L_->dim; ++l) {
          if (vb[l].is_zero()) continue;
          acc[{k, l}] += va[k] * vb[l];
        }
      }
    }
    auto& cell = tx_.cell[i][j];
    for (auto& [kl, c] : acc)
      if (!c.is_zero()) cell.push_back({kl.first, kl.second, c});
    tx_.built[i][j] = 1;
  }
  return tx_.cell[i][j];
}

const std::vector<std::tuple<int, int, Cyc>>& LgnAlgebra::t10(int i,
                                                              int j) const {
  std::lock_guard<std::recursive_mutex> lk(lock_);
  if (!handle_ready_) {
    const HopfAlgebra& H = *L_->H;
    const TensorRank& R = r_matrix(H);
    const int d = L_->dim;
    const int r = static_cast<int>(R.size());
    for (int t1 = 0; t1 < r; ++t1) {
      Vec sb1 = H.apply_antipode(R[t1].second);
      for (int t2 = 0; t2 < r; ++t2) {
        Vec wb = H.mul(R[t1].first, R[t2].first);
        for (int t3 = 0; t3 < r; ++t3) {
          Vec ua = H.mul(R[t3].second, sb1);
          for (int t4 = 0; t4 < r; ++t4) {
            Vec ub = H.mul(R[t4].second, R[t3].first);
            Vec wa = H.mul(R[t2].second, R[t4].first);
            if (vec_is_zero(ub) || vec_is_zero(wb) || vec_is_zero(ua) ||
                vec_is_zero(wa))
              continue;
            std::vector<Vec> bcols(d), acols(d);
            for (int y = 0; y < d; ++y) {
              bcols[y] = H.coreg_left(ub, H.coreg_right(vec_unit(d, y), wb));
              acols[y] = H.coreg_left(ua, H.coreg_right(vec_unit(d, y), wa));
            }
            Mat mb = Mat::from_columns(d, bcols);
            Mat ma = Mat::from_columns(d, acols);
            if (mb.is_zero() || ma.is_zero()) continue;
            handle_ops_.push_back({mb, ma});
          }
        }
      }
    }
    handle_ready_ = true;
  }
  if (!t10_.built[i][j]) {
    std::map<std::pair<int, int>, Cyc> acc;
    for (const auto& [mb, ma] : handle_ops_) {
      Vec vb = mb.column(j);
      Vec va = ma.column(i);
      for (int k = 0; k < L_->dim; ++k) {
        if (vb[k].is_zero()) continue;
        for (int l = 0; l < L_->dim; ++l) {
          if (va[l].is_zero()) continue;
          acc[{k, l}] += vb[k] * va[l];
        }
      }
    }
    auto& cell = t10_.cell[i][j];
    for (auto& [kl, c] : acc)
      if (!c.is_zero()) cell.push_back({kl.first, kl.second, c});
    t10_.built[i][j] = 1;
  }
  return t10_.cell[i][j];
}

LgnAlgebra::WordMap LgnAlgebra::normalize(WordMap&& pending) const {
  WordMap done;
  while (!pending.empty()) {
    auto it = pending.begin();
    Word w = it->first;
    Cyc c = it->second;
    pending.erase(it);
    if (c.is_zero()) continue;
    size_t p = 0;
    int mode = 0;  // 1 merge, 2 one-handle exchange, 3 cross exchange
    for (; p + 1 < w.size(); ++p) {
      if (w[p].first == w[p + 1].first) {
        mode = 1;
        break;
      }
      if (w[p].first > w[p + 1].first) {
        mode = loop_index(w[p].first) == loop_index(w[p + 1].first) ? 2 : 3;
        break;
      }
    }
    if (mode == 0) {
      done[w] += c;
      continue;
    }
    if (mode == 1) {
      const Vec& v = L_->mul_table[w[p].second][w[p + 1].second];
      Word nw = w;
      nw.erase(nw.begin() + p + 1);
      for (int k = 0; k < L_->dim; ++k) {
        if (v[k].is_zero()) continue;
        nw[p].second = k;
        pending[nw] += c * v[k];
      }
    } else {
      const auto& cell = mode == 2 ? t10(w[p].second, w[p + 1].second)
                                   : tx(w[p].second, w[p + 1].second);
      const int hi = w[p].first;
      const int lo = w[p + 1].first;
      Word nw = w;
      for (const auto& [k, l, cc] : cell) {
        nw[p] = {lo, k};
        nw[p + 1] = {hi, l};
        pending[nw] += c * cc;
      }
    }
  }
  return done;
}

LgnAlgebra::WordMap LgnAlgebra::mul_words(const WordMap& x,
                                          const WordMap& y) const {
  WordMap pending;
  for (const auto& [wx, cx] : x)
    for (const auto& [wy, cy] : y) {
      Word w = wx;
      w.insert(w.end(), wy.begin(), wy.end());
      pending[w] += cx * cy;
    }
  return normalize(std::move(pending));
}

void LgnAlgebra::pad(const Word& w, const Cyc& c, LgnElement& out) const {
  const int m = slots();
  const Vec& e = L_->unit;
  std::vector<int> idx(m, 0);
  auto rec = [&](auto&& self, int s, size_t wi, const Cyc& acc) -> void {
    if (s == m) {
      out.add(idx, acc);
      return;
    }
    if (wi < w.size() && w[wi].first == s) {
      idx[s] = w[wi].second;
      self(self, s + 1, wi + 1, acc);
      return;
    }
    for (int t = 0; t < L_->dim; ++t) {
      if (e[t].is_zero()) continue;
      idx[s] = t;
      self(self, s + 1, wi, acc * e[t]);
    }
  };
  rec(rec, 0, 0, c);
}

LgnElement LgnAlgebra::finish(const WordMap& words) const {
  LgnElement out;
  out.g = g_;
  out.n = n_;
  for (const auto& [w, c] : words)
    if (!c.is_zero()) pad(w, c, out);
  return out;
}

LgnElement LgnAlgebra::zero() const {
  LgnElement out;
  out.g = g_;
  out.n = n_;
  return out;
}

LgnElement LgnAlgebra::one() const {
  WordMap w;
  w[Word{}] = hopf().scalar_one();
  return finish(w);
}

LgnElement LgnAlgebra::embed(const LoopEmbeddingLabel& lab,
                             const Vec& phi) const {
  Vec p = phi;
  if (lab.sign < 0) p = L_->antipode_apply(p);
  const int s = slot_of(lab);
  LgnElement out = zero();
  for (int i = 0; i < L_->dim; ++i)
    if (!p[i].is_zero()) pad(Word{{s, i}}, p[i], out);
  return out;
}

LgnElement LgnAlgebra::mul(const LgnElement& x, const LgnElement& y) const {
  const int m = slots();
  WordMap pending;
  for (const auto& [xi, xc] : x.terms) {
    if (static_cast<int>(xi.size()) != m) throw Error("malformed element");
    for (const auto& [yi, yc] : y.terms) {
      if (static_cast<int>(yi.size()) != m) throw Error("malformed element");
      Word w;
      w.reserve(2 * m);
      for (int s = 0; s < m; ++s) w.push_back({s, xi[s]});
      for (int s = 0; s < m; ++s) w.push_back({s, yi[s]});
      pending[w] += xc * yc;
    }
  }
  return finish(normalize(std::move(pending)));
}

LgnElement LgnAlgebra::from_word(
    const std::vector<std::pair<int, Vec>>& factors) const {
  WordMap pending;
  Word w;
  auto rec = [&](auto&& self, size_t f, const Cyc& acc) -> void {
    if (f == factors.size()) {
      pending[w] += acc;
      return;
    }
    const auto& [slot, v] = factors[f];
    for (int i = 0; i < L_->dim; ++i) {
      if (v[i].is_zero()) continue;
      w.push_back({slot, i});
      self(self, f + 1, acc * v[i]);
      w.pop_back();
    }
  };
  rec(rec, 0, hopf().scalar_one());
  return finish(normalize(std::move(pending)));
}

LgnElement LgnAlgebra::coad(const Vec& h, const LgnElement& x) const {
  const int m = slots();
  const HopfAlgebra& H = hopf();
  LgnElement out = zero();
  std::vector<int> idx(m, 0);
  for (int i = 0; i < H.dim; ++i) {
    if (h[i].is_zero()) continue;
    for (const auto& st : H.sweedler(i, m - 1)) {
      Cyc w0 = h[i] * st.c;
      if (w0.is_zero()) continue;
      for (const auto& [ix, cx] : x.terms) {
        auto rec = [&](auto&& self, int s, const Cyc& acc) -> void {
          if (s == m) {
            out.add(idx, acc);
            return;
          }
          const Mat& M = L_->coad[st.idx[s]];
          for (int t = 0; t < L_->dim; ++t) {
            const Cyc& mc = M.at(t, ix[s]);
            if (mc.is_zero()) continue;
            idx[s] = t;
            self(self, s + 1, acc * mc);
          }
        };
        rec(rec, 0, w0 * cx);
      }
    }
  }
  return out;
}

Mat LgnAlgebra::coad_matrix(const Vec& h) const {
  const int m = slots();
  const HopfAlgebra& H = hopf();
  long dm = 1;
  for (int s = 0; s < m; ++s) dm *= L_->dim;
  Mat acc(static_cast<int>(dm), static_cast<int>(dm));
  for (int i = 0; i < H.dim; ++i) {
    if (h[i].is_zero()) continue;
    for (const auto& st : H.sweedler(i, m - 1)) {
      Mat k = L_->coad[st.idx[0]];
      for (int s = 1; s < m; ++s) k = kron(k, L_->coad[st.idx[s]]);
      acc = acc + k.scaled(h[i] * st.c);
    }
  }
  return acc;
}

std::vector<LgnElement> LgnAlgebra::invariants() const {
  const HopfAlgebra& H = hopf();
  std::vector<Vec> gens = H.designated_generators;
  if (gens.empty())
    for (int i = 0; i < H.dim; ++i) gens.push_back(vec_unit(H.dim, i));
  long dm = 1;
  for (int s = 0; s < slots(); ++s) dm *= L_->dim;
  std::vector<Vec> rows;
  for (const Vec& gen : gens) {
    Mat M = coad_matrix(gen);
    Cyc e = H.counit_of(gen);
    for (int r = 0; r < M.rows; ++r) {
      Vec row = M.row(r);
      row[r] -= e;
      if (!vec_is_zero(row)) rows.push_back(std::move(row));
    }
  }
  std::vector<Vec> ker;
  if (rows.empty()) {
    for (long i = 0; i < dm; ++i)
      ker.push_back(vec_unit(static_cast<int>(dm), static_cast<int>(i)));
  } else {
    ker = kernel_basis(Mat::from_rows(rows));
  }
  std::vector<LgnElement> out;
  out.reserve(ker.size());
  for (const Vec& v : ker) {
    LgnElement x = zero();
    for (long pos = 0; pos < dm; ++pos) {
      if (v[pos].is_zero()) continue;
      std::vector<int> idx(slots());
      long rest = pos;
      for (int s = slots() - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(rest % L_->dim);
        rest /= L_->dim;
      }
      x.add(idx, v[pos]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

const std::vector<LgnElement>& LgnAlgebra::boundary_blocks() const {
  std::lock_guard<std::recursive_mutex> lk(lock_);
  if (!(g_ == 1 && n_ == 0)) {
    if (!block_) block_.reset(new LgnAlgebra(*L_, 1, 0));
    return block_->boundary_blocks();
  }
  if (!b10_.empty()) return b10_;
  const HopfAlgebra& H = hopf();
  if (!H.ribbon)
    throw Error("boundary embedding needs a ribbon or balancing element");
  const int d = L_->dim;
  const Cyc one = H.scalar_one();
  Vec v2 = H.mul(H.ribbon->v, H.ribbon->v);

  // the total boundary b1 a1^{-1} b1^{-1} a1 expands into nested slot
  // factors; levels are applied right to left, splitting one leg per step
  std::vector<WordMap> u(d);
  for (int k = 0; k < d; ++k) u[k][Word{{1, k}}] = one;

  struct Level {
    int slot;
    bool twist;
  };
  const Level levels[3] = {{0, true}, {1, true}, {0, false}};
  for (const Level& lv : levels) {
    std::vector<WordMap> next(d);
    for (int i = 0; i < d; ++i) {
      WordMap acc;
      for (const auto& [j, k, c] : L_->dual_co[i]) {
        WordMap f;
        if (lv.twist) {
          Vec sc = L_->antipode.column(j);
          for (int t = 0; t < d; ++t)
            if (!sc[t].is_zero()) f[Word{{lv.slot, t}}] = sc[t];
        } else {
          f[Word{{lv.slot, j}}] = one;
        }
        if (f.empty()) continue;
        WordMap prod = mul_words(f, u[k]);
        for (const auto& [w, cw] : prod) acc[w] += c * cw;
      }
      next[i] = std::move(acc);
    }
    u.swap(next);
  }
  b10_.resize(d);
  for (int i = 0; i < d; ++i) {
    WordMap acc;
    for (const auto& [j, k, c] : L_->dual_co[i]) {
      if (v2[j].is_zero()) continue;
      for (const auto& [w, cw] : u[k]) acc[w] += c * v2[j] * cw;
    }
    b10_[i] = finish(acc);
  }
  return b10_;
}

LgnElement LgnAlgebra::boundary_embed(const Vec& phi) const {
  const int blocks = g_ + n_;
  if (blocks == 1) {
    if (g_ == 1) {
      const auto& B = boundary_blocks();
      LgnElement out = zero();
      for (int i = 0; i < L_->dim; ++i)
        if (!phi[i].is_zero()) out += B[i].scaled(phi[i]);
      return out;
    }
    LoopEmbeddingLabel m1;
    m1.kind = LoopEmbeddingLabel::M;
    m1.index = 1;
    return embed(m1, phi);
  }
  const auto* B = g_ > 0 ? &boundary_blocks() : nullptr;
  const Cyc one = hopf().scalar_one();
  LgnElement out = zero();
  for (const auto& st : L_->dual_legs(phi, blocks)) {
    LgnElement acc;
    bool first = true;
    for (int b = 0; b < g_; ++b) {
      const LgnElement& blk = (*B)[st.idx[b]];
      acc = first ? blk : lgn_tensor(acc, blk);
      first = false;
    }
    for (int j = 0; j < n_; ++j) {
      LgnElement pj;
      pj.g = 0;
      pj.n = 1;
      pj.terms[{st.idx[g_ + j]}] = one;
      acc = first ? pj : lgn_tensor(acc, pj);
      first = false;
    }
    out += acc.scaled(st.c);
  }
  return out;
}

LgnAlgebra build_lgn(const BraidedDual& L, int g, int n) {
  return LgnAlgebra(L, g, n);
}

ModuleAlgebra lgn_module_algebra(const LgnAlgebra& A) {
  const int d = A.dual().dim;
  const int m = A.slots();
  long dm = 1;
  for (int s = 0; s < m; ++s) dm *= d;
  const int D = static_cast<int>(dm);
  ModuleAlgebra out;
  out.H = &A.hopf();
  out.dim = D;
  out.unit = A.one().dense(d);
  auto unrank = [&](long pos) {
    std::vector<int> idx(m);
    for (int s = m - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(pos % d);
      pos /= d;
    }
    return idx;
  };
  out.mult.assign(D, std::vector<SparseVec>(D));
  const Cyc one = A.hopf().scalar_one();
  for (int i = 0; i < D; ++i) {
    LgnElement xi = A.zero();
    xi.terms[unrank(i)] = one;
    for (int j = 0; j < D; ++j) {
      LgnElement xj = A.zero();
      xj.terms[unrank(j)] = one;
      out.mult[i][j] = sparsify(A.mul(xi, xj).dense(d));
    }
  }
  out.h_action.reserve(A.hopf().dim);
  for (int k = 0; k < A.hopf().dim; ++k)
    out.h_action.push_back(A.coad_matrix(vec_unit(A.hopf().dim, k)));
  return out;
}

LgnElement LgnMomentMap::apply(const Vec& h) const {
  LgnElement out;
  out.g = A->genus();
  out.n = A->punctures();
  for (int i = 0; i < A->hopf().dim; ++i)
    if (!h[i].is_zero()) out += mu[i].scaled(h[i]);
  return out;
}

LgnMomentMap moduli_qmm(const LgnAlgebra& A) {
  const BraidedDual& L = A.dual();
  if (!L.factorizable())
    throw Error("moduli_qmm: the instance is not factorizable");
  LgnMomentMap m;
  m.A = &A;
  m.mu.reserve(L.dim);
  for (int i = 0; i < L.dim; ++i)
    m.mu.push_back(
        A.boundary_embed(mat_vec(*L.rsd_inv, vec_unit(L.dim, i))));
  return m;
}

LgnMomentMap lgn_fused_qmm(const LgnAlgebra& A) {
  const int g = A.genus();
  const int n = A.punctures();
  const int blocks = g + n;
  if (blocks == 1) return moduli_qmm(A);
  const HopfAlgebra& H = A.hopf();
  const BraidedDual& L = A.dual();
  if (!L.factorizable())
    throw Error("moduli_qmm: the instance is not factorizable");

  std::unique_ptr<LgnAlgebra> A10;
  std::vector<LgnElement> mu10;
  if (g > 0) {
    A10.reset(new LgnAlgebra(L, 1, 0));
    mu10 = moduli_qmm(*A10).mu;
  }

  LgnMomentMap out;
  out.A = &A;
  out.mu.reserve(H.dim);
  for (int i = 0; i < H.dim; ++i) {
    std::vector<std::vector<Vec>> tuples = {{vec_unit(H.dim, i)}};
    for (int step = 1; step < blocks; ++step) {
      std::vector<std::vector<Vec>> next;
      for (const auto& tp : tuples)
        for (const auto& [x, y] : braided_coproduct(H, tp.back())) {
          auto t2 = tp;
          t2.back() = x;
          t2.push_back(y);
          next.push_back(std::move(t2));
        }
      tuples.swap(next);
    }
    LgnElement total;
    total.g = g;
    total.n = n;
    for (const auto& tp : tuples) {
      LgnElement acc;
      bool first = true;
      for (int b = 0; b < g; ++b) {
        LgnElement blk;
        blk.g = 1;
        blk.n = 0;
        for (int k = 0; k < H.dim; ++k)
          if (!tp[b][k].is_zero()) blk += mu10[k].scaled(tp[b][k]);
        acc = first ? blk : lgn_tensor(acc, blk);
        first = false;
      }
      for (int j = 0; j < n; ++j) {
        Vec w = mat_vec(*L.rsd_inv, tp[g + j]);
        LgnElement pj;
        pj.g = 0;
        pj.n = 1;
        for (int t = 0; t < L.dim; ++t)
          if (!w[t].is_zero()) pj.terms[{t}] = w[t];
        acc = first ? pj : lgn_tensor(acc, pj);
        first = false;
      }
      total += acc;
    }
    out.mu.push_back(std::move(total));
  }
  return out;
}

VerificationReport lgn_qmm_verify(const LgnMomentMap& m,
                                  bool generator_morphism,
                                  int inner_samples) {
  VerificationReport rep;
  const LgnAlgebra& A = *m.A;
  const HopfAlgebra& H = A.hopf();
  const int d = H.dim;

  rep.add("mu(1) = 1", m.apply(H.unit) == A.one());

  {
    bool ok = true;
    std::string witness;
    std::vector<Vec> lefts;
    if (generator_morphism && !H.designated_generators.empty())
      lefts = H.designated_generators;
    else
      for (int i = 0; i < d; ++i) lefts.push_back(vec_unit(d, i));
    for (size_t xi = 0; ok && xi < lefts.size(); ++xi) {
      LgnElement mx = m.apply(lefts[xi]);
      for (int j = 0; ok && j < d; ++j) {
        LgnElement lhs = A.mul(mx, m.mu[j]);
        LgnElement rhs = m.apply(H.mul_vec_basis(lefts[xi], j));
        if (lhs != rhs) {
          ok = false;
          witness = "left factor " + std::to_string(xi) + ", e_" +
                    std::to_string(j);
        }
      }
    }
    rep.add("mu is an algebra morphism", ok, witness);
  }

  std::vector<Vec> hs = H.designated_generators;
  if (hs.empty())
    for (int i = 0; i < d; ++i) hs.push_back(vec_unit(d, i));
  std::vector<LgnElement> gens;
  std::vector<std::string> gen_names;
  for (int s = 0; s < A.slots(); ++s) {
    LoopEmbeddingLabel lab = slot_label(A.genus(), s);
    for (int i = 0; i < A.dual().dim; ++i) {
      gens.push_back(A.embed(lab, vec_unit(A.dual().dim, i)));
      gen_names.push_back("slot " + std::to_string(s) + ", f^" +
                          std::to_string(i));
    }
  }

  {
    bool ok = true;
    std::string witness;
    for (size_t ai = 0; ok && ai < gens.size(); ++ai)
      for (size_t hi = 0; ok && hi < hs.size(); ++hi) {
        LgnElement lhs = A.mul(gens[ai], m.apply(hs[hi]));
        LgnElement rhs;
        rhs.g = A.genus();
        rhs.n = A.punctures();
        for (const auto& t : H.comult(hs[hi])) {
          LgnElement piece =
              A.mul(m.mu[t.j], A.coad(vec_unit(d, t.k), gens[ai]));
          rhs += piece.scaled(t.c);
        }
        if (lhs != rhs) {
          ok = false;
          witness = gen_names[ai] + " against generator " +
                    std::to_string(hi);
        }
      }
    rep.add("moment map exchange law", ok, witness);
  }

  {
    bool ok = true;
    std::string witness;
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t ai = 0; ai < gens.size(); ++ai)
      for (size_t hi = 0; hi < hs.size(); ++hi) pairs.push_back({ai, hi});
    if (inner_samples >= 0 &&
        static_cast<size_t>(inner_samples) < pairs.size()) {
      std::vector<std::pair<size_t, size_t>> picked;
      if (inner_samples > 0) {
        double stride = static_cast<double>(pairs.size()) / inner_samples;
        for (int k = 0; k < inner_samples; ++k)
          picked.push_back(pairs[static_cast<size_t>(k * stride)]);
      }
      pairs.swap(picked);
    }
    for (const auto& [ai, hi] : pairs) {
      LgnElement lhs = A.coad(hs[hi], gens[ai]);
      LgnElement rhs;
      rhs.g = A.genus();
      rhs.n = A.punctures();
      for (const auto& t : H.comult(hs[hi])) {
        LgnElement piece = A.mul(
            A.mul(m.apply(H.apply_antipode(vec_unit(d, t.j))), gens[ai]),
            m.mu[t.k]);
        rhs += piece.scaled(t.c);
      }
      if (lhs != rhs) {
        ok = false;
        witness = gen_names[ai] + " against generator " + std::to_string(hi);
        break;
      }
    }
    rep.add("action is inner through mu", ok, witness);
  }

  return rep;
}

}  // namespace forge
