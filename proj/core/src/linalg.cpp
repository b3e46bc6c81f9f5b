#include "forge/linalg.hpp"

#include <algorithm>

namespace forge {

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("vec add: size mismatch");
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("vec sub: size mismatch");
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec operator*(const Cyc& c, const Vec& v) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

Vec& operator+=(Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("vec add: size mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

void axpy(Vec& acc, const Cyc& c, const Vec& v) {
  if (acc.size() != v.size()) throw Error("axpy: size mismatch");
  if (c.is_zero()) return;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) acc[i] += c * v[i];
  }
}

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Cyc& c) { return c.is_zero(); });
}

Vec vec_zero(int n) { return Vec(static_cast<size_t>(n)); }

Vec vec_unit(int n, int i) {
  Vec v(static_cast<size_t>(n));
  v[static_cast<size_t>(i)] = Cyc::one();
  return v;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyc::one();
  return m;
}

Mat Mat::from_columns(int ambient, const std::vector<Vec>& cols) {
  Mat m(ambient, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j) {
    if (static_cast<int>(cols[j].size()) != ambient)
      throw Error("from_columns: ambient mismatch");
    for (int i = 0; i < ambient; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat();
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (rows[i].size() != rows[0].size())
      throw Error("from_rows: ragged rows");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(int i) const {
  Vec v(cols);
  for (int j = 0; j < cols; ++j) v[j] = at(i, j);
  return v;
}

Vec Mat::column(int j) const {
  Vec v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

Mat Mat::transpose() const {
  Mat m(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(a.begin(), a.end(),
                     [](const Cyc& c) { return c.is_zero(); });
}

Cyc Mat::trace() const {
  if (rows != cols) throw Error("trace: square matrix required");
  Cyc t;
  for (int i = 0; i < rows; ++i) t += at(i, i);
  return t;
}

Mat Mat::scaled(const Cyc& c) const {
  Mat m = *this;
  for (auto& x : m.a) x = c * x;
  return m;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw Error("mat mul: shape mismatch");
  Mat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      const Cyc& c = x.at(i, k);
      if (c.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (!y.at(k, j).is_zero()) out.at(i, j) += c * y.at(k, j);
      }
    }
  }
  return out;
}

Mat operator+(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw Error("mat add: shape mismatch");
  Mat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

Mat operator-(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw Error("mat sub: shape mismatch");
  Mat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

bool operator==(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return false;
  return true;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  if (static_cast<size_t>(m.cols) != v.size())
    throw Error("mat_vec: shape mismatch");
  Vec out(m.rows);
  for (int j = 0; j < m.cols; ++j) {
    if (v[j].is_zero()) continue;
    for (int i = 0; i < m.rows; ++i) {
      if (!m.at(i, j).is_zero()) out[i] += m.at(i, j) * v[j];
    }
  }
  return out;
}

Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      if (x.at(i, j).is_zero()) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) {
          if (y.at(k, l).is_zero()) continue;
          out.at(i * y.rows + k, j * y.cols + l) = x.at(i, j) * y.at(k, l);
        }
    }
  return out;
}

namespace {

// in-place row echelon; returns pivot columns (one per pivot row)
std::vector<int> echelonize(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i) {
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    Cyc inv = m.at(r, col).inverse();
    for (int j = col; j < m.cols; ++j) m.at(r, j) = inv * m.at(r, j);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, col).is_zero()) continue;
      Cyc f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(Mat m) { return static_cast<int>(echelonize(m).size()); }

std::vector<Vec> kernel_basis(Mat m) {
  int n = m.cols;
  std::vector<int> pivots = echelonize(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    Vec v = vec_zero(n);
    v[col] = Cyc::one();
    for (size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] < col) v[pivots[r]] = -m.at(static_cast<int>(r), col);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(Mat a, Vec b) {
  if (static_cast<size_t>(a.rows) != b.size())
    throw Error("solve: shape mismatch");
  Mat aug(a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[i];
  }
  std::vector<int> pivots = echelonize(aug);
  for (int p : pivots)
    if (p == a.cols) return std::nullopt;  // inconsistent
  Vec x = vec_zero(a.cols);
  for (size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = aug.at(static_cast<int>(r), a.cols);
  return x;
}

std::optional<Mat> inverse(Mat m) {
  if (m.rows != m.cols) throw Error("inverse: square matrix required");
  int n = m.rows;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Cyc::one();
  }
  std::vector<int> pivots = echelonize(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
    return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

int Echelon::insert(Vec v, int tag) {
  if (static_cast<int>(v.size()) != ambient_)
    throw Error("Echelon::insert: ambient mismatch");
  v = reduce(std::move(v));
  int pivot = -1;
  for (int i = 0; i < ambient_; ++i) {
    if (!v[i].is_zero()) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return -1;
  Cyc inv = v[pivot].inverse();
  for (auto& c : v) c = inv * c;
  Row row{std::move(v), pivot, tag};
  auto it = std::lower_bound(
      rows_.begin(), rows_.end(), pivot,
      [](const Row& r, int p) { return r.pivot < p; });
  it = rows_.insert(it, std::move(row));
  return static_cast<int>(it - rows_.begin());
}

bool Echelon::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

Vec Echelon::reduce(Vec v, std::map<int, Cyc>* tag_coeffs) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw Error("Echelon::reduce: ambient mismatch");
  for (const Row& row : rows_) {
    const Cyc& c = v[row.pivot];
    if (c.is_zero()) continue;
    Cyc coeff = c;  // row is pivot-normalized
    for (int j = row.pivot; j < ambient_; ++j) {
      if (!row.v[j].is_zero()) v[j] -= coeff * row.v[j];
    }
    if (tag_coeffs) (*tag_coeffs)[row.tag] += coeff;
  }
  return v;
}

Vec QuotientSpace::coords(const Vec& w) const {
  std::map<int, Cyc> tag_coeffs;
  Vec residual = table.reduce(w, &tag_coeffs);
  if (!vec_is_zero(residual))
    throw Error("QuotientSpace::coords: vector outside the total space");
  Vec out = vec_zero(dim());
  for (const auto& [tag, c] : tag_coeffs) {
    if (tag >= 0) out[tag] = c;
  }
  return out;
}

QuotientSpace quotient_space(const std::vector<Vec>& w_gens,
                             const std::vector<Vec>& u_gens, int ambient) {
  QuotientSpace q;
  q.ambient = ambient;
  q.table = Echelon(ambient);
  for (const Vec& u : u_gens) q.table.insert(u, -1);
  for (const Vec& w : w_gens) {
    Vec probe = q.table.reduce(w);
    if (vec_is_zero(probe)) continue;
    int tag = static_cast<int>(q.reps.size());
    q.table.insert(w, tag);
    q.reps.push_back(w);
  }
  return q;
}

std::optional<Cyc> projective_ratio(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) return std::nullopt;
  Cyc scalar;
  bool found = false;
  for (size_t i = 0; i < a.a.size(); ++i) {
    if (!a.a[i].is_zero() && !b.a[i].is_zero()) {
      scalar = a.a[i] / b.a[i];
      found = true;
      break;
    }
  }
  if (!found) {
    // disjoint supports: projectively equal only when both vanish
    if (a.is_zero() && b.is_zero()) return Cyc::one();
    return std::nullopt;
  }
  for (size_t i = 0; i < a.a.size(); ++i) {
    if (a.a[i] != scalar * b.a[i]) return std::nullopt;
  }
  return scalar;
}

}  // namespace forge
