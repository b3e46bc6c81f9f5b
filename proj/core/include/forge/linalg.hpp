#pragma once

#include <map>
#include <optional>
#include <vector>

#include "forge/cyclotomic.hpp"

namespace forge {

using Vec = std::vector<Cyc>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Cyc& c, const Vec& v);
Vec& operator+=(Vec& a, const Vec& b);
void axpy(Vec& acc, const Cyc& c, const Vec& v);  // acc += c*v
bool vec_is_zero(const Vec& v);
Vec vec_zero(int n);
Vec vec_unit(int n, int i);

// dense exact matrix, row major
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Cyc> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Cyc& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Cyc& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static Mat identity(int n);
  static Mat from_columns(int ambient, const std::vector<Vec>& cols);
  static Mat from_rows(const std::vector<Vec>& rows);

  Vec row(int i) const;
  Vec column(int j) const;
  Mat transpose() const;
  bool is_zero() const;
  Cyc trace() const;
  Mat scaled(const Cyc& c) const;

  friend Mat operator*(const Mat& x, const Mat& y);
  friend Mat operator+(const Mat& x, const Mat& y);
  friend Mat operator-(const Mat& x, const Mat& y);
  friend bool operator==(const Mat& x, const Mat& y);
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

Vec mat_vec(const Mat& m, const Vec& v);
Mat kron(const Mat& x, const Mat& y);

int rank(Mat m);
// right kernel {v : Mv = 0}
std::vector<Vec> kernel_basis(Mat m);
std::optional<Vec> solve(Mat a, Vec b);
std::optional<Mat> inverse(Mat m);

// incremental row-echelon span with membership, coordinates and tags;
// backbone for invariant subspaces, quotients and Ext spaces
class Echelon {
 public:
  explicit Echelon(int ambient) : ambient_(ambient) {}

  // echelonizes v against the current rows; keeps it if independent.
  // returns the assigned row slot or -1 if dependent
  int insert(Vec v, int tag = 0);
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }
  bool contains(const Vec& v) const;
  // residual after reduction; optionally collects the coefficient used
  // against each stored row, keyed by its tag
  Vec reduce(Vec v, std::map<int, Cyc>* tag_coeffs = nullptr) const;
  const Vec& row_vector(int slot) const { return rows_[slot].v; }
  int row_tag(int slot) const { return rows_[slot].tag; }

 private:
  struct Row {
    Vec v;
    int pivot;
    int tag;
  };
  int ambient_;
  std::vector<Row> rows_;  // sorted by pivot column
};

// basis of W/U together with exact quotient coordinates; U must sit inside W
struct QuotientSpace {
  int ambient = 0;
  std::vector<Vec> reps;  // lifted representatives of the quotient basis
  Echelon table{0};       // U rows tagged -1, rep rows tagged by index

  int dim() const { return static_cast<int>(reps.size()); }
  // quotient coordinates of w (must lie in W)
  Vec coords(const Vec& w) const;
};

QuotientSpace quotient_space(const std::vector<Vec>& w_gens,
                             const std::vector<Vec>& u_gens, int ambient);

// is a == c*b for a single nonzero scalar c? scalar from the first
// jointly-nonzero entry, then verified on every entry
std::optional<Cyc> projective_ratio(const Mat& a, const Mat& b);

}  // namespace forge
