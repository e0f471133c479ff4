#pragma once

// Dense exact linear algebra over a cyclotomic field.

#include <optional>
#include <vector>

#include "lietorus/field.hpp"

namespace lietorus {

using Vec = std::vector<Cyclo>;

Vec zero_vec(const FieldContext& f, size_t n);
Vec unit_vec(const FieldContext& f, size_t n, size_t i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scale(const Cyclo& c, const Vec& v);
void axpy(Vec& y, const Cyclo& a, const Vec& x);  // y += a x
Cyclo dot(const Vec& a, const Vec& b);
// Scale so that the first nonzero entry is 1.
Vec normalized(const Vec& v);

class Mat {
 public:
  Mat() = default;
  Mat(const FieldContext& f, size_t rows, size_t cols);
  static Mat identity(const FieldContext& f, size_t n);
  static Mat from_rows(const FieldContext& f, size_t cols, const std::vector<Vec>& rows);
  static Mat from_cols(const FieldContext& f, size_t rows, const std::vector<Vec>& cols);

  const FieldContext& field() const { return *f_; }
  const FieldContext* field_ptr() const { return f_; }
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Cyclo& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Cyclo& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  Vec row(size_t i) const;
  Vec col(size_t j) const;
  void set_row(size_t i, const Vec& v);
  void set_col(size_t j, const Vec& v);
  std::vector<Vec> row_list() const;

  Mat transpose() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }
  Mat scaled(const Cyclo& c) const;
  Mat pow(long e) const;  // e >= 0

 private:
  const FieldContext* f_ = nullptr;
  size_t r_ = 0, c_ = 0;
  std::vector<Cyclo> a_;
};

struct Rref {
  Mat m;
  std::vector<size_t> pivots;
};

Rref rref(Mat m);
size_t rank(const Mat& m);
// Rows form the canonical (reduced echelon) basis of {x : m x = 0}.
Mat nullspace(const Mat& m);
std::optional<Mat> inverse(const Mat& m);
Cyclo determinant(Mat m);
// Some x with m x = b.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// Incrementally maintained echelon basis; reduces against existing pivots.
class EchelonBuilder {
 public:
  EchelonBuilder(const FieldContext& f, size_t n) : f_(&f), n_(n) {}
  // Reduce v against the current rows (in place); returns true if v becomes zero.
  bool reduce(Vec& v) const;
  // Returns true if v was independent and added.
  bool add(Vec v);
  size_t dim() const { return rows_.size(); }
  size_t ambient() const { return n_; }
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  const FieldContext* f_;
  size_t n_;
  std::vector<Vec> rows_;       // each with leading 1 at pivots_[i]
  std::vector<size_t> pivots_;
};

// Subspace of k^n kept in reduced row echelon form (canonical, supports equality).
class Subspace {
 public:
  Subspace() = default;
  Subspace(const FieldContext& f, size_t ambient);  // zero subspace
  static Subspace span(const FieldContext& f, size_t ambient, const std::vector<Vec>& gens);
  static Subspace whole(const FieldContext& f, size_t ambient);
  static Subspace from_rows(const Mat& m);

  const FieldContext& field() const { return *f_; }
  size_t dim() const { return basis_.size(); }
  size_t ambient_dim() const { return n_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const Vec& basis_vector(size_t i) const { return basis_[i]; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  Mat basis_matrix() const;

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  // Coordinates with respect to basis(); empty optional if v is not in the space.
  std::optional<Vec> coordinates(const Vec& v) const;
  Vec from_coordinates(const Vec& c) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  const FieldContext* f_ = nullptr;
  size_t n_ = 0;
  std::vector<Vec> basis_;
  std::vector<size_t> pivots_;
};

// Matrix of the restriction of op to an op-stable subspace W, in W's basis (column convention).
Mat restrict_to(const Mat& op, const Subspace& w);
// Kernel of op restricted to W, lifted back to the ambient space.
Subspace kernel_in(const Mat& op, const Subspace& w);

// Minimal polynomial of a square matrix (monic).
CycloPoly minimal_polynomial(const Mat& m);

}  // namespace lietorus
