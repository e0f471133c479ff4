#include "lietorus/linalg.hpp"

#include <algorithm>

namespace lietorus {

Vec zero_vec(const FieldContext& f, size_t n) { return Vec(n, Cyclo(f)); }

Vec unit_vec(const FieldContext& f, size_t n, size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Cyclo::one(f);
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Cyclo& c, const Vec& v) {
  Vec r = v;
  for (auto& x : r)
    if (!x.is_zero()) x *= c;
  return r;
}

void axpy(Vec& y, const Cyclo& a, const Vec& x) {
  if (a.is_zero()) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i].add_mul(a, x[i]);
}

Cyclo dot(const Vec& a, const Vec& b) {
  Cyclo s(a.at(0).field());
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s.add_mul(a[i], b[i]);
  return s;
}

Vec normalized(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return scale(x.inverse(), v);
  return v;
}

// ---------------------------------------------------------------------------

Mat::Mat(const FieldContext& f, size_t rows, size_t cols) : f_(&f), r_(rows), c_(cols), a_(rows * cols, Cyclo(f)) {}

Mat Mat::identity(const FieldContext& f, size_t n) {
  Mat m(f, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = Cyclo::one(f);
  return m;
}

Mat Mat::from_rows(const FieldContext& f, size_t cols, const std::vector<Vec>& rows) {
  Mat m(f, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Mat Mat::from_cols(const FieldContext& f, size_t rows, const std::vector<Vec>& cols) {
  Mat m(f, rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Vec Mat::row(size_t i) const { return Vec(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_)); }

Vec Mat::col(size_t j) const {
  Vec v;
  v.reserve(r_);
  for (size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
  return v;
}

void Mat::set_row(size_t i, const Vec& v) {
  for (size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

void Mat::set_col(size_t j, const Vec& v) {
  for (size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

std::vector<Vec> Mat::row_list() const {
  std::vector<Vec> out;
  for (size_t i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

Mat Mat::transpose() const {
  Mat t(*f_, c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (r_ != c_) return false;
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) {
      const Cyclo& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

bool Mat::is_diagonal() const {
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.c_ != b.r_) throw Error(ErrorCode::DimensionMismatch, "matmul", "inner dimensions differ");
  Mat r(*a.f_, a.r_, b.c_);
  for (size_t i = 0; i < a.r_; ++i)
    for (size_t k = 0; k < a.c_; ++k) {
      const Cyclo& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.c_; ++j) {
        const Cyclo& y = b(k, j);
        if (!y.is_zero()) r(i, j).add_mul(x, y);
      }
    }
  return r;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.c_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matvec", "dimension mismatch");
  Vec r = zero_vec(*a.f_, a.r_);
  for (size_t k = 0; k < a.c_; ++k) {
    if (v[k].is_zero()) continue;
    for (size_t i = 0; i < a.r_; ++i)
      if (!a(i, k).is_zero()) r[i].add_mul(a(i, k), v[k]);
  }
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) return false;
  for (size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return false;
  return true;
}

Mat Mat::scaled(const Cyclo& c) const {
  Mat r = *this;
  for (auto& x : r.a_)
    if (!x.is_zero()) x *= c;
  return r;
}

Mat Mat::pow(long e) const {
  Mat result = identity(*f_, r_);
  Mat base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------

Rref rref(Mat m) {
  Rref out;
  size_t row = 0;
  const FieldContext& f = m.field();
  for (size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Cyclo inv = m(row, c).inverse();
    for (size_t j = c; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      Cyclo factor = m(r, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(r, j).sub_mul(factor, m(row, j));
    }
    out.pivots.push_back(c);
    ++row;
  }
  (void)f;
  out.m = std::move(m);
  return out;
}

size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Mat nullspace(const Mat& m) {
  Rref r = rref(m);
  const FieldContext& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, m.cols());
    v[free] = Cyclo::one(f);
    for (size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.m(i, free);
    basis.push_back(std::move(v));
  }
  // Canonicalize to reduced echelon form.
  return Subspace::span(f, m.cols(), basis).basis_matrix();
}

std::optional<Mat> inverse(const Mat& m) {
  const size_t n = m.rows();
  if (n != m.cols()) return std::nullopt;
  const FieldContext& f = m.field();
  Mat aug(f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Cyclo::one(f);
  }
  Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
  return inv;
}

Cyclo determinant(Mat m) {
  const size_t n = m.rows();
  const FieldContext& f = m.field();
  Cyclo det = Cyclo::one(f);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return Cyclo(f);
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Cyclo inv = m(c, c).inverse();
    for (size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      Cyclo factor = m(r, c) * inv;
      for (size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(r, j).sub_mul(factor, m(c, j));
    }
  }
  return det;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  const FieldContext& f = m.field();
  Mat aug(f, m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref r = rref(aug);
  Vec x = zero_vec(f, m.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == m.cols()) return std::nullopt;
    x[r.pivots[i]] = r.m(i, m.cols());
  }
  return x;
}

// ---------------------------------------------------------------------------

bool EchelonBuilder::reduce(Vec& v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Cyclo& c = v[pivots_[i]];
    if (c.is_zero()) continue;
    Cyclo factor = c;
    const Vec& r = rows_[i];
    for (size_t j = 0; j < n_; ++j)
      if (!r[j].is_zero()) v[j].sub_mul(factor, r[j]);
  }
  return is_zero(v);
}

bool EchelonBuilder::add(Vec v) {
  if (reduce(v)) return false;
  size_t p = 0;
  while (v[p].is_zero()) ++p;
  Cyclo inv = v[p].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  // Keep existing rows reduced at the new pivot.
  for (auto& r : rows_) {
    if (r[p].is_zero()) continue;
    Cyclo factor = r[p];
    for (size_t j = 0; j < n_; ++j)
      if (!v[j].is_zero()) r[j].sub_mul(factor, v[j]);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  (void)f_;
  return true;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(const FieldContext& f, size_t ambient) : f_(&f), n_(ambient) {}

Subspace Subspace::span(const FieldContext& f, size_t ambient, const std::vector<Vec>& gens) {
  Subspace s(f, ambient);
  if (gens.empty()) return s;
  Rref r = rref(Mat::from_rows(f, ambient, gens));
  for (size_t i = 0; i < r.pivots.size(); ++i) s.basis_.push_back(r.m.row(i));
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::whole(const FieldContext& f, size_t ambient) {
  Subspace s(f, ambient);
  for (size_t i = 0; i < ambient; ++i) {
    s.basis_.push_back(unit_vec(f, ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::from_rows(const Mat& m) { return span(m.field(), m.cols(), m.row_list()); }

Mat Subspace::basis_matrix() const { return Mat::from_rows(*f_, n_, basis_); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  Vec c;
  c.reserve(basis_.size());
  for (size_t p : pivots_) c.push_back(v[p]);
  Vec back = from_coordinates(c);
  for (size_t i = 0; i < n_; ++i)
    if (back[i] != v[i]) return std::nullopt;
  return c;
}

Vec Subspace::from_coordinates(const Vec& c) const {
  Vec v = zero_vec(*f_, n_);
  for (size_t i = 0; i < basis_.size(); ++i) axpy(v, c[i], basis_[i]);
  return v;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& o) const {
  for (const auto& v : o.basis_)
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  std::vector<Vec> g = basis_;
  g.insert(g.end(), o.basis_.begin(), o.basis_.end());
  return span(*f_, n_, g);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (dim() == 0 || o.dim() == 0) return Subspace(*f_, n_);
  const size_t k = dim(), l = o.dim();
  Mat m(*f_, n_, k + l);
  for (size_t i = 0; i < n_; ++i) {
    for (size_t a = 0; a < k; ++a) m(i, a) = basis_[a][i];
    for (size_t b = 0; b < l; ++b) m(i, k + b) = -o.basis_[b][i];
  }
  Mat ns = nullspace(m);
  std::vector<Vec> gens;
  for (size_t r = 0; r < ns.rows(); ++r) {
    Vec v = zero_vec(*f_, n_);
    for (size_t a = 0; a < k; ++a) axpy(v, ns(r, a), basis_[a]);
    gens.push_back(std::move(v));
  }
  return span(*f_, n_, gens);
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.n_ != b.n_ || a.basis_.size() != b.basis_.size() || a.pivots_ != b.pivots_) return false;
  for (size_t i = 0; i < a.basis_.size(); ++i)
    for (size_t j = 0; j < a.n_; ++j)
      if (a.basis_[i][j] != b.basis_[i][j]) return false;
  return true;
}

Mat restrict_to(const Mat& op, const Subspace& w) {
  const FieldContext& f = op.field();
  Mat r(f, w.dim(), w.dim());
  for (size_t j = 0; j < w.dim(); ++j) {
    auto c = w.coordinates(op * w.basis_vector(j));
    if (!c) throw Error(ErrorCode::NotStable, "restrict_to", "subspace is not stable under the operator");
    r.set_col(j, *c);
  }
  return r;
}

Subspace kernel_in(const Mat& op, const Subspace& w) {
  const FieldContext& f = op.field();
  if (w.dim() == 0) return w;
  std::vector<Vec> images;
  for (const auto& b : w.basis()) images.push_back(op * b);
  Mat m = Mat::from_cols(f, op.rows(), images);
  Mat ns = nullspace(m);
  std::vector<Vec> gens;
  for (size_t r = 0; r < ns.rows(); ++r) gens.push_back(w.from_coordinates(ns.row(r)));
  return Subspace::span(f, w.ambient_dim(), gens);
}

CycloPoly minimal_polynomial(const Mat& m) {
  const FieldContext& f = m.field();
  const size_t n = m.rows();
  // Rows [vec(M^k) | e_k]; a row whose left part reduces to zero gives the relation.
  const size_t maxdeg = n + 1;
  const size_t width = n * n + maxdeg;
  std::vector<Vec> rows;
  std::vector<size_t> pivots;
  Mat power = Mat::identity(f, n);
  for (size_t k = 0; k <= n; ++k) {
    Vec v = zero_vec(f, width);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) v[i * n + j] = power(i, j);
    v[n * n + k] = Cyclo::one(f);
    for (size_t r = 0; r < rows.size(); ++r) {
      const Cyclo& c = v[pivots[r]];
      if (c.is_zero()) continue;
      Cyclo factor = c;
      for (size_t j = 0; j < width; ++j)
        if (!rows[r][j].is_zero()) v[j].sub_mul(factor, rows[r][j]);
    }
    size_t p = 0;
    while (p < n * n && v[p].is_zero()) ++p;
    if (p == n * n) {
      std::vector<Cyclo> coeffs;
      for (size_t j = 0; j <= k; ++j) coeffs.push_back(v[n * n + j]);
      return CycloPoly(f, std::move(coeffs)).monic();
    }
    Cyclo inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    power = power * m;
  }
  throw Error(ErrorCode::ExtensionInconsistent, "minimal_polynomial", "no relation found");
}

}  // namespace lietorus
