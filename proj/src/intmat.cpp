#include "lietorus/intmat.hpp"

#include <algorithm>
#include <climits>

namespace lietorus {

ZMat zmat_identity(size_t n) {
  ZMat m(n, std::vector<Integer>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  const size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  ZMat m(r, std::vector<Integer>(c, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; ++j) m[i][j] += a[i][t] * b[t][j];
    }
  return m;
}

ZMat to_zmat(const IntMat& a) {
  ZMat m;
  for (const auto& row : a) {
    std::vector<Integer> r;
    for (long x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return m;
}

IntMat to_intmat(const ZMat& a) {
  IntMat m;
  for (const auto& row : a) {
    std::vector<long> r;
    for (const auto& x : row) {
      if (!x.fits_slong_p()) throw Error(ErrorCode::DimensionMismatch, "to_intmat", "entry does not fit in 64 bits");
      r.push_back(x.get_si());
    }
    m.push_back(std::move(r));
  }
  return m;
}

Integer zmat_det(const ZMat& a) {
  // Bareiss fraction-free elimination.
  const size_t n = a.size();
  if (n == 0) return 1;
  ZMat m = a;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

void row_op(ZMat& m, size_t dst, size_t src, const Integer& k) {  // row dst += k row src
  for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += k * m[src][j];
}

void col_op(ZMat& m, size_t dst, size_t src, const Integer& k) {  // col dst += k col src
  for (auto& row : m) row[dst] += k * row[src];
}

void swap_cols(ZMat& m, size_t a, size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

SmithForm smith_normal_form(const ZMat& a) {
  const size_t r = a.size(), c = r ? a[0].size() : 0;
  SmithForm s{zmat_identity(r), a, zmat_identity(c)};
  ZMat& d = s.D;
  for (size_t t = 0; t < std::min(r, c); ++t) {
    while (true) {
      // Smallest nonzero entry of the remaining block moves to (t, t).
      size_t pi = r, pj = c;
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j)
          if (d[i][j] != 0 && (pi == r || abs(d[i][j]) < abs(d[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == r) return s;
      std::swap(d[t], d[pi]);
      std::swap(s.U[t], s.U[pi]);
      swap_cols(d, t, pj);
      swap_cols(s.V, t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < r; ++i) {
        if (d[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
        row_op(d, i, t, -q);
        row_op(s.U, i, t, -q);
        if (d[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < c; ++j) {
        if (d[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
        col_op(d, j, t, -q);
        col_op(s.V, j, t, -q);
        if (d[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the rest by the pivot.
      bool divides = true;
      for (size_t i = t + 1; i < r && divides; ++i)
        for (size_t j = t + 1; j < c && divides; ++j)
          if (d[i][j] % d[t][t] != 0) {
            row_op(d, t, i, 1);
            row_op(s.U, t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
  }
  return s;
}

ZMat lattice_basis(const ZMat& rows, size_t n) {
  ZMat m = rows;
  size_t row = 0;
  for (size_t col = 0; col < n && row < m.size(); ++col) {
    while (true) {
      size_t p = m.size();
      for (size_t i = row; i < m.size(); ++i)
        if (m[i][col] != 0 && (p == m.size() || abs(m[i][col]) < abs(m[p][col]))) p = i;
      if (p == m.size()) break;
      std::swap(m[row], m[p]);
      bool done = true;
      for (size_t i = row + 1; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
        row_op(m, i, row, -q);
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (row < m.size() && m[row][col] != 0) {
      if (m[row][col] < 0)
        for (auto& x : m[row]) x = -x;
      for (size_t i = 0; i < row; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
        row_op(m, i, row, -q);
      }
      ++row;
    }
  }
  m.resize(row);
  return m;
}

std::vector<Integer> quotient_invariant_factors(const ZMat& rows, size_t n) {
  ZMat b = lattice_basis(rows, n);
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "quotient_invariant_factors", "lattice has rank below n");
  SmithForm s = smith_normal_form(b);
  std::vector<Integer> f;
  for (size_t i = 0; i < n; ++i)
    if (s.D[i][i] != 1) f.push_back(s.D[i][i]);
  std::sort(f.begin(), f.end(), [](const Integer& x, const Integer& y) { return x > y; });
  return f;
}

}  // namespace lietorus
