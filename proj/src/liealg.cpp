#include "lietorus/liealg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace lietorus {

namespace {

SparseVec sparse_of(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back({i, v[i]});
  return s;
}

SparseVec canonical(SparseVec s) {
  std::sort(s.begin(), s.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  SparseVec out;
  for (auto& t : s) {
    if (!out.empty() && out.back().index == t.index) out.back().coeff += t.coeff;
    else out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff.is_zero(); }), out.end());
  return out;
}

SparseVec negated(const SparseVec& s) {
  SparseVec r = s;
  for (auto& t : r) t.coeff = -t.coeff;
  return r;
}

bool same_sparse(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].index != b[i].index || a[i].coeff != b[i].coeff) return false;
  return true;
}

std::vector<size_t> support(const Vec& v) {
  std::vector<size_t> s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back(i);
  return s;
}

Vec flatten(const Mat& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

bool weight_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (lex_less(a[i], b[i])) return true;
    if (lex_less(b[i], a[i])) return false;
  }
  return false;
}

IntVec unit_iv(size_t l, size_t i, long s = 1) {
  IntVec v(l, 0);
  v[i] = s;
  return v;
}

IntVec neg_iv(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

std::string combination_label(const Vec& v, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    bool neg = false;
    std::string c;
    if (v[i].is_rational()) {
      Rational q = v[i].rational();
      neg = sgn(q) < 0;
      if (neg) q = -q;
      if (q != 1) c = rational_to_string(q) + "*";
    } else {
      c = "(" + v[i].to_string() + ")*";
    }
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? "-" : "+";
    s += c + names[i];
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// LieAlgebra

LieAlgebra::LieAlgebra(const FieldContext& f, size_t dim, std::vector<std::string> labels,
                       std::vector<SparseVec> upper, bool verify)
    : f_(&f), dim_(dim), labels_(std::move(labels)), table_(dim * dim) {
  if (labels_.empty())
    for (size_t i = 0; i < dim; ++i) labels_.push_back("b" + std::to_string(i + 1));
  if (labels_.size() != dim) throw Error(ErrorCode::DimensionMismatch, "LieAlgebra", "label count differs from dimension");
  if (upper.size() != dim * dim)
    throw Error(ErrorCode::DimensionMismatch, "LieAlgebra", "bracket table must have dim^2 entries");
  for (auto& s : upper)
    for (const auto& t : s) {
      if (t.index >= dim) throw Error(ErrorCode::DimensionMismatch, "LieAlgebra", "bracket index out of range");
      if (t.coeff.field_ptr() != &f) throw Error(ErrorCode::ContextMismatch, "LieAlgebra", "coefficient field");
    }
  for (size_t i = 0; i < dim; ++i) {
    if (!canonical(upper[i * dim + i]).empty())
      throw Error(ErrorCode::SchemaError, "LieAlgebra", "[b,b] != 0 for " + labels_[i]);
    for (size_t j = i + 1; j < dim; ++j) {
      SparseVec u = canonical(upper[i * dim + j]);
      SparseVec l = canonical(upper[j * dim + i]);
      if (!l.empty() && !same_sparse(l, negated(u)))
        throw Error(ErrorCode::SchemaError, "LieAlgebra",
                    "antisymmetry fails for (" + labels_[i] + ", " + labels_[j] + ")");
      table_[j * dim + i] = negated(u);
      table_[i * dim + j] = std::move(u);
    }
  }
  if (verify) {
    if (auto bad = jacobi_violation())
      throw Error(ErrorCode::SchemaError, "LieAlgebra", "Jacobi identity fails on " + *bad);
  }
}

std::optional<std::string> LieAlgebra::jacobi_violation() const {
  const size_t d = dim_;
  Vec acc = zero_vec(*f_, d);
  std::vector<size_t> touched;
  auto add_bracket = [&](size_t i, const SparseVec& s) {
    for (const auto& t : s)
      for (const auto& u : table_[i * d + t.index]) {
        acc[u.index].add_mul(t.coeff, u.coeff);
        touched.push_back(u.index);
      }
  };
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j)
      for (size_t k = j + 1; k < d; ++k) {
        add_bracket(i, table_[j * d + k]);
        add_bracket(j, table_[k * d + i]);
        add_bracket(k, table_[i * d + j]);
        bool bad = false;
        for (size_t idx : touched) {
          if (!acc[idx].is_zero()) bad = true;
          acc[idx] = Cyclo(*f_);
        }
        touched.clear();
        if (bad) return "(" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + ")";
      }
  return std::nullopt;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec r = zero_vec(*f_, dim_);
  auto sx = support(x), sy = support(y);
  for (size_t i : sx)
    for (size_t j : sy) {
      if (i == j) continue;
      const auto& s = table_[i * dim_ + j];
      if (s.empty()) continue;
      Cyclo c = x[i] * y[j];
      for (const auto& t : s) r[t.index].add_mul(c, t.coeff);
    }
  return r;
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat m(*f_, dim_, dim_);
  for (size_t i : support(x))
    for (size_t j = 0; j < dim_; ++j)
      for (const auto& t : table_[i * dim_ + j]) m(t.index, j).add_mul(x[i], t.coeff);
  return m;
}

Mat LieAlgebra::ad_basis(size_t i) const {
  Mat m(*f_, dim_, dim_);
  for (size_t j = 0; j < dim_; ++j)
    for (const auto& t : table_[i * dim_ + j]) m(t.index, j) = t.coeff;
  return m;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(table_.begin(), table_.end(), [](const SparseVec& s) { return s.empty(); });
}

bool LieAlgebra::is_homomorphism(const Mat& phi, const LieAlgebra& target) const {
  if (phi.rows() != target.dim() || phi.cols() != dim_) return false;
  std::vector<Vec> cols;
  for (size_t j = 0; j < dim_; ++j) cols.push_back(phi.col(j));
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = i + 1; j < dim_; ++j) {
      Vec lhs = zero_vec(target.field(), target.dim());
      for (const auto& t : table_[i * dim_ + j]) axpy(lhs, t.coeff, cols[t.index]);
      if (lhs != target.bracket(cols[i], cols[j])) return false;
    }
  return true;
}

LieAlgebra LieAlgebra::subalgebra(const Subspace& s) const {
  const size_t k = s.dim();
  std::vector<SparseVec> upper(k * k);
  for (size_t a = 0; a < k; ++a)
    for (size_t b = a + 1; b < k; ++b) {
      auto c = s.coordinates(bracket(s.basis_vector(a), s.basis_vector(b)));
      if (!c) throw Error(ErrorCode::NotStable, "subalgebra", "subspace is not closed under the bracket");
      upper[a * k + b] = sparse_of(*c);
    }
  std::vector<std::string> labels;
  for (const auto& v : s.basis()) labels.push_back(combination_label(v, labels_));
  LieAlgebra sub(*f_, k, std::move(labels), std::move(upper), false);
  if (!matrices_.empty()) {
    std::vector<Mat> mats;
    for (const auto& v : s.basis()) {
      Mat m(*f_, matrices_[0].rows(), matrices_[0].cols());
      for (size_t i : support(v)) m = m + matrices_[i].scaled(v[i]);
      mats.push_back(std::move(m));
    }
    sub.set_realization(std::move(mats), gram_);
  }
  return sub;
}

LieAlgebra LieAlgebra::over(const FieldContext& f) const {
  std::vector<SparseVec> upper(dim_ * dim_);
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = i + 1; j < dim_; ++j)
      for (const auto& t : table_[i * dim_ + j]) upper[i * dim_ + j].push_back({t.index, embed(t.coeff, f)});
  LieAlgebra l(f, dim_, labels_, std::move(upper), false);
  auto lift = [&](const Mat& m) {
    Mat r(f, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) r(i, j) = embed(m(i, j), f);
    return r;
  };
  if (!matrices_.empty()) {
    std::vector<Mat> mats;
    for (const auto& m : matrices_) mats.push_back(lift(m));
    l.set_realization(std::move(mats), gram_ ? std::optional<Mat>(lift(*gram_)) : std::nullopt);
  }
  return l;
}

std::optional<Vec> LieAlgebra::matrix_coordinates(const Mat& x) const {
  if (matrices_.empty()) return std::nullopt;
  std::vector<Vec> cols;
  for (const auto& m : matrices_) cols.push_back(flatten(m));
  Vec target = flatten(x);
  Mat a = Mat::from_cols(*f_, target.size(), cols);
  auto c = solve(a, target);
  if (!c || a * *c != target) return std::nullopt;
  return c;
}

// ---------------------------------------------------------------------------

LieAlgebra orthogonal_algebra(const Mat& gram) {
  const FieldContext& f = gram.field();
  const size_t n = gram.rows();
  if (gram.cols() != n) throw Error(ErrorCode::SingularGram, "orthogonal_algebra", "gram matrix is not square");
  if (gram.transpose() != gram) throw Error(ErrorCode::SingularGram, "orthogonal_algebra", "gram matrix is not symmetric");
  if (determinant(gram).is_zero()) throw Error(ErrorCode::SingularGram, "orthogonal_algebra", "gram matrix is singular");
  // x^T G + G x = 0, unknown x_{ab} at a*n+b.
  Mat eq(f, n * n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        eq(i * n + j, k * n + i) += gram(k, j);
        eq(i * n + j, k * n + j) += gram(i, k);
      }
  Mat ns = nullspace(eq);
  Subspace flat = Subspace::from_rows(ns);
  const size_t d = flat.dim();
  std::vector<Mat> mats;
  for (const auto& v : flat.basis()) {
    Mat m(f, n, n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) m(a, b) = v[a * n + b];
    mats.push_back(std::move(m));
  }
  std::vector<std::string> units;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      units.push_back(n < 10 ? "e" + std::to_string(a + 1) + std::to_string(b + 1)
                             : "e" + std::to_string(a + 1) + "," + std::to_string(b + 1));
  std::vector<std::string> labels;
  for (const auto& v : flat.basis()) labels.push_back(combination_label(v, units));
  std::vector<SparseVec> upper(d * d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = a + 1; b < d; ++b) {
      Mat c = mats[a] * mats[b] - mats[b] * mats[a];
      upper[a * d + b] = sparse_of(*flat.coordinates(flatten(c)));
    }
  LieAlgebra l(f, d, std::move(labels), std::move(upper), true);
  l.set_realization(std::move(mats), gram);
  return l;
}

Mat killing_form(const LieAlgebra& l) {
  const size_t d = l.dim();
  const FieldContext& f = l.field();
  Mat k(f, d, d);
  auto coeff_at = [](const SparseVec& s, size_t idx) -> const Cyclo* {
    for (const auto& t : s)
      if (t.index == idx) return &t.coeff;
    return nullptr;
  };
  // kappa_ij = sum_k sum_{(l,c) in [b_i,b_k]} c * coeff_k [b_j, b_l]
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i; j < d; ++j) {
      Cyclo acc(f);
      for (size_t kk = 0; kk < d; ++kk)
        for (const auto& t : l.bracket_basis(i, kk))
          if (const Cyclo* c = coeff_at(l.bracket_basis(j, t.index), kk)) acc.add_mul(t.coeff, *c);
      k(i, j) = acc;
      k(j, i) = acc;
    }
  return k;
}

Subspace generated_ideal(const LieAlgebra& l, const std::vector<Vec>& gens) {
  const FieldContext& f = l.field();
  const size_t d = l.dim();
  EchelonBuilder eb(f, d);
  std::deque<Vec> queue;
  for (const auto& g : gens)
    if (eb.add(g)) queue.push_back(g);
  while (!queue.empty() && eb.dim() < d) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (size_t j = 0; j < d && eb.dim() < d; ++j) {
      Vec w = l.bracket(unit_vec(f, d, j), v);
      if (eb.add(w)) queue.push_back(std::move(w));
    }
  }
  return Subspace::span(f, d, eb.rows());
}

Subspace generated_subalgebra(const LieAlgebra& l, const std::vector<Vec>& gens) {
  const FieldContext& f = l.field();
  const size_t d = l.dim();
  EchelonBuilder eb(f, d);
  std::vector<Vec> members;
  std::deque<Vec> queue;
  for (const auto& g : gens)
    if (eb.add(g)) queue.push_back(g);
  while (!queue.empty()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& u : members) {
      Vec w = l.bracket(u, v);
      if (eb.add(w)) queue.push_back(std::move(w));
    }
    members.push_back(std::move(v));
  }
  return Subspace::span(f, d, eb.rows());
}

// ---------------------------------------------------------------------------

SimplicityResult is_simple(const LieAlgebra& l) {
  const FieldContext& f = l.field();
  const size_t d = l.dim();
  if (d == 0) return {false, std::nullopt, "zero algebra"};
  if (l.is_abelian()) {
    if (d > 1) return {false, Subspace::span(f, d, {unit_vec(f, d, 0)}), "abelian"};
    return {false, std::nullopt, "abelian"};
  }
  Subspace rad = Subspace::from_rows(nullspace(killing_form(l)));
  if (rad.dim() > 0) {
    if (rad.dim() < d) return {false, rad, "the radical of the Killing form is a proper ideal"};
    std::vector<Vec> brackets;
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i + 1; j < d; ++j) brackets.push_back(l.bracket(unit_vec(f, d, i), unit_vec(f, d, j)));
    return {false, Subspace::span(f, d, brackets), "solvable: the derived algebra is a proper ideal"};
  }
  // Semisimple: simple iff the root graph of a split Cartan subalgebra is connected.
  try {
    CartanResult c = cartan_subalgebra(l);
    RootDatum rd = decompose_subspace(l, c.h, Subspace::whole(f, d));
    const size_t z = rd.zero_index();
    std::vector<size_t> nodes;
    for (size_t i = 0; i < rd.spaces.size(); ++i)
      if (i != z) nodes.push_back(i);
    std::vector<int> comp(rd.spaces.size(), -1);
    comp[nodes[0]] = 0;
    std::deque<size_t> queue{nodes[0]};
    while (!queue.empty()) {
      size_t a = queue.front();
      queue.pop_front();
      for (size_t b : nodes) {
        if (comp[b] >= 0) continue;
        bool linked = false;
        for (const auto& x : rd.spaces[a].basis())
          for (const auto& y : rd.spaces[b].basis())
            if (!is_zero(l.bracket(x, y))) linked = true;
        if (linked) {
          comp[b] = 0;
          queue.push_back(b);
        }
      }
    }
    std::vector<Vec> gens;
    bool connected = true;
    for (size_t b : nodes) {
      if (comp[b] < 0) connected = false;
      else
        for (const auto& x : rd.spaces[b].basis()) gens.push_back(x);
    }
    if (connected) return {true, std::nullopt, "semisimple with a connected root graph"};
    return {false, generated_ideal(l, gens), "semisimple with a disconnected root graph"};
  } catch (const Error&) {
  }
  for (size_t i = 0; i < d; ++i) {
    Subspace ideal = generated_ideal(l, {unit_vec(f, d, i)});
    if (ideal.dim() < d) return {false, ideal, "ideal generated by " + l.labels()[i] + " is proper"};
  }
  return {true, std::nullopt, "every basis vector generates the whole algebra as an ideal"};
}

// ---------------------------------------------------------------------------
// Cartan subalgebras

namespace {

bool lower_central_series_vanishes(const LieAlgebra& s, const Subspace& c) {
  std::vector<Vec> cur = c.basis();
  for (size_t step = 0; step <= c.dim() + 1; ++step) {
    std::vector<Vec> next;
    for (const auto& x : c.basis())
      for (const auto& y : cur) {
        Vec w = s.bracket(x, y);
        if (!is_zero(w)) next.push_back(std::move(w));
      }
    Subspace n = Subspace::span(s.field(), s.dim(), next);
    if (n.dim() == 0) return true;
    if (n.dim() == Subspace::span(s.field(), s.dim(), cur).dim()) return false;
    cur = n.basis();
  }
  return false;
}

// Dimension of the generalized 0-eigenspace of ad x on the ad x-stable subspace g.
size_t fitting_null_dim(const LieAlgebra& s, const Subspace& g, const Vec& x) {
  Mat r = restrict_to(s.ad(x), g);
  return nullspace(r.pow(static_cast<long>(g.dim()))).rows();
}

// Enumerate integer vectors of length r with entries in [-b, b], skipping those inside [-prev, prev].
template <class F>
bool enumerate_small(size_t r, long b, long prev, F&& visit) {
  if (r == 0) return false;
  std::vector<long> c(r, -b);
  while (true) {
    long mx = 0;
    for (long v : c) mx = std::max(mx, std::labs(v));
    if (mx > prev && visit(c)) return true;
    size_t i = 0;
    while (i < r && c[i] == b) c[i++] = -b;
    if (i == r) return false;
    ++c[i];
  }
}

}  // namespace

CartanResult cartan_subalgebra(const LieAlgebra& s, const Subspace& g) {
  const FieldContext& f = s.field();
  const size_t n = s.dim();
  if (g.dim() == 0) return {g, zero_vec(f, n)};
  bool nonsplit = false;
  auto split_semisimple = [&](const Vec& y) {
    Mat a = s.ad(y);
    if (a.is_diagonal()) return true;
    CycloPoly p = minimal_polynomial(a);
    if (poly_gcd(p, p.derivative()).degree() > 0) return false;
    try {
      split_into_linear_factors(p);
    } catch (const NonSplittingError&) {
      nonsplit = true;
      return false;
    }
    return true;
  };

  std::vector<Vec> toral;
  EchelonBuilder tspan(f, n);
  Subspace c = g;
  bool fallback = false;
  while (c.dim() > toral.size()) {
    std::vector<Vec> cands;
    for (const auto& b : c.basis()) cands.push_back(b);
    const auto& cb = c.basis();
    for (size_t i = 0; i < cb.size() && cands.size() < 400; ++i)
      for (size_t j = i + 1; j < cb.size() && cands.size() < 400; ++j) {
        cands.push_back(cb[i] + cb[j]);
        cands.push_back(cb[i] - cb[j]);
      }
    std::optional<Vec> pick;
    for (int pass = 0; pass < 2 && !pick; ++pass)
      for (const auto& y : cands) {
        Vec r = y;
        if (tspan.reduce(r)) continue;
        bool ok = pass == 0 ? s.ad(y).is_diagonal() : split_semisimple(y);
        if (ok) {
          pick = y;
          break;
        }
      }
    if (!pick) {
      if (nonsplit) throw Error(ErrorCode::NonSplitCartan, "cartan_subalgebra", "ad-semisimple elements with eigenvalues outside the field");
      fallback = true;
      break;
    }
    toral.push_back(*pick);
    tspan.add(*pick);
    c = kernel_in(s.ad(*pick), c);
  }

  if (fallback) {
    // No further toral element: accept the centralizer if it is nilpotent and self-normalizing.
    if (!lower_central_series_vanishes(s, c))
      throw Error(ErrorCode::NoRegularElementFound, "cartan_subalgebra", "centralizer of the toral part is not nilpotent");
    for (long bound : {3L, 5L}) {
      std::optional<Vec> found;
      enumerate_small(g.dim(), bound, bound == 3 ? 0 : 3, [&](const std::vector<long>& co) {
        Vec x = zero_vec(f, n);
        for (size_t i = 0; i < co.size(); ++i)
          if (co[i]) axpy(x, Cyclo(f, co[i]), g.basis_vector(i));
        if (!c.contains(x) || is_zero(x)) return false;
        if (fitting_null_dim(s, g, x) != c.dim()) return false;
        found = x;
        return true;
      });
      if (found) return {c, *found};
    }
    throw Error(ErrorCode::NoRegularElementFound, "cartan_subalgebra", "no regular element within coefficient bound 5");
  }

  Subspace h = Subspace::span(f, n, toral);
  RootDatum rd = decompose_subspace(s, h, g);
  for (long bound : {3L, 5L}) {
    std::optional<Vec> found;
    enumerate_small(h.dim(), bound, bound == 3 ? 0 : 3, [&](const std::vector<long>& co) {
      for (const auto& w : rd.weights) {
        if (std::all_of(w.begin(), w.end(), [](const Cyclo& x) { return x.is_zero(); })) continue;
        Cyclo v(f);
        for (size_t i = 0; i < co.size(); ++i) v.add_mul(Cyclo(f, co[i]), w[i]);
        if (v.is_zero()) return false;
      }
      Vec x = zero_vec(f, n);
      for (size_t i = 0; i < co.size(); ++i)
        if (co[i]) axpy(x, Cyclo(f, co[i]), h.basis_vector(i));
      if (kernel_in(s.ad(x), g).dim() != h.dim()) return false;
      found = x;
      return true;
    });
    if (found) return {h, *found};
  }
  throw Error(ErrorCode::NoRegularElementFound, "cartan_subalgebra", "no regular element within coefficient bound 5");
}

// ---------------------------------------------------------------------------
// Root spaces

std::optional<size_t> RootDatum::find_weight(const Vec& w) const {
  for (size_t i = 0; i < weights.size(); ++i)
    if (weights[i] == w) return i;
  return std::nullopt;
}

std::optional<size_t> RootDatum::find_root(const IntVec& c) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == c) return i;
  return std::nullopt;
}

Vec RootDatum::weight_of(const IntVec& c) const {
  const FieldContext& f = cartan.field();
  Vec w = zero_vec(f, cartan.dim());
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    auto k = find_root(unit_iv(c.size(), i));
    if (!k) throw Error(ErrorCode::RootNotInSystem, "weight_of", "simple root without a root space");
    axpy(w, Cyclo(f, c[i]), weights[*k]);
  }
  return w;
}

size_t RootDatum::zero_index() const {
  for (size_t i = 0; i < weights.size(); ++i)
    if (std::all_of(weights[i].begin(), weights[i].end(), [](const Cyclo& x) { return x.is_zero(); })) return i;
  return weights.size();
}

std::vector<std::vector<Rational>> rational_weight_coordinates(const std::vector<Vec>& weights) {
  std::vector<std::vector<Rational>> out;
  bool all_rational = true;
  for (const auto& w : weights)
    for (const auto& x : w) all_rational = all_rational && x.is_rational();
  if (all_rational) {
    for (const auto& w : weights) {
      std::vector<Rational> q;
      for (const auto& x : w) q.push_back(x.rational());
      out.push_back(std::move(q));
    }
    return out;
  }
  const FieldContext& f = weights[0][0].field();
  const size_t r = weights[0].size();
  EchelonBuilder eb(f, r);
  std::vector<Vec> basis;
  for (const auto& w : weights)
    if (eb.add(w)) basis.push_back(w);
  Mat b = Mat::from_cols(f, r, basis);
  for (const auto& w : weights) {
    auto c = solve(b, w);
    std::vector<Rational> q;
    for (const auto& x : *c) {
      if (!x.is_rational())
        throw Error(ErrorCode::NonSplitWeights, "rational_weight_coordinates", "weights are not rational over a weight basis");
      q.push_back(x.rational());
    }
    out.push_back(std::move(q));
  }
  return out;
}

RootDatum decompose_subspace(const LieAlgebra& s, const Subspace& h, const Subspace& w) {
  const FieldContext& f = s.field();
  const size_t n = s.dim();
  struct Piece {
    Vec weight;
    Subspace space;
  };
  std::vector<Piece> pieces{{Vec{}, w}};
  for (const auto& hb : h.basis()) {
    Mat m = s.ad(hb);
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      if (piece.space.dim() == 0) continue;
      Mat r = restrict_to(m, piece.space);
      std::vector<std::pair<Cyclo, Subspace>> eig;
      if (r.is_diagonal()) {
        std::vector<std::pair<Cyclo, std::vector<Vec>>> groups;
        for (size_t i = 0; i < r.rows(); ++i) {
          auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == r(i, i); });
          if (it == groups.end()) groups.push_back({r(i, i), {piece.space.basis_vector(i)}});
          else it->second.push_back(piece.space.basis_vector(i));
        }
        for (auto& g : groups) eig.push_back({g.first, Subspace::span(f, n, g.second)});
      } else {
        CycloPoly p = minimal_polynomial(r);
        if (poly_gcd(p, p.derivative()).degree() > 0)
          throw Error(ErrorCode::NotAdDiagonalizable, "root_space_decomposition", "ad(h) is not semisimple");
        std::vector<RootWithMultiplicity> roots;
        try {
          roots = split_into_linear_factors(p);
        } catch (const NonSplittingError& e) {
          throw Error(ErrorCode::NotAdDiagonalizable, "root_space_decomposition",
                      "eigenvalues of ad(h) do not split: " + e.factor().to_string());
        }
        for (const auto& rt : roots)
          eig.push_back({rt.root, kernel_in(m - Mat::identity(f, n).scaled(rt.root), piece.space)});
      }
      size_t total = 0;
      for (auto& [val, sp] : eig) {
        total += sp.dim();
        Vec wt = piece.weight;
        wt.push_back(val);
        next.push_back({std::move(wt), std::move(sp)});
      }
      if (total != piece.space.dim())
        throw Error(ErrorCode::NotAdDiagonalizable, "root_space_decomposition", "eigenspaces do not fill the space");
    }
    pieces = std::move(next);
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return weight_less(a.weight, b.weight); });

  RootDatum rd;
  rd.cartan = h;
  rd.ambient = w;
  for (auto& p : pieces) {
    rd.weights.push_back(std::move(p.weight));
    rd.spaces.push_back(std::move(p.space));
  }
  try {
    auto ident = identify_rational_roots(rational_weight_coordinates(rd.weights));
    rd.coords = ident.coords;
    rd.roots = std::move(ident.system);
  } catch (const Error& e) {
    rd.identification_error = e.what();
  }
  return rd;
}

RootDatum root_space_decomposition(const LieAlgebra& s, const Subspace& h) {
  RootDatum rd = decompose_subspace(s, h, Subspace::whole(s.field(), s.dim()));
  for (size_t a = 0; a < rd.spaces.size(); ++a)
    for (size_t b = a; b < rd.spaces.size(); ++b) {
      auto k = rd.find_weight(rd.weights[a] + rd.weights[b]);
      for (const auto& x : rd.spaces[a].basis())
        for (const auto& y : rd.spaces[b].basis()) {
          Vec z = s.bracket(x, y);
          if (k ? !rd.spaces[*k].contains(z) : !is_zero(z))
            throw Error(ErrorCode::ExtensionInconsistent, "root_space_decomposition", "[s_a, s_b] not in s_{a+b}");
        }
    }
  return rd;
}

// ---------------------------------------------------------------------------
// Modules

const char* module_identity_name(ModuleIdentity m) {
  switch (m) {
    case ModuleIdentity::Adjoint: return "adjoint";
    case ModuleIdentity::LittleAdjoint: return "little_adjoint";
    case ModuleIdentity::Symmetric: return "symmetric";
    case ModuleIdentity::Trivial: return "trivial";
    case ModuleIdentity::Other: return "other";
  }
  return "other";
}

ModuleReport analyze_module(const LieAlgebra& s, const Subspace& g, const Subspace& h, const Subspace& v) {
  return analyze_module(s, g, decompose_subspace(s, h, g), v);
}

ModuleReport analyze_module(const LieAlgebra& s, const Subspace& g, const RootDatum& rg, const Subspace& v) {
  const FieldContext& f = s.field();
  const size_t n = s.dim();
  if (!rg.roots)
    throw Error(ErrorCode::NotARootSystem, "analyze_module", "roots of g not identified: " + rg.identification_error);
  for (const auto& x : g.basis())
    for (const auto& y : v.basis())
      if (!v.contains(s.bracket(x, y))) throw Error(ErrorCode::NotStable, "analyze_module", "[g, V] is not contained in V");

  const RootSystem& d = *rg.roots;
  const size_t l = d.rank();
  std::vector<Mat> raise, lower;
  std::vector<Vec> simple_weights;
  for (size_t i = 0; i < l; ++i) {
    auto pi = rg.find_root(unit_iv(l, i)), ni = rg.find_root(unit_iv(l, i, -1));
    raise.push_back(s.ad(rg.spaces[*pi].basis_vector(0)));
    lower.push_back(s.ad(rg.spaces[*ni].basis_vector(0)));
    simple_weights.push_back(rg.weights[*pi]);
  }
  const Mat sw = Mat::from_cols(f, rg.cartan.dim(), simple_weights);
  auto coords_of = [&](const Vec& mu) -> std::optional<IntVec> {
    auto c = solve(sw, mu);
    if (!c || sw * *c != mu) return std::nullopt;
    IntVec iv;
    for (const auto& x : *c) {
      if (!x.is_rational() || x.rational().get_den() != 1) return std::nullopt;
      iv.push_back(x.rational().get_num().get_si());
    }
    return iv;
  };

  RootDatum vd;
  try {
    vd = decompose_subspace(s, rg.cartan, v);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAdDiagonalizable || e.code() == ErrorCode::NonSplittingPolynomial)
      throw Error(ErrorCode::NonSplitWeights, "analyze_module", e.detail());
    throw;
  }

  RootVariants var = derive_variants(d);
  const bool b_like = d.type().family == Family::B || (d.type().family == Family::A && l == 1);
  IntVec two_sh = var.theta_sh;
  for (auto& x : two_sh) x *= 2;

  ModuleReport rep;
  const size_t z = vd.zero_index();
  for (size_t i = 0; i < vd.spaces.size(); ++i)
    if (i != z && vd.spaces[i].dim() != 1) rep.multiplicity_free_nonzero = false;

  size_t covered = 0;
  for (size_t k = 0; k < vd.spaces.size(); ++k) {
    Subspace hw = vd.spaces[k];
    for (const auto& e : raise) hw = kernel_in(e, hw);
    if (hw.dim() == 0) continue;
    EchelonBuilder eb(f, n);
    std::deque<Vec> queue;
    eb.add(hw.basis_vector(0));
    queue.push_back(hw.basis_vector(0));
    while (!queue.empty()) {
      Vec x = std::move(queue.front());
      queue.pop_front();
      for (const auto& fm : lower) {
        Vec y = fm * x;
        if (eb.add(y)) queue.push_back(std::move(y));
      }
    }
    Subspace m = Subspace::span(f, n, eb.rows());
    Summand sm;
    sm.highest_weight = vd.weights[k];
    sm.dimension = m.dim();
    sm.multiplicity = hw.dim();
    covered += sm.dimension * sm.multiplicity;
    auto hc = coords_of(vd.weights[k]);
    if (hc) sm.highest_weight_coords = *hc;
    const bool zero = k == z;
    if (zero) sm.identity = ModuleIdentity::Trivial;
    else if (hc && *hc == var.theta) sm.identity = ModuleIdentity::Adjoint;
    else if (hc && var.theta_sh != var.theta && *hc == var.theta_sh) sm.identity = ModuleIdentity::LittleAdjoint;
    else if (hc && b_like && *hc == two_sh) sm.identity = ModuleIdentity::Symmetric;

    if (sm.identity == ModuleIdentity::Trivial) {
      sm.weights_checked = sm.dimension == 1;
    } else if (sm.identity != ModuleIdentity::Other) {
      std::set<IntVec> expected;
      if (sm.identity == ModuleIdentity::Adjoint)
        for (const auto& a : d.nonzero_roots()) expected.insert(a);
      if (sm.identity == ModuleIdentity::LittleAdjoint)
        for (const auto& a : var.sh) expected.insert(a);
      if (sm.identity == ModuleIdentity::Symmetric)
        for (const auto& a : var.en.nonzero_roots()) expected.insert(a);
      std::set<IntVec> seen;
      bool ok = true;
      for (size_t j = 0; j < vd.spaces.size() && ok; ++j) {
        if (j == z) continue;
        size_t mult = m.intersect(vd.spaces[j]).dim();
        if (mult == 0) continue;
        auto c = coords_of(vd.weights[j]);
        if (mult != 1 || !c || !expected.count(*c)) ok = false;
        else seen.insert(*c);
      }
      sm.weights_checked = ok && seen == expected;
    }
    rep.summands.push_back(std::move(sm));
  }
  if (covered != v.dim())
    throw Error(ErrorCode::ExtensionInconsistent, "analyze_module", "highest-weight summands do not exhaust V");

  size_t nontrivial = 0;
  bool shape = true;
  for (const auto& sm : rep.summands) {
    if (sm.identity == ModuleIdentity::Trivial) continue;
    nontrivial += sm.multiplicity;
    if (sm.identity == ModuleIdentity::Other || !sm.weights_checked || sm.dimension <= 1) shape = false;
  }
  rep.a2_shape = shape && nontrivial <= 1;
  return rep;
}

// ---------------------------------------------------------------------------
// Homomorphisms from generators

Mat extend_generator_map(const LieAlgebra& s, const LieAlgebra& target,
                         const std::vector<std::pair<Vec, Vec>>& gens, const std::string& op) {
  const FieldContext& f = s.field();
  const size_t d = s.dim();
  EchelonBuilder eb(f, d);
  std::vector<Vec> src, img;
  std::deque<size_t> queue;
  for (const auto& [a, b] : gens)
    if (eb.add(a)) {
      src.push_back(a);
      img.push_back(b);
      queue.push_back(src.size() - 1);
    }
  while (!queue.empty() && eb.dim() < d) {
    size_t k = queue.front();
    queue.pop_front();
    for (const auto& [a, b] : gens) {
      Vec u = s.bracket(a, src[k]);
      if (!eb.add(u)) continue;
      src.push_back(std::move(u));
      img.push_back(target.bracket(b, img[k]));
      queue.push_back(src.size() - 1);
    }
  }
  if (eb.dim() < d) throw Error(ErrorCode::ExtensionInconsistent, op, "generators do not generate the algebra");
  Mat v = Mat::from_cols(f, d, src);
  Mat w = Mat::from_cols(target.field(), target.dim(), img);
  Mat phi = w * *inverse(v);
  if (!s.is_homomorphism(phi, target)) throw Error(ErrorCode::ExtensionInconsistent, op, "propagated map is not a homomorphism");
  return phi;
}

// ---------------------------------------------------------------------------
// Chevalley bases

namespace {

struct Generated {
  LieAlgebra algebra;
  std::vector<Vec> e, f;
};

// Simply-laced algebra from the bimultiplicative sign cocycle:
// [E_a, E_b] = eps(a,b) E_{a+b}, [E_a, E_-a] = -a, [h_i, E_a] = (alpha_i | a) E_a.
Generated simply_laced_raw(const RootSystemType& t, const FieldContext& f) {
  RootSystem d = build_root_system(t);
  const IntMat& n = d.cartan();
  const size_t l = d.rank();
  auto pos = d.positive_roots();
  const size_t np = pos.size(), dim = 2 * np + l;
  std::vector<IntVec> root_of(dim);
  std::map<IntVec, size_t> index;
  for (size_t k = 0; k < np; ++k) {
    root_of[k] = pos[k];
    root_of[np + l + k] = neg_iv(pos[k]);
    index[pos[k]] = k;
    index[neg_iv(pos[k])] = np + l + k;
  }
  auto is_h = [&](size_t i) { return i >= np && i < np + l; };
  auto eps = [&](const IntVec& a, const IntVec& b) {
    long e = 0;
    for (size_t i = 0; i < l; ++i) {
      e += a[i] * b[i];
      for (size_t j = i + 1; j < l; ++j)
        if (n[i][j] != 0) e += a[i] * b[j];
    }
    return (e % 2 == 0) ? 1L : -1L;
  };
  auto h_pair = [&](size_t i, const IntVec& a) {  // (alpha_i | a)
    long v = 0;
    for (size_t j = 0; j < l; ++j) v += a[j] * n[j][i];
    return v;
  };
  std::vector<SparseVec> upper(dim * dim);
  for (size_t a = 0; a < dim; ++a)
    for (size_t b = a + 1; b < dim; ++b) {
      SparseVec& out = upper[a * dim + b];
      if (is_h(a) && is_h(b)) continue;
      if (is_h(a) || is_h(b)) {
        size_t hi = is_h(a) ? a : b, ri = is_h(a) ? b : a;
        long c = h_pair(hi - np, root_of[ri]);
        if (c != 0) out.push_back({ri, Cyclo(f, is_h(a) ? c : -c)});
        continue;
      }
      const IntVec& x = root_of[a];
      const IntVec& y = root_of[b];
      IntVec sum(l);
      for (size_t i = 0; i < l; ++i) sum[i] = x[i] + y[i];
      if (std::all_of(sum.begin(), sum.end(), [](long v) { return v == 0; })) {
        for (size_t i = 0; i < l; ++i)
          if (x[i] != 0) out.push_back({np + i, Cyclo(f, -x[i])});
      } else if (auto it = index.find(sum); it != index.end()) {
        out.push_back({it->second, Cyclo(f, eps(x, y))});
      }
    }
  std::vector<std::string> labels(dim);
  for (size_t i = 0; i < dim; ++i) labels[i] = is_h(i) ? "h" + std::to_string(i - np + 1) : "E" + intvec_to_string(root_of[i]);
  Generated g{LieAlgebra(f, dim, labels, std::move(upper), true), {}, {}};
  for (size_t i = 0; i < l; ++i) {
    g.e.push_back(unit_vec(f, dim, index[unit_iv(l, i)]));
    g.f.push_back(scale(Cyclo(f, -1L), unit_vec(f, dim, index[unit_iv(l, i, -1)])));
  }
  return g;
}

// Rebuild a Chevalley basis of type t inside r from simple generators e_i, f_i.
ChevalleyAlgebra chevalley_from_generators(const LieAlgebra& r, const std::vector<Vec>& e, const std::vector<Vec>& fv,
                                           const RootSystemType& t) {
  const FieldContext& f = r.field();
  RootSystem d = build_root_system(t);
  const size_t l = d.rank();
  auto pos = d.positive_roots();
  const size_t np = pos.size(), dim = 2 * np + l;
  if (r.dim() != dim) throw Error(ErrorCode::ExtensionInconsistent, "chevalley_basis", "dimension mismatch in realization");
  std::vector<Vec> h;
  for (size_t i = 0; i < l; ++i) h.push_back(r.bracket(e[i], fv[i]));
  auto coroot = [&](const IntVec& a) {
    Vec v = zero_vec(f, r.dim());
    Rational na = d.form(a, a);
    for (size_t i = 0; i < l; ++i) {
      if (a[i] == 0) continue;
      IntVec ai = unit_iv(l, i);
      axpy(v, Cyclo(f, Rational(a[i]) * d.form(ai, ai) / na), h[i]);
    }
    return v;
  };
  std::map<IntVec, Vec> x;
  for (size_t i = 0; i < l; ++i) {
    x[unit_iv(l, i)] = e[i];
    x[unit_iv(l, i, -1)] = fv[i];
  }
  for (const auto& xi : pos) {
    if (d.height(xi) == 1) continue;
    size_t i = 0;
    IntVec beta;
    for (; i < l; ++i) {
      beta = xi;
      beta[i] -= 1;
      if (d.contains(beta) && std::all_of(beta.begin(), beta.end(), [](long v) { return v >= 0; })) break;
    }
    long p = 0;
    while (true) {
      IntVec c = beta;
      c[i] -= p + 1;
      if (!d.contains(c)) break;
      ++p;
    }
    Vec up = scale(Cyclo(f, Rational(1, p + 1)), r.bracket(e[i], x[beta]));
    Vec down = r.bracket(fv[i], x[neg_iv(beta)]);
    Vec c = r.bracket(up, down);
    Vec target = coroot(xi);
    size_t k = 0;
    while (k < c.size() && c[k].is_zero()) ++k;
    if (k == c.size()) throw Error(ErrorCode::ExtensionInconsistent, "chevalley_basis", "vanishing root vector");
    Cyclo lambda = target[k] / c[k];
    if (scale(lambda, c) != target) throw Error(ErrorCode::ExtensionInconsistent, "chevalley_basis", "coroot normalization");
    x[xi] = std::move(up);
    x[neg_iv(xi)] = scale(lambda, down);
  }
  std::vector<Vec> basis;
  std::vector<IntVec> roots;
  std::vector<std::string> labels;
  for (const auto& a : pos) {
    basis.push_back(x[a]);
    roots.push_back(a);
    labels.push_back("e" + intvec_to_string(a));
  }
  for (size_t i = 0; i < l; ++i) {
    basis.push_back(h[i]);
    roots.push_back(IntVec(l, 0));
    labels.push_back("h" + std::to_string(i + 1));
  }
  for (const auto& a : pos) {
    basis.push_back(x[neg_iv(a)]);
    roots.push_back(neg_iv(a));
    labels.push_back("f" + intvec_to_string(a));
  }
  Subspace span = Subspace::span(f, r.dim(), basis);
  if (span.dim() != dim) throw Error(ErrorCode::ExtensionInconsistent, "chevalley_basis", "root vectors are dependent");
  Mat to_span(f, dim, dim);
  for (size_t j = 0; j < dim; ++j) to_span.set_col(j, *span.coordinates(basis[j]));
  Mat from_span = *inverse(to_span);
  std::vector<SparseVec> upper(dim * dim);
  for (size_t a = 0; a < dim; ++a)
    for (size_t b = a + 1; b < dim; ++b) {
      Vec c = from_span * *span.coordinates(r.bracket(basis[a], basis[b]));
      for (const auto& v : c)
        if (!v.is_zero() && (!v.is_rational() || v.rational().get_den() != 1))
          throw Error(ErrorCode::ExtensionInconsistent, "chevalley_basis", "non-integral structure constant");
      upper[a * dim + b] = sparse_of(c);
    }
  ChevalleyAlgebra out{LieAlgebra(f, dim, labels, std::move(upper), true), {}, d, roots};
  std::vector<Vec> hs;
  for (size_t i = 0; i < l; ++i) {
    size_t pi = static_cast<size_t>(std::find(pos.begin(), pos.end(), unit_iv(l, i)) - pos.begin());
    out.ep.e.push_back(unit_vec(f, dim, pi));
    out.ep.f.push_back(unit_vec(f, dim, np + l + pi));
    out.ep.h.push_back(unit_vec(f, dim, np + i));
    hs.push_back(out.ep.h.back());
  }
  out.ep.cartan = Subspace::span(f, dim, hs);
  out.ep.cartan_matrix = d.cartan();
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j) {
      Vec c = out.algebra.bracket(out.ep.h[i], out.ep.e[j]);
      if (c != scale(Cyclo(f, d.cartan()[j][i]), out.ep.e[j]))
        throw Error(ErrorCode::ExtensionInconsistent, "chevalley_basis", "Cartan integers do not match");
    }
  return out;
}

struct Folding {
  RootSystemType raw;
  std::vector<std::vector<size_t>> orbits;  // 1-based raw nodes per folded node
};

Folding folding_for(const RootSystemType& t) {
  const unsigned l = t.rank;
  Folding fo;
  switch (t.family) {
    case Family::B:
      if (l == 2) {
        fo.raw = {Family::A, 3};
        fo.orbits = {{2}, {1, 3}};
      } else {
        fo.raw = {Family::D, l + 1};
        for (unsigned i = 1; i < l; ++i) fo.orbits.push_back({i});
        fo.orbits.push_back({l, l + 1});
      }
      break;
    case Family::C:
      fo.raw = {Family::A, 2 * l - 1};
      for (unsigned i = 1; i < l; ++i) fo.orbits.push_back({i, 2 * l - i});
      fo.orbits.push_back({l});
      break;
    case Family::F:
      fo.raw = {Family::E, 6};
      fo.orbits = {{2}, {4}, {3, 5}, {1, 6}};
      break;
    case Family::G:
      fo.raw = {Family::D, 4};
      fo.orbits = {{1, 3, 4}, {2}};
      break;
    default:
      throw Error(ErrorCode::InvalidType, "chevalley_basis", "no folding for " + t.name());
  }
  return fo;
}

}  // namespace

ChevalleyAlgebra chevalley_basis(const RootSystemType& t, const FieldContext& f) {
  if (!t.reduced()) throw Error(ErrorCode::InvalidType, "chevalley_basis", "non-reduced type " + t.name());
  if (!is_admissible(t) && !(t.family == Family::C && t.rank == 2) && !(t.family == Family::D && t.rank == 3))
    throw Error(ErrorCode::InvalidType, "chevalley_basis", t.name() + " is not admissible");
  const bool simply_laced = t.family == Family::A || t.family == Family::D || t.family == Family::E;
  if (simply_laced) {
    Generated g = simply_laced_raw(t, f);
    return chevalley_from_generators(g.algebra, g.e, g.f, t);
  }
  Folding fo = folding_for(t);
  Generated raw = simply_laced_raw(fo.raw, f);
  const size_t rl = fo.raw.rank;
  std::vector<size_t> perm(rl);
  for (size_t i = 0; i < rl; ++i) perm[i] = i;
  for (const auto& orb : fo.orbits)
    for (size_t k = 0; k < orb.size(); ++k) perm[orb[k] - 1] = orb[(k + 1) % orb.size()] - 1;
  std::vector<std::pair<Vec, Vec>> gens;
  for (size_t i = 0; i < rl; ++i) {
    gens.push_back({raw.e[i], raw.e[perm[i]]});
    gens.push_back({raw.f[i], raw.f[perm[i]]});
  }
  Mat sigma = extend_generator_map(raw.algebra, raw.algebra, gens, "chevalley_basis");
  Subspace fixed = kernel_in(sigma - Mat::identity(f, raw.algebra.dim()), Subspace::whole(f, raw.algebra.dim()));
  LieAlgebra sub = raw.algebra.subalgebra(fixed);
  std::vector<Vec> e, fv;
  for (const auto& orb : fo.orbits) {
    Vec se = zero_vec(f, raw.algebra.dim()), sf = se;
    for (size_t node : orb) {
      se = se + raw.e[node - 1];
      sf = sf + raw.f[node - 1];
    }
    e.push_back(*fixed.coordinates(se));
    fv.push_back(*fixed.coordinates(sf));
  }
  return chevalley_from_generators(sub, e, fv, t);
}

}  // namespace lietorus
