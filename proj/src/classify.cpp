#include "lietorus/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace lietorus {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

// Inverse of a modulo m (gcd 1 assumed).
long inv_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, r = mod(a, m);
  while (r != 0) {
    long q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return mod(x, m);
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  const size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  IntMat r(n, std::vector<long>(c, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < c; ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

void col_add(IntMat& a, size_t dst, size_t src, long k) {
  for (auto& row : a) row[dst] += k * row[src];
}

void col_swap(IntMat& a, size_t x, size_t y) {
  for (auto& row : a) std::swap(row[x], row[y]);
}

void col_neg(IntMat& a, size_t x) {
  for (auto& row : a) row[x] = -row[x];
}

// Leibniz expansion for small n, exact determinant otherwise.
long det_mod(const IntMat& a, long m) {
  const size_t n = a.size();
  if (n > 4) return mod(mpz_class(zmat_det(to_zmat(a)) % m).get_si(), m);
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  __int128 total = 0;
  do {
    __int128 term = 1;
    for (size_t i = 0; i < n; ++i) term = term * mod(a[i][perm[i]], m) % m;
    size_t inversions = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return mod(static_cast<long>(total % m), m);
}

}  // namespace

bool congruent_mod_rows(const IntMat& a, const IntMat& b, const std::vector<long>& m) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (mod(a[i][j] - b[i][j], m[i]) != 0) return false;
  return true;
}

NormalForm normalize_mod_ideal(const IntMat& a0, const std::vector<long>& m, const IntMat& b) {
  const size_t n = m.size();
  if (a0.size() != n || b.size() != n) throw Error(ErrorCode::DimensionMismatch, "normalize_mod_ideal", "A, B and m must have size n");
  for (size_t i = 0; i < n; ++i) {
    if (m[i] <= 0) throw Error(ErrorCode::DivisibilityChainViolated, "normalize_mod_ideal", "moduli must be positive");
    if (i + 1 < n && m[i] % m[i + 1] != 0)
      throw Error(ErrorCode::DivisibilityChainViolated, "normalize_mod_ideal",
                  "m_" + std::to_string(i + 2) + " does not divide m_" + std::to_string(i + 1));
  }
  IntMat id(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  if (!congruent_mod_rows(mat_mul(a0, b), id, m)) throw Error(ErrorCode::NotAWitness, "normalize_mod_ideal", "A B is not the identity modulo the ideal");

  IntMat a = a0, p = id;
  auto reduce_rows = [&] {
    for (size_t i = 0; i < n; ++i)
      for (auto& x : a[i]) x = mod(x, m[i]);
  };
  auto both = [&](auto op) {
    op(a);
    op(p);
  };
  reduce_rows();
  long d = 0;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) a[k][k] += m[k];
    for (int pass = 0; pass < 2; ++pass) {
      // gcd of row k over columns k..n-1 lands in column k.
      while (true) {
        size_t piv = n;
        for (size_t j = k; j < n; ++j)
          if (a[k][j] != 0 && (piv == n || std::labs(a[k][j]) < std::labs(a[k][piv]))) piv = j;
        bool single = true;
        for (size_t j = k; j < n; ++j)
          if (j != piv && a[k][j] != 0) {
            single = false;
            const long q = a[k][j] / a[k][piv];
            both([&](IntMat& x) { col_add(x, j, piv, -q); });
          }
        if (single) {
          if (piv != k) both([&](IntMat& x) { col_swap(x, k, piv); });
          break;
        }
      }
      if (a[k][k] < 0) both([&](IntMat& x) { col_neg(x, k); });
      if (pass == 0 && k + 1 < n) a[k][n - 1] = m[k];  // unchanged modulo the ideal
      else break;
    }
    d = a[k][k];
    if (std::gcd(d, m[k]) != 1) throw Error(ErrorCode::NotAWitness, "normalize_mod_ideal", "pivot is not a unit");
    const long dinv = inv_mod(d, m[k]);
    for (size_t j = 0; j < k; ++j) {
      const long c = mod(a[k][j] * dinv, m[k]);
      if (c != 0) both([&](IntMat& x) { col_add(x, j, k, -c); });
    }
    reduce_rows();
  }
  const long mn = m[n - 1];
  long pv = mod(d, mn);
  if (mn == 1) pv = 0;
  else if (pv > mn / 2) {
    both([&](IntMat& x) { col_neg(x, n - 1); });
    pv = mn - pv;
  }
  IntMat target = id;
  target[n - 1][n - 1] = pv;
  if (!congruent_mod_rows(mat_mul(a0, p), target, m))
    throw Error(ErrorCode::NotAWitness, "normalize_mod_ideal", "internal check A P == diag(1,...,1,p) failed");
  const long dm = det_mod(a0, mn);
  if (mn > 1 && dm != pv && dm != mod(-pv, mn))
    throw Error(ErrorCode::NotAWitness, "normalize_mod_ideal", "internal check p == +-det A failed");
  return {p, pv};
}

std::vector<long> orbit_representatives(const std::vector<long>& f, size_t n) {
  if (f.size() > n)
    throw Error(ErrorCode::TooFewSlots, "orbit_representatives",
                "the group needs " + std::to_string(f.size()) + " generators but only " + std::to_string(n) + " slots are given");
  const long mn = f.size() == n && n > 0 ? f.back() : 1;
  if (mn == 1) return {0};
  std::vector<long> out;
  for (long p = 0; p <= mn / 2; ++p)
    if (std::gcd(p, mn) == 1) out.push_back(p);
  return out;
}

AbelianGroup::AbelianGroup(std::vector<long> factors, bool addition_table) : f_(std::move(factors)) {
  for (long x : f_) order_ *= x;
  if (addition_table && order_ <= 512) {
    sum_.resize(order_ * order_);
    for (long x = 0; x < order_; ++x)
      for (long y = 0; y < order_; ++y) sum_[x * order_ + y] = static_cast<int>(add_digits(x, y));
  }
}

std::vector<long> AbelianGroup::digits(long x) const {
  std::vector<long> d(f_.size());
  for (size_t i = f_.size(); i-- > 0;) {
    d[i] = x % f_[i];
    x /= f_[i];
  }
  return d;
}

long AbelianGroup::encode(const std::vector<long>& d) const {
  long x = 0;
  for (size_t i = 0; i < f_.size(); ++i) x = x * f_[i] + mod(d[i], f_[i]);
  return x;
}

long AbelianGroup::add(long x, long y) const {
  if (!sum_.empty()) return sum_[x * order_ + y];
  return add_digits(x, y);
}

long AbelianGroup::add_digits(long x, long y) const {
  long r = 0, place = 1;
  for (size_t i = f_.size(); i-- > 0;) {
    const long f = f_[i], d = x % f + y % f;
    r += (d >= f ? d - f : d) * place;
    place *= f;
    x /= f;
    y /= f;
  }
  return r;
}

long AbelianGroup::neg(long x) const {
  long r = 0, place = 1;
  for (size_t i = f_.size(); i-- > 0;) {
    const long f = f_[i], d = x % f;
    r += (d == 0 ? 0 : f - d) * place;
    place *= f;
    x /= f;
  }
  return r;
}

long AbelianGroup::mul(long x, long k) const {
  long r = 0, place = 1;
  for (size_t i = f_.size(); i-- > 0;) {
    const long f = f_[i];
    r += mod((x % f) * mod(k, f), f) * place;
    place *= f;
    x /= f;
  }
  return r;
}

bool AbelianGroup::generates(const std::vector<long>& elems) const {
  std::vector<char> seen(order_, 0);
  std::vector<long> q{0};
  seen[0] = 1;
  q.reserve(order_);
  for (size_t head = 0; head < q.size(); ++head)
    for (long e : elems) {
      long y = add(q[head], e);
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
    }
  return static_cast<long>(q.size()) == order_;
}

std::vector<GroupTuple> elementary_moves(const AbelianGroup& g, const GroupTuple& t) {
  std::vector<GroupTuple> out;
  const size_t n = t.size();
  if (n == 0) return out;
  GroupTuple u = t;
  u[0] = g.neg(u[0]);
  out.push_back(u);
  for (size_t i = 0; i + 1 < n; ++i) {
    u = t;
    std::swap(u[i], u[i + 1]);
    out.push_back(u);
    u = t;
    u[i + 1] = g.add(u[i + 1], u[i]);
    out.push_back(u);
    u = t;
    u[i] = g.add(u[i], u[i + 1]);
    out.push_back(u);
  }
  return out;
}

GroupTuple canonical_orbit_form(const AbelianGroup& g, const GroupTuple& t, size_t limit) {
  std::set<GroupTuple> seen{t};
  std::deque<GroupTuple> q{t};
  while (!q.empty()) {
    GroupTuple x = q.front();
    q.pop_front();
    for (auto& y : elementary_moves(g, x))
      if (seen.insert(y).second) {
        if (seen.size() > limit) throw Error(ErrorCode::OrbitTooLarge, "canonical_orbit_form", "orbit exceeds " + std::to_string(limit) + " tuples");
        q.push_back(std::move(y));
      }
  }
  return *seen.begin();
}

GroupTuple tuple_from_index(const AbelianGroup& g, size_t n, size_t index) {
  GroupTuple t(n);
  for (size_t i = n; i-- > 0;) {
    t[i] = static_cast<long>(index % g.order());
    index /= g.order();
  }
  return t;
}

std::vector<size_t> orbit_partition(const AbelianGroup& g, size_t n) {
  const size_t order = static_cast<size_t>(g.order());
  size_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= order;
  std::vector<size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // place[i] is the weight of slot i in the mixed-radix index.
  std::vector<size_t> place(n, 1);
  for (size_t i = n; i-- > 1;) place[i - 1] = place[i] * order;
  auto unite = [&](size_t k, size_t j) {
    size_t a = find(k), b = find(j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  GroupTuple t(n);
  for (size_t k = 0; k < total; ++k) {
    for (size_t i = 0, r = k; i < n; ++i) {
      t[i] = static_cast<long>(r / place[i]);
      r %= place[i];
    }
    auto with = [&](size_t i, long v) { return k + (static_cast<size_t>(v) - static_cast<size_t>(t[i])) * place[i]; };
    if (n > 0) unite(k, with(0, g.neg(t[0])));
    for (size_t i = 0; i + 1 < n; ++i) {
      const size_t swapped = with(i, t[i + 1]) + (static_cast<size_t>(t[i]) - static_cast<size_t>(t[i + 1])) * place[i + 1];
      unite(k, swapped);
      unite(k, with(i + 1, g.add(t[i + 1], t[i])));
      unite(k, with(i, g.add(t[i], t[i + 1])));
    }
  }
  for (size_t k = 0; k < total; ++k) parent[k] = find(k);
  return parent;
}

std::optional<IntMat> find_witness(const IntMat& a, const std::vector<long>& m) {
  const size_t n = m.size();
  AbelianGroup g(m, false);
  GroupTuple t(n);
  for (size_t j = 0; j < n; ++j) {
    std::vector<long> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = a[i][j];
    t[j] = g.encode(d);
  }
  // Breadth-first search from 0; each element remembers its predecessor and the slot used.
  const size_t order = static_cast<size_t>(g.order());
  std::vector<long> prev(order, -1);
  std::vector<unsigned> via(order, 0);
  std::vector<long> q{0};
  q.reserve(order);
  prev[0] = 0;
  for (size_t head = 0; head < q.size(); ++head)
    for (size_t j = 0; j < n; ++j) {
      long y = g.add(q[head], t[j]);
      if (prev[y] >= 0) continue;
      prev[y] = q[head];
      via[y] = static_cast<unsigned>(j);
      q.push_back(y);
    }
  IntMat b(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<long> d(n, 0);
    d[i] = 1;
    long x = g.encode(d);
    if (prev[x] < 0) return std::nullopt;
    for (; x != 0; x = prev[x]) b[via[x]][i] += 1;
  }
  return b;
}

long tuple_invariant_p(const AbelianGroup& g, const GroupTuple& t) {
  const size_t n = t.size(), r = g.factors().size();
  std::vector<long> m(n, 1);
  for (size_t i = 0; i < r; ++i) m[i] = g.factors()[i];
  IntMat a(n, std::vector<long>(n, 0));
  for (size_t j = 0; j < n; ++j) {
    auto d = g.digits(t[j]);
    for (size_t i = 0; i < r; ++i) a[i][j] = d[i];
  }
  auto b = find_witness(a, m);
  if (!b) throw Error(ErrorCode::NotAWitness, "tuple_invariant_p", "tuple does not generate the group");
  return normalize_mod_ideal(a, m, *b).p;
}

std::vector<std::vector<long>> abelian_groups_up_to(long bound) {
  std::vector<std::vector<long>> out{{}};
  std::vector<std::vector<long>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& c : frontier) {
      long prod = 1;
      for (long x : c) prod *= x;
      for (long f = 2; prod * f <= bound; ++f) {
        if (!c.empty() && c.back() % f != 0) continue;
        auto d = c;
        d.push_back(f);
        next.push_back(d);
        out.push_back(d);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<GroupElement> group_elements(const AutTuple& t) {
  std::vector<GroupElement> out;
  if (t.size() == 0) return out;
  const FieldContext& f = t.entries[0].matrix.field();
  const size_t d = t.entries[0].matrix.rows();
  IntVec e(t.size(), 0);
  unsigned long box = 1;
  for (const auto& a : t.entries) box *= a.order;
  for (unsigned long c = 0; c < box; ++c) {
    unsigned long rem = c;
    for (size_t i = t.size(); i-- > 0;) {
      e[i] = static_cast<long>(rem % t.entries[i].order);
      rem /= t.entries[i].order;
    }
    Mat m = Mat::identity(f, d);
    for (size_t i = 0; i < t.size(); ++i) m = m * t.entries[i].matrix.pow(e[i]);
    bool dup = false;
    for (const auto& g : out)
      if (g.matrix == m) {
        dup = true;
        break;
      }
    if (dup) continue;
    unsigned bound = 1;
    for (const auto& a : t.entries) bound = std::lcm(bound, a.order);
    out.push_back({e, m, matrix_order(m, bound)});
  }
  return out;
}

Fingerprint biiso_fingerprint(const MultiloopTorus& t) {
  Fingerprint fp;
  fp.invariant_factors = t.a_report.group.invariant_factors;
  const auto& dg = t.a_report.delta_g;
  fp.fixed_type = t.a_report.a1 && dg && dg->roots ? dg->roots->type().name() : "not simple";
  fp.delta_type = t.rd.roots ? t.rd.roots->type().name() : "unidentified";
  for (const auto& c : t.grading.components) fp.component_dims.push_back(c.dim());
  std::sort(fp.component_dims.begin(), fp.component_dims.end());
  const FieldContext& f = t.s.field();
  const size_t n = t.s.dim();
  const Subspace whole = Subspace::whole(f, n);
  for (const auto& g : group_elements(t.tuple)) {
    std::map<unsigned, size_t> by_order;
    const Cyclo z = zeta_of_order(f, g.order);
    for (unsigned k = 0; k < g.order; ++k) {
      size_t mult = kernel_in(g.matrix - Mat::identity(f, n).scaled(z.pow(k)), whole).dim();
      if (mult > 0) by_order[g.order / std::gcd(k, g.order)] += mult;
    }
    fp.eigen_profile.emplace_back(by_order.begin(), by_order.end());
    fp.fixed_dims.push_back(by_order.count(1) ? by_order[1] : 0);
  }
  std::sort(fp.eigen_profile.begin(), fp.eigen_profile.end());
  std::sort(fp.fixed_dims.begin(), fp.fixed_dims.end());
  return fp;
}

std::vector<std::string> fingerprint_difference(const Fingerprint& a, const Fingerprint& b) {
  std::vector<std::string> out;
  if (a.invariant_factors != b.invariant_factors) out.push_back("invariant_factors");
  if (a.fixed_type != b.fixed_type) out.push_back("fixed_type");
  if (a.delta_type != b.delta_type) out.push_back("delta_type");
  if (a.component_dims != b.component_dims) out.push_back("component_dims");
  if (a.eigen_profile != b.eigen_profile) out.push_back("eigen_profile");
  if (a.fixed_dims != b.fixed_dims) out.push_back("fixed_dims");
  return out;
}

namespace {

// tau acts on every root space by a scalar, multiplicatively in the root.
bool acts_by_character(const MultiloopTorus& t, const Mat& tau) {
  if (!t.rd.roots) return false;
  const size_t l = t.rd.roots->rank();
  std::vector<Cyclo> scalar(t.rd.spaces.size());
  for (size_t k = 0; k < t.rd.spaces.size(); ++k) {
    const Vec& v = t.rd.spaces[k].basis_vector(0);
    const size_t p = t.rd.spaces[k].pivots()[0];
    scalar[k] = (tau * v)[p];
    for (const auto& x : t.rd.spaces[k].basis())
      if (tau * x != scale(scalar[k], x)) return false;
  }
  for (size_t k = 0; k < t.rd.spaces.size(); ++k) {
    Cyclo c = Cyclo::one(t.s.field());
    for (size_t i = 0; i < l; ++i) {
      IntVec u(l, 0);
      u[i] = 1;
      c *= scalar[*t.rd.find_root(u)].pow(t.rd.coords[k][i]);
    }
    if (c != scalar[k]) return false;
  }
  return true;
}

}  // namespace

CertificateResult certificate_check(const MultiloopTorus& t, const MultiloopTorus& t2, const IntMat& p, const Mat& phi,
                                    CertificateMode mode, const AutTuple* tau) {
  if (phi.rows() != t2.s.dim() || phi.cols() != t.s.dim() || !inverse(phi) || !t.s.is_homomorphism(phi, t2.s))
    throw Error(ErrorCode::NotAnIsomorphism, "certificate_check", "phi is not an algebra isomorphism");
  if (t.nullity() != t2.nullity()) return {false, "nullities differ"};
  const Integer det = zmat_det(to_zmat(p));
  if (det != 1 && det != -1) return {false, "P is not in GL_n(Z)"};
  AutTuple base = t.tuple;
  if (mode == CertificateMode::Isotopy) {
    if (!tau || tau->size() != t.nullity())
      throw Error(ErrorCode::NotATorusAutomorphism, "certificate_check", "isotopy mode needs one twist per slot");
    std::vector<Automorphism> tw;
    for (size_t i = 0; i < t.nullity(); ++i) {
      const Mat& m = tau->entries[i].matrix;
      if (!acts_by_character(t, m))
        throw Error(ErrorCode::NotATorusAutomorphism, "certificate_check", "twist " + std::to_string(i + 1) + " is not of the form Ad(rho)");
      if (!m.pow(t.m[i]).is_identity())
        throw Error(ErrorCode::NotATorusAutomorphism, "certificate_check", "twist " + std::to_string(i + 1) + " does not satisfy tau^m = 1");
      tw.push_back(compose(tau->entries[i], t.tuple.entries[i]));
    }
    base = make_tuple(tw, t.m);
  }
  AutTuple sp = tuple_power_action(base, p);
  for (size_t j = 0; j < t.nullity(); ++j)
    if (t2.tuple.entries[j].matrix * phi != phi * sp.entries[j].matrix)
      return {false, "entry " + std::to_string(j + 1) + " of the target tuple is not the conjugate"};
  std::vector<Vec> img;
  for (const auto& x : t.h.basis()) img.push_back(phi * x);
  if (Subspace::span(t2.s.field(), t2.s.dim(), img) != t2.h) return {false, "phi(h) differs from h'"};
  return {true, mode == CertificateMode::Biiso ? "bi-isomorphism certified" : "isotopy certified"};
}

}  // namespace lietorus
