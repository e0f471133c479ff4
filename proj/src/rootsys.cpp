#include "lietorus/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace lietorus {

namespace {

const char* family_letter(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::BC: return "BC";
  }
  return "?";
}

IntVec add(const IntVec& a, const IntVec& b, long k = 1) {
  IntVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += k * b[i];
  return r;
}

bool is_zero_iv(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

long height_of(const IntVec& a) {
  long h = 0;
  for (long x : a) h += x;
  return h;
}

bool root_order(const IntVec& a, const IntVec& b) {
  long ha = height_of(a), hb = height_of(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

}  // namespace

std::string intvec_to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string RootSystemType::name() const { return std::string(family_letter(family)) + std::to_string(rank); }

RootSystemType RootSystemType::parse(const std::string& s) {
  RootSystemType t;
  size_t pos = 0;
  if (s.rfind("BC", 0) == 0) {
    t.family = Family::BC;
    pos = 2;
  } else if (!s.empty()) {
    switch (s[0]) {
      case 'A': t.family = Family::A; break;
      case 'B': t.family = Family::B; break;
      case 'C': t.family = Family::C; break;
      case 'D': t.family = Family::D; break;
      case 'E': t.family = Family::E; break;
      case 'F': t.family = Family::F; break;
      case 'G': t.family = Family::G; break;
      default: throw Error(ErrorCode::InvalidType, "parse_type", "unknown family in '" + s + "'");
    }
    pos = 1;
  }
  if (pos >= s.size() || !std::all_of(s.begin() + static_cast<long>(pos), s.end(), ::isdigit))
    throw Error(ErrorCode::InvalidType, "parse_type", "bad type string '" + s + "'");
  t.rank = static_cast<unsigned>(std::stoul(s.substr(pos)));
  return t;
}

bool is_admissible(const RootSystemType& t) {
  const unsigned l = t.rank;
  switch (t.family) {
    case Family::A: return l >= 1;
    case Family::B: return l >= 2;
    case Family::C: return l >= 3;
    case Family::D: return l >= 4;
    case Family::E: return l >= 6 && l <= 8;
    case Family::F: return l == 4;
    case Family::G: return l == 2;
    case Family::BC: return l >= 1;
  }
  return false;
}

IntMat cartan_matrix(Family f, unsigned l) {
  IntMat n(l, std::vector<long>(l, 0));
  for (unsigned i = 0; i < l; ++i) n[i][i] = 2;
  auto link = [&](unsigned i, unsigned j) {  // 1-based simple edge
    n[i - 1][j - 1] = -1;
    n[j - 1][i - 1] = -1;
  };
  switch (f) {
    case Family::A:
      for (unsigned i = 1; i < l; ++i) link(i, i + 1);
      break;
    case Family::B:
    case Family::BC:
      for (unsigned i = 1; i < l; ++i) link(i, i + 1);
      if (l >= 2) n[l - 2][l - 1] = -2;  // alpha_l short
      break;
    case Family::C:
      for (unsigned i = 1; i < l; ++i) link(i, i + 1);
      if (l >= 2) n[l - 1][l - 2] = -2;  // alpha_l long
      break;
    case Family::D:
      if (l < 3) throw Error(ErrorCode::InvalidType, "cartan_matrix", "D needs rank >= 3");
      for (unsigned i = 1; i + 2 < l; ++i) link(i, i + 1);
      link(l - 2, l);
      if (l > 3) link(l - 2, l - 1);
      else link(1, 2);
      break;
    case Family::E:
      if (l < 6 || l > 8) throw Error(ErrorCode::InvalidType, "cartan_matrix", "E needs rank 6..8");
      link(1, 3);
      link(2, 4);
      for (unsigned i = 3; i < l; ++i) link(i, i + 1);
      break;
    case Family::F:
      if (l != 4) throw Error(ErrorCode::InvalidType, "cartan_matrix", "F needs rank 4");
      link(1, 2);
      link(2, 3);
      link(3, 4);
      n[1][2] = -2;
      break;
    case Family::G:
      if (l != 2) throw Error(ErrorCode::InvalidType, "cartan_matrix", "G needs rank 2");
      n[0][1] = -1;
      n[1][0] = -3;
      break;
  }
  return n;
}

// ---------------------------------------------------------------------------

RootSystem::RootSystem(RootSystemType type, IntMat cartan, std::vector<IntVec> roots)
    : type_(type), cartan_(std::move(cartan)) {
  const size_t l = cartan_.size();
  // Norms by propagation along the diagram: n_ij N_j = n_ji N_i.
  std::vector<Rational> norm(l, Rational(0));
  if (l > 0) norm[0] = 2;
  std::deque<size_t> queue{0};
  while (!queue.empty() && l > 0) {
    size_t j = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < l; ++i) {
      if (i == j || cartan_[i][j] == 0 || norm[i] != 0) continue;
      if (cartan_[j][i] == 0) throw Error(ErrorCode::NotARootSystem, "RootSystem", "asymmetric zero pattern");
      norm[i] = Rational(cartan_[i][j]) * norm[j] / Rational(cartan_[j][i]);
      queue.push_back(i);
    }
  }
  for (size_t i = 0; i < l; ++i)
    if (norm[i] == 0) throw Error(ErrorCode::NotIrreducible, "RootSystem", "Dynkin diagram is disconnected");
  gram_.assign(l, std::vector<Rational>(l));
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j) gram_[i][j] = Rational(cartan_[i][j]) * norm[j] / 2;
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j)
      if (gram_[i][j] != gram_[j][i])
        throw Error(ErrorCode::NotARootSystem, "RootSystem", "Cartan matrix is not symmetrizable");

  std::set<IntVec> uniq(roots.begin(), roots.end());
  uniq.insert(IntVec(l, 0));
  roots_.assign(uniq.begin(), uniq.end());
  std::sort(roots_.begin(), roots_.end(), root_order);
  for (size_t i = 0; i < roots_.size(); ++i) index_[roots_[i]] = i;
  min_norm_ = 0;
  for (const auto& a : roots_) {
    if (is_zero_iv(a)) continue;
    Rational n = form(a, a);
    if (min_norm_ == 0 || n < min_norm_) min_norm_ = n;
  }
  validate();
}

void RootSystem::validate() const {
  const size_t l = rank();
  for (size_t i = 0; i < l; ++i) {
    IntVec e(l, 0);
    e[i] = 1;
    if (!contains(e)) throw Error(ErrorCode::NotARootSystem, "RootSystem", "simple root missing");
  }
  for (const auto& a : roots_) {
    if (a.size() != l) throw Error(ErrorCode::NotARootSystem, "RootSystem", "coordinate length mismatch");
    if (is_zero_iv(a)) continue;
    if (form(a, a) <= 0) throw Error(ErrorCode::NotARootSystem, "RootSystem", "non-positive norm");
    if (!contains(add(IntVec(l, 0), a, -1)))
      throw Error(ErrorCode::NotARootSystem, "RootSystem", "not symmetric under negation");
  }
  for (const auto& b : roots_) {
    if (is_zero_iv(b)) continue;
    Rational nb = form(b, b);
    for (const auto& a : roots_) {
      Rational p = 2 * form(a, b) / nb;
      if (p.get_den() != 1) throw Error(ErrorCode::NotARootSystem, "RootSystem", "non-integral pairing");
      if (!contains(add(a, b, -p.get_num().get_si())))
        throw Error(ErrorCode::NotARootSystem, "RootSystem",
                    "not closed under reflection " + intvec_to_string(b) + " of " + intvec_to_string(a));
    }
  }
}

std::vector<IntVec> RootSystem::nonzero_roots() const {
  std::vector<IntVec> out;
  for (const auto& a : roots_)
    if (!is_zero_iv(a)) out.push_back(a);
  return out;
}

std::vector<IntVec> RootSystem::positive_roots() const {
  std::vector<IntVec> out;
  for (const auto& a : roots_)
    if (height_of(a) > 0) out.push_back(a);
  return out;
}

std::vector<IntVec> RootSystem::base() const {
  std::vector<IntVec> out;
  for (size_t i = 0; i < rank(); ++i) {
    IntVec e(rank(), 0);
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

long RootSystem::height(const IntVec& a) const { return height_of(a); }

Rational RootSystem::form(const IntVec& a, const IntVec& b) const {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) s += gram_[i][j] * a[i] * b[j];
  }
  return s;
}

long RootSystem::pairing(const IntVec& a, const IntVec& b) const {
  Rational nb = form(b, b);
  if (nb == 0) throw Error(ErrorCode::RootNotInSystem, "pairing", "coroot of zero");
  Rational p = 2 * form(a, b) / nb;
  if (p.get_den() != 1) throw Error(ErrorCode::NotARootSystem, "pairing", "non-integral pairing");
  return p.get_num().get_si();
}

IntVec RootSystem::reflect(const IntVec& a, const IntVec& b) const { return add(a, b, -pairing(a, b)); }

bool RootSystem::is_short(const IntVec& a) const { return !is_zero_iv(a) && form(a, a) == min_norm_; }

bool RootSystem::is_divisible(const IntVec& a) const {
  if (is_zero_iv(a)) return false;
  IntVec h(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] % 2 != 0) return false;
    h[i] = a[i] / 2;
  }
  return contains(h);
}

bool RootSystem::is_reduced() const {
  for (const auto& a : roots_)
    if (is_divisible(a)) return false;
  return true;
}

// ---------------------------------------------------------------------------

RootSystem build_root_system(const RootSystemType& t) {
  if (!is_admissible(t)) throw Error(ErrorCode::InvalidType, "build_root_system", t.name() + " is not admissible");
  const unsigned l = t.rank;
  IntMat n = (t.family == Family::BC && l == 1) ? cartan_matrix(Family::A, 1) : cartan_matrix(t.family, l);
  std::set<IntVec> pos;
  std::vector<IntVec> layer;
  for (unsigned i = 0; i < l; ++i) {
    IntVec e(l, 0);
    e[i] = 1;
    pos.insert(e);
    layer.push_back(e);
  }
  while (!layer.empty()) {
    std::vector<IntVec> next;
    for (const auto& b : layer) {
      for (unsigned i = 0; i < l; ++i) {
        long p = 0;
        while (true) {
          IntVec c = b;
          c[i] -= p + 1;
          if (!pos.count(c)) break;
          ++p;
        }
        long pair = 0;
        for (unsigned j = 0; j < l; ++j) pair += b[j] * n[j][i];
        if (p - pair > 0) {
          IntVec c = b;
          c[i] += 1;
          if (pos.insert(c).second) next.push_back(c);
        }
      }
    }
    layer = std::move(next);
  }
  std::vector<IntVec> roots;
  for (const auto& a : pos) {
    roots.push_back(a);
    roots.push_back(add(IntVec(l, 0), a, -1));
  }
  if (t.family == Family::BC) {
    RootSystem b(RootSystemType{l == 1 ? Family::A : Family::B, l}, n, roots);
    for (const auto& a : b.nonzero_roots())
      if (b.is_short(a)) roots.push_back(add(IntVec(l, 0), a, 2));
  }
  return RootSystem(t, n, roots);
}

RootVariants derive_variants(const RootSystem& d) {
  RootVariants v;
  const auto& t = d.type();
  std::vector<IntVec> ind;
  for (const auto& a : d.roots())
    if (!d.is_divisible(a)) ind.push_back(a);
  RootSystemType ti = t;
  if (t.family == Family::BC) ti = RootSystemType{t.rank == 1 ? Family::A : Family::B, t.rank};
  v.ind = RootSystem(ti, d.cartan(), ind);
  for (const auto& a : d.nonzero_roots())
    if (d.is_short(a)) v.sh.push_back(a);
  if (t.family == Family::B || (t.family == Family::A && t.rank == 1)) {
    std::vector<IntVec> en = d.roots();
    for (const auto& a : v.sh) en.push_back(add(IntVec(a.size(), 0), a, 2));
    v.en = RootSystem(RootSystemType{Family::BC, t.rank}, d.cartan(), en);
  } else {
    v.en = d;
  }
  for (const auto& a : d.roots()) {
    if (v.theta.empty() || d.height(a) > d.height(v.theta)) v.theta = a;
    if (d.is_short(a) && (v.theta_sh.empty() || d.height(a) > d.height(v.theta_sh))) v.theta_sh = a;
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

using QVec = std::vector<Rational>;

bool lex_positive(const QVec& v) {
  for (const auto& x : v) {
    if (sgn(x) > 0) return true;
    if (sgn(x) < 0) return false;
  }
  return false;
}

bool qzero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

QVec qadd(const QVec& a, const QVec& b) {
  QVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

// Solve sum_i c_i basis_i = v over Q; empty if impossible.
std::optional<QVec> qsolve(const std::vector<QVec>& basis, const QVec& v) {
  const size_t k = basis.size(), n = v.size();
  std::vector<QVec> m(n, QVec(k + 1));
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < k; ++c) m[r][c] = basis[c][r];
    m[r][k] = v[r];
  }
  size_t row = 0;
  std::vector<size_t> piv;
  for (size_t c = 0; c < k && row < n; ++c) {
    size_t p = row;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (size_t j = 0; j <= k; ++j) m[r][j] -= f * m[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  for (size_t r = row; r < n; ++r)
    if (sgn(m[r][k]) != 0) return std::nullopt;
  if (piv.size() < k) return std::nullopt;
  QVec c(k);
  for (size_t i = 0; i < piv.size(); ++i) c[piv[i]] = m[i][k];
  return c;
}

RootSystemType classify(const RootSystem& provisional) {
  const unsigned l = provisional.rank();
  std::vector<IntVec> ind;
  for (const auto& a : provisional.nonzero_roots())
    if (!provisional.is_divisible(a)) ind.push_back(a);
  Rational min = 0, max = 0;
  for (const auto& a : ind) {
    Rational n = provisional.form(a, a);
    if (min == 0 || n < min) min = n;
    if (n > max) max = n;
  }
  const size_t R = ind.size();
  size_t S = 0;
  for (const auto& a : ind)
    if (provisional.form(a, a) == min) ++S;
  std::optional<RootSystemType> t;
  if (min == max) {
    if (R == l * (l + 1)) t = RootSystemType{Family::A, l};
    else if (l >= 4 && R == 2 * l * (l - 1)) t = RootSystemType{Family::D, l};
    else if (l == 6 && R == 72) t = RootSystemType{Family::E, 6};
    else if (l == 7 && R == 126) t = RootSystemType{Family::E, 7};
    else if (l == 8 && R == 240) t = RootSystemType{Family::E, 8};
  } else {
    if (l == 2 && R == 12) t = RootSystemType{Family::G, 2};
    else if (l == 4 && R == 48 && S == 24) t = RootSystemType{Family::F, 4};
    else if (R == 2 * l * l && S == 2 * l) t = RootSystemType{Family::B, l};
    else if (l >= 3 && R == 2 * l * l && S == 2 * l * (l - 1)) t = RootSystemType{Family::C, l};
  }
  if (!t) throw Error(ErrorCode::NotARootSystem, "identify_type", "root counts match no irreducible type");
  if (!provisional.is_reduced()) {
    bool b_like = t->family == Family::B || (t->family == Family::A && l == 1);
    if (!b_like) throw Error(ErrorCode::NotARootSystem, "identify_type", "non-reduced system not of type BC");
    t = RootSystemType{Family::BC, l};
  }
  return *t;
}

}  // namespace

IdentifiedRoots identify_rational_roots(const std::vector<std::vector<Rational>>& vecs) {
  if (vecs.empty()) throw Error(ErrorCode::NotARootSystem, "identify_type", "empty input");
  const size_t dim = vecs[0].size();
  std::vector<QVec> nonzero;
  for (const auto& v : vecs) {
    if (v.size() != dim) throw Error(ErrorCode::NotARootSystem, "identify_type", "inconsistent vector lengths");
    if (qzero(v)) continue;
    if (std::find(nonzero.begin(), nonzero.end(), v) == nonzero.end()) nonzero.push_back(v);
  }
  if (nonzero.empty()) throw Error(ErrorCode::NotARootSystem, "identify_type", "no nonzero roots");
  auto in_set = [&](const QVec& v) { return std::find(nonzero.begin(), nonzero.end(), v) != nonzero.end(); };
  for (const auto& v : nonzero) {
    QVec neg = v;
    for (auto& x : neg) x = -x;
    if (!in_set(neg)) throw Error(ErrorCode::NotARootSystem, "identify_type", "not closed under negation");
  }
  std::vector<QVec> ind_pos;
  for (const auto& v : nonzero) {
    if (!lex_positive(v)) continue;
    QVec half = v;
    for (auto& x : half) x /= 2;
    if (!in_set(half)) ind_pos.push_back(v);
  }
  std::vector<size_t> base_idx;
  std::vector<QVec> base;
  std::sort(ind_pos.begin(), ind_pos.end());
  for (const auto& a : ind_pos) {
    bool decomposable = false;
    for (size_t i = 0; i < ind_pos.size() && !decomposable; ++i)
      for (size_t j = i; j < ind_pos.size() && !decomposable; ++j)
        if (qadd(ind_pos[i], ind_pos[j]) == a) decomposable = true;
    if (!decomposable) base.push_back(a);
  }
  const size_t l = base.size();
  std::vector<IntVec> coords_of_nonzero;
  for (const auto& v : nonzero) {
    auto c = qsolve(base, v);
    if (!c) throw Error(ErrorCode::NotARootSystem, "identify_type", "root outside the span of the base");
    IntVec iv(l);
    bool pos = false, neg = false;
    for (size_t i = 0; i < l; ++i) {
      if ((*c)[i].get_den() != 1)
        throw Error(ErrorCode::NotARootSystem, "identify_type", "non-integral base coordinates");
      iv[i] = (*c)[i].get_num().get_si();
      pos |= iv[i] > 0;
      neg |= iv[i] < 0;
    }
    if (pos && neg) throw Error(ErrorCode::NotARootSystem, "identify_type", "mixed-sign base coordinates");
    coords_of_nonzero.push_back(iv);
  }
  std::set<IntVec> rootset(coords_of_nonzero.begin(), coords_of_nonzero.end());
  rootset.insert(IntVec(l, 0));
  IntMat n(l, std::vector<long>(l, 0));
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j) {
      IntVec ai(l, 0), aj(l, 0);
      ai[i] = 1;
      aj[j] = 1;
      long r = 0, q = 0;
      while (rootset.count(add(ai, aj, -(r + 1)))) ++r;
      while (rootset.count(add(ai, aj, q + 1))) ++q;
      n[i][j] = r - q;
    }
  RootSystem provisional(RootSystemType{Family::A, static_cast<unsigned>(l)}, n, coords_of_nonzero);
  RootSystemType t = classify(provisional);

  IdentifiedRoots out{RootSystem(t, n, coords_of_nonzero), {}, {}};
  for (const auto& v : vecs) {
    if (qzero(v)) {
      out.coords.push_back(IntVec(l, 0));
      continue;
    }
    size_t k = static_cast<size_t>(std::find(nonzero.begin(), nonzero.end(), v) - nonzero.begin());
    out.coords.push_back(coords_of_nonzero[k]);
  }
  for (const auto& b : base)
    out.base_inputs.push_back(static_cast<size_t>(std::find(vecs.begin(), vecs.end(), b) - vecs.begin()));
  return out;
}

RootSystemType identify_type(const std::vector<std::vector<Rational>>& vecs) {
  return identify_rational_roots(vecs).system.type();
}

std::vector<IntVec> weyl_orbit(const RootSystem& d, const IntVec& a) {
  if (!d.contains(a)) throw Error(ErrorCode::RootNotInSystem, "weyl_orbit", intvec_to_string(a));
  std::set<IntVec> seen{a};
  std::deque<IntVec> queue{a};
  const auto base = d.base();
  while (!queue.empty()) {
    IntVec x = queue.front();
    queue.pop_front();
    for (const auto& b : base) {
      IntVec y = d.reflect(x, b);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  std::vector<IntVec> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

IntVec RootLatticeHom::apply(const IntVec& coords) const {
  IntVec r(target_rank, 0);
  for (size_t i = 0; i < coords.size() && i < images.size(); ++i)
    for (unsigned j = 0; j < target_rank; ++j) r[j] += coords[i] * images[i][j];
  return r;
}

RootLatticeHom RootLatticeHom::negated() const {
  RootLatticeHom h = *this;
  for (auto& im : h.images)
    for (auto& x : im) x = -x;
  return h;
}

}  // namespace lietorus
