#include "lietorus/autos.hpp"

#include <algorithm>
#include <numeric>

#include "lietorus/intmat.hpp"

namespace lietorus {

unsigned matrix_order(const Mat& m, unsigned bound) {
  Mat p = m;
  for (unsigned k = 1; k <= bound; ++k) {
    if (p.is_identity()) return k;
    p = p * m;
  }
  return 0;
}

Automorphism make_automorphism(const LieAlgebra& s, const Mat& m, std::optional<unsigned> declared) {
  if (m.rows() != s.dim() || m.cols() != s.dim())
    throw Error(ErrorCode::DimensionMismatch, "make_automorphism", "matrix size differs from dim s");
  if (!s.is_homomorphism(m, s))
    throw Error(ErrorCode::NotAnAutomorphism, "make_automorphism", "matrix does not preserve brackets");
  if (declared) {
    if (*declared == 0) throw Error(ErrorCode::NotAnAutomorphism, "make_automorphism", "declared order 0");
    Mat p = Mat::identity(s.field(), s.dim());
    for (unsigned k = 1; k <= *declared; ++k) {
      p = p * m;
      if (p.is_identity() != (k == *declared))
        throw Error(ErrorCode::NotAnAutomorphism, "make_automorphism",
                    "declared order " + std::to_string(*declared) + " is not the exact order");
    }
    return {m, *declared};
  }
  unsigned o = matrix_order(m);
  if (o == 0) throw Error(ErrorCode::NotAnAutomorphism, "make_automorphism", "no finite order found");
  return {m, o};
}

Automorphism identity_automorphism(const LieAlgebra& s) { return {Mat::identity(s.field(), s.dim()), 1}; }

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Mat m = a.matrix * b.matrix;
  unsigned o = matrix_order(m, std::lcm(a.order, b.order) * std::max(a.order, b.order));
  if (o == 0) throw Error(ErrorCode::NotAnAutomorphism, "compose", "product has no small finite order");
  return {m, o};
}

Automorphism diagram_automorphism(const LieAlgebra& s, const Epinglage& ep, const std::vector<size_t>& perm) {
  const size_t l = ep.cartan_matrix.size();
  if (perm.size() != l) throw Error(ErrorCode::NotADiagramSymmetry, "diagram_automorphism", "permutation length differs from rank");
  std::vector<bool> seen(l, false);
  for (size_t i : perm) {
    if (i >= l || seen[i]) throw Error(ErrorCode::NotADiagramSymmetry, "diagram_automorphism", "not a permutation");
    seen[i] = true;
  }
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j)
      if (ep.cartan_matrix[perm[i]][perm[j]] != ep.cartan_matrix[i][j])
        throw Error(ErrorCode::NotADiagramSymmetry, "diagram_automorphism",
                    "permutation does not preserve the Cartan matrix at (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")");
  std::vector<std::pair<Vec, Vec>> gens;
  for (size_t i = 0; i < l; ++i) {
    gens.emplace_back(ep.e[i], ep.e[perm[i]]);
    gens.emplace_back(ep.f[i], ep.f[perm[i]]);
  }
  Mat m = extend_generator_map(s, s, gens, "diagram_automorphism");
  for (size_t i = 0; i < l; ++i)
    if (m * ep.h[i] != ep.h[perm[i]])
      throw Error(ErrorCode::ExtensionInconsistent, "diagram_automorphism", "coroots are not permuted");
  unsigned po = 1;
  {
    std::vector<size_t> p = perm;
    while (true) {
      bool id = true;
      for (size_t i = 0; i < l; ++i) id = id && p[i] == i;
      if (id) break;
      for (auto& x : p) x = perm[x];
      ++po;
    }
  }
  return make_automorphism(s, m, po);
}

Automorphism torus_automorphism(const LieAlgebra& s, const RootDatum& rd, const std::vector<Cyclo>& rho) {
  const FieldContext& f = s.field();
  if (!rd.roots) throw Error(ErrorCode::NotARootSystem, "torus_automorphism", "root datum without identified roots");
  if (rd.ambient.dim() != s.dim())
    throw Error(ErrorCode::DimensionMismatch, "torus_automorphism", "root datum does not cover the algebra");
  const size_t l = rd.roots->rank();
  if (rho.size() != l) throw Error(ErrorCode::DimensionMismatch, "torus_automorphism", "one scalar per base root expected");
  for (size_t i = 0; i < l; ++i)
    if (rho[i].is_zero()) throw Error(ErrorCode::ZeroScalar, "torus_automorphism", "rho vanishes on base root " + std::to_string(i + 1));
  std::vector<Vec> cols, images;
  for (size_t k = 0; k < rd.spaces.size(); ++k) {
    Cyclo c = Cyclo::one(f);
    for (size_t i = 0; i < l; ++i) c *= embed(rho[i], f).pow(rd.coords[k][i]);
    for (const auto& v : rd.spaces[k].basis()) {
      cols.push_back(v);
      images.push_back(scale(c, v));
    }
  }
  Mat b = Mat::from_cols(f, s.dim(), cols);
  Mat m = Mat::from_cols(f, s.dim(), images) * *inverse(b);
  return make_automorphism(s, m);
}

Automorphism conjugation_automorphism(const LieAlgebra& s, const Mat& g) {
  if (!s.gram() || s.matrices().empty())
    throw Error(ErrorCode::NotInIsometryGroup, "conjugation_automorphism", "algebra has no matrix realization");
  const Mat& gram = *s.gram();
  if (g.rows() != gram.rows() || g.cols() != gram.rows())
    throw Error(ErrorCode::NotInIsometryGroup, "conjugation_automorphism", "matrix size differs from the form");
  Mat gf = g;
  if (g.field().conductor() != s.field().conductor()) {
    gf = Mat(s.field(), g.rows(), g.cols());
    for (size_t i = 0; i < g.rows(); ++i)
      for (size_t j = 0; j < g.cols(); ++j) gf(i, j) = embed(g(i, j), s.field());
  }
  if (gf.transpose() * gram * gf != gram)
    throw Error(ErrorCode::NotInIsometryGroup, "conjugation_automorphism", "g does not preserve the form");
  auto inv = inverse(gf);
  if (!inv) throw Error(ErrorCode::NotInIsometryGroup, "conjugation_automorphism", "g is singular");
  std::vector<Vec> cols;
  for (const auto& x : s.matrices()) {
    auto c = s.matrix_coordinates(gf * x * *inv);
    if (!c) throw Error(ErrorCode::NotInIsometryGroup, "conjugation_automorphism", "conjugate leaves the algebra");
    cols.push_back(*c);
  }
  return make_automorphism(s, Mat::from_cols(s.field(), s.dim(), cols));
}

AutTuple make_tuple(std::vector<Automorphism> entries, std::vector<unsigned> periods) {
  if (periods.empty())
    for (const auto& e : entries) periods.push_back(e.order);
  if (periods.size() != entries.size())
    throw Error(ErrorCode::DimensionMismatch, "make_tuple", "one period per entry expected");
  for (size_t i = 0; i < entries.size(); ++i) {
    if (periods[i] == 0 || periods[i] % entries[i].order != 0)
      throw Error(ErrorCode::NotAnAutomorphism, "make_tuple",
                  "entry " + std::to_string(i + 1) + " does not satisfy sigma^m = 1 for m = " + std::to_string(periods[i]));
    for (size_t j = i + 1; j < entries.size(); ++j)
      if (entries[i].matrix * entries[j].matrix != entries[j].matrix * entries[i].matrix)
        throw Error(ErrorCode::NonCommutingTuple, "make_tuple",
                    "entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute");
  }
  return {std::move(entries), std::move(periods)};
}

AutTuple identity_tuple(const LieAlgebra& s, size_t n) {
  return make_tuple(std::vector<Automorphism>(n, identity_automorphism(s)));
}

namespace {

Mat power_mod(const Automorphism& a, long e) {
  long o = a.order;
  e = ((e % o) + o) % o;
  return a.matrix.pow(e);
}

}  // namespace

AutTuple tuple_power_action(const AutTuple& t, const IntMat& p) {
  const size_t n = t.size();
  if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "tuple_power_action", "P must be n x n");
  std::vector<Automorphism> out;
  for (size_t j = 0; j < n; ++j) {
    if (p[0].size() != n) throw Error(ErrorCode::DimensionMismatch, "tuple_power_action", "P must be n x n");
    Mat m = Mat::identity(t.entries[0].matrix.field(), t.entries[0].matrix.rows());
    unsigned bound = 1;
    for (size_t i = 0; i < n; ++i) {
      m = m * power_mod(t.entries[i], p[i][j]);
      bound = std::lcm(bound, t.entries[i].order);
    }
    out.push_back({m, matrix_order(m, bound)});
  }
  return make_tuple(std::move(out));
}

bool same_tuple(const AutTuple& a, const AutTuple& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a.entries[i].matrix != b.entries[i].matrix) return false;
  return true;
}

GroupStructure tuple_group_structure(const AutTuple& t) {
  const size_t n = t.size();
  GroupStructure g;
  if (n == 0) return g;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (t.entries[i].matrix * t.entries[j].matrix != t.entries[j].matrix * t.entries[i].matrix)
        throw Error(ErrorCode::NonCommutingTuple, "tuple_group_structure",
                    "entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute");
  // Powers of each entry up to its exact order; scan the exponent box.
  std::vector<std::vector<Mat>> pw(n);
  unsigned long box = 1;
  for (size_t i = 0; i < n; ++i) {
    const Automorphism& a = t.entries[i];
    pw[i].push_back(Mat::identity(a.matrix.field(), a.matrix.rows()));
    for (unsigned k = 1; k < a.order; ++k) pw[i].push_back(pw[i].back() * a.matrix);
    box *= a.order;
  }
  ZMat gens;
  for (size_t i = 0; i < n; ++i) {
    std::vector<Integer> r(n, 0);
    r[i] = t.entries[i].order;
    gens.push_back(r);
  }
  unsigned long identities = 0;
  IntVec e(n, 0);
  for (unsigned long c = 0; c < box; ++c) {
    unsigned long rem = c;
    for (size_t i = n; i-- > 0;) {
      e[i] = static_cast<long>(rem % t.entries[i].order);
      rem /= t.entries[i].order;
    }
    Mat m = pw[0][e[0]];
    for (size_t i = 1; i < n; ++i) m = m * pw[i][e[i]];
    if (m.is_identity()) {
      ++identities;
      std::vector<Integer> r;
      for (long x : e) r.emplace_back(x);
      gens.push_back(r);
    }
  }
  g.group_order = box / identities;
  ZMat basis = lattice_basis(gens, n);
  g.kernel_basis = to_intmat(basis);
  for (const auto& x : quotient_invariant_factors(basis, n)) g.invariant_factors.push_back(x.get_si());
  return g;
}

IntVec CharacterGrading::reduce(const IntVec& lambda) const {
  IntVec r(modulus.size());
  for (size_t i = 0; i < modulus.size(); ++i) {
    long m = modulus[i];
    r[i] = ((lambda[i] % m) + m) % m;
  }
  return r;
}

size_t CharacterGrading::index_of(const IntVec& lambda) const {
  IntVec r = reduce(lambda);
  size_t k = 0;
  for (size_t i = 0; i < modulus.size(); ++i) k = k * modulus[i] + static_cast<size_t>(r[i]);
  return k;
}

std::vector<IntVec> CharacterGrading::support() const {
  std::vector<IntVec> out;
  for (size_t i = 0; i < characters.size(); ++i)
    if (components[i].dim() > 0) out.push_back(characters[i]);
  return out;
}

CharacterGrading grading_by_tuple(const LieAlgebra& s, const AutTuple& t) {
  const FieldContext& f = s.field();
  CharacterGrading g;
  g.modulus = t.periods;
  for (unsigned m : t.periods)
    if (f.conductor() % m != 0)
      throw Error(ErrorCode::ConductorTooSmall, "grading_by_tuple",
                  "period " + std::to_string(m) + " does not divide the conductor " + std::to_string(f.conductor()));
  // Refine one entry at a time; characters come out in lex order.
  std::vector<std::pair<IntVec, Subspace>> cur{{IntVec{}, Subspace::whole(f, s.dim())}};
  for (size_t j = 0; j < t.size(); ++j) {
    const unsigned m = t.periods[j];
    const Cyclo z = zeta_of_order(f, m);
    std::vector<std::pair<IntVec, Subspace>> next;
    for (const auto& [chi, w] : cur) {
      for (unsigned l = 0; l < m; ++l) {
        IntVec c = chi;
        c.push_back(l);
        Subspace part = w.dim() == 0 ? w : kernel_in(t.entries[j].matrix - Mat::identity(f, s.dim()).scaled(z.pow(l)), w);
        next.emplace_back(std::move(c), std::move(part));
      }
    }
    cur = std::move(next);
  }
  for (auto& [chi, w] : cur) {
    g.characters.push_back(chi);
    g.components.push_back(std::move(w));
  }
  return g;
}

const char* relation_name(DeltaRelation r) {
  switch (r) {
    case DeltaRelation::Equal: return "equal";
    case DeltaRelation::Enlarged: return "enlarged";
    case DeltaRelation::Neither: return "neither";
  }
  return "?";
}

namespace {

bool same_weight_set(std::vector<Vec> a, std::vector<Vec> b) {
  auto less = [](const Vec& x, const Vec& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const Cyclo& u, const Cyclo& v) { return lex_less(u, v); });
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

}  // namespace

AReport check_A_conditions(const LieAlgebra& s, const AutTuple& t, std::optional<Subspace> h) {
  AReport r;
  const FieldContext& f = s.field();
  r.group = tuple_group_structure(t);
  r.grading = grading_by_tuple(s, t);
  unsigned long prod = 1;
  for (unsigned m : t.periods) prod *= m;
  r.a3 = r.group.group_order == prod;
  if (!r.a3)
    r.failures.push_back("(A3): group order " + std::to_string(r.group.group_order) + " differs from the period product " +
                         std::to_string(prod));

  r.g = r.grading.components[0];
  if (r.g.dim() == 0) {
    r.simplicity = {false, std::nullopt, "fixed algebra is zero"};
  } else {
    r.simplicity = is_simple(s.subalgebra(r.g));
  }
  r.a1 = r.simplicity.simple;
  if (!r.a1) {
    std::string w = "(A1): fixed algebra of dim " + std::to_string(r.g.dim()) + " is not simple (" + r.simplicity.reason + ")";
    if (r.g.dim() > 0 && r.g.dim() <= 4) {
      w += ", spanned by";
      for (const auto& v : r.g.basis()) w += " " + combination_label(v, s.labels());
    }
    r.failures.push_back(w);
  }

  if (r.g.dim() == 0) {
    r.failures.push_back("(A2): not evaluated without a fixed algebra");
    return r;
  }
  try {
    r.h = h ? *h : cartan_subalgebra(s, r.g).h;
    if (!r.g.contains(*r.h)) throw Error(ErrorCode::NonCartanInput, "check_A_conditions", "h is not inside the fixed algebra");
    r.delta = root_space_decomposition(s, *r.h);
    r.delta_g = decompose_subspace(s, *r.h, r.g);
  } catch (const Error& e) {
    if (is_field_too_small(e.code())) throw;
    r.failures.push_back(std::string("(A2): ") + e.what());
    return r;
  }
  if (!r.a1) {
    r.failures.push_back("(A2): not evaluated since the fixed algebra is not simple");
    return r;
  }

  bool a2 = true;
  for (size_t i = 1; i < r.grading.characters.size(); ++i) {
    const Subspace& v = r.grading.components[i];
    if (v.dim() == 0) continue;
    try {
      ModuleReport mr = analyze_module(s, r.g, *r.delta_g, v);
      if (!mr.a2_shape) {
        a2 = false;
        r.failures.push_back("(A2): component " + intvec_to_string(r.grading.characters[i]) + " is not a module of the allowed shape, condition (M)");
      }
      r.modules.emplace_back(r.grading.characters[i], std::move(mr));
    } catch (const Error& e) {
      if (is_field_too_small(e.code())) throw;
      a2 = false;
      r.failures.push_back("(A2): component " + intvec_to_string(r.grading.characters[i]) + ": " + e.what());
    }
  }
  r.a2 = a2;

  // Compare the weights of s with those of g, plain and enlarged.
  std::vector<Vec> ws, wg, wen;
  const size_t zs = r.delta->zero_index(), zg = r.delta_g->zero_index();
  for (size_t i = 0; i < r.delta->weights.size(); ++i)
    if (i != zs) ws.push_back(r.delta->weights[i]);
  for (size_t i = 0; i < r.delta_g->weights.size(); ++i)
    if (i != zg) wg.push_back(r.delta_g->weights[i]);
  wen = wg;
  if (r.delta_g->roots) {
    const RootSystem& d = *r.delta_g->roots;
    for (const auto& a : d.nonzero_roots())
      if (d.is_short(a)) wen.push_back(scale(Cyclo(f, 2L), r.delta_g->weight_of(a)));
  }
  if (same_weight_set(ws, wg)) r.relation = DeltaRelation::Equal;
  else if (same_weight_set(ws, wen)) r.relation = DeltaRelation::Enlarged;
  else r.relation = DeltaRelation::Neither;
  return r;
}

}  // namespace lietorus
