#include "lietorus/torus.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace lietorus {

namespace {

IntVec add_iv(const IntVec& a, const IntVec& b, long k = 1) {
  IntVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += k * b[i];
  return r;
}

IntVec neg(const IntVec& a) { return add_iv(IntVec(a.size(), 0), a, -1); }

bool is_zero_iv(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

std::string cell_name(const IntVec& alpha, const IntVec& lambda) {
  return "(" + intvec_to_string(alpha) + ", " + intvec_to_string(lambda) + ")";
}

// Subgroup of the residue group generated by a set of residues.
std::set<IntVec> generated_subgroup(const CharacterGrading& g, const std::vector<IntVec>& gens) {
  std::set<IntVec> seen{IntVec(g.modulus.size(), 0)};
  std::vector<IntVec> frontier{IntVec(g.modulus.size(), 0)};
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& x : frontier)
      for (const auto& y : gens) {
        IntVec z = g.reduce(add_iv(x, y));
        if (seen.insert(z).second) next.push_back(z);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

Subspace MultiloopTorus::cell(const IntVec& alpha, const IntVec& lambda) const {
  auto k = rd.find_root(alpha);
  if (!k) return Subspace(s.field(), s.dim());
  return cells[*k][grading.index_of(lambda)];
}

MultiloopTorus build_multiloop(const LieAlgebra& s, const AutTuple& t, std::optional<Subspace> h) {
  MultiloopTorus T;
  T.s = s;
  T.tuple = t;
  T.m = t.periods;
  T.a_report = check_A_conditions(s, t, h);
  T.a_conditions = T.a_report.passed();
  T.grading = T.a_report.grading;
  if (h) T.h = *h;
  else if (T.a_report.h) T.h = *T.a_report.h;
  else throw Error(ErrorCode::NonCartanInput, "build_multiloop", "no Cartan subalgebra of the fixed algebra is available");
  if (T.a_report.delta && T.a_report.h && *T.a_report.h == T.h) {
    T.rd = *T.a_report.delta;
  } else {
    try {
      T.rd = root_space_decomposition(s, T.h);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotAdDiagonalizable || e.code() == ErrorCode::NotStable)
        throw Error(ErrorCode::NonCartanInput, "build_multiloop", e.what());
      throw;
    }
  }
  for (const auto& sp : T.rd.spaces) {
    std::vector<Subspace> row;
    for (const auto& comp : T.grading.components) row.push_back(sp.intersect(comp));
    T.cells.push_back(std::move(row));
  }
  return T;
}

Homogeneous window_bracket(const MultiloopTorus& t, const Homogeneous& x, const Homogeneous& y) {
  if (!t.grading.component(x.degree).contains(x.x))
    throw Error(ErrorCode::HomogeneityViolation, "window_bracket", "first element is not in the component of degree " + intvec_to_string(x.degree));
  if (!t.grading.component(y.degree).contains(y.x))
    throw Error(ErrorCode::HomogeneityViolation, "window_bracket", "second element is not in the component of degree " + intvec_to_string(y.degree));
  return {t.s.bracket(x.x, y.x), add_iv(x.degree, y.degree)};
}

std::optional<Sl2Pair> sl2_pair(const MultiloopTorus& t, const IntVec& alpha, const IntVec& lambda) {
  if (!t.rd.roots) return std::nullopt;
  Subspace ce = t.cell(alpha, lambda), cf = t.cell(neg(alpha), neg(lambda));
  if (ce.dim() != 1 || cf.dim() != 1) return std::nullopt;
  const FieldContext& f = t.s.field();
  Vec e = ce.basis_vector(0), fv = cf.basis_vector(0);
  Vec h = t.s.bracket(e, fv);
  Vec he = t.s.bracket(h, e);
  // e has a leading 1 at its first pivot.
  const size_t p = ce.pivots()[0];
  const Cyclo c = he[p];
  if (he != scale(c, e) || c.is_zero()) return std::nullopt;
  const Cyclo k = c / Cyclo(f, 2L);
  fv = scale(k.inverse(), fv);
  h = scale(k.inverse(), h);
  const RootSystem& d = *t.rd.roots;
  for (size_t i = 0; i < t.rd.spaces.size(); ++i) {
    const IntVec& beta = t.rd.coords[i];
    const Cyclo pr(f, is_zero_iv(beta) ? 0L : d.pairing(beta, alpha));
    for (const auto& x : t.rd.spaces[i].basis())
      if (t.s.bracket(h, x) != scale(pr, x)) return std::nullopt;
  }
  return Sl2Pair{e, fv};
}

AxiomReport verify_lie_torus_axioms(const MultiloopTorus& t) {
  AxiomReport r;
  if (!t.rd.roots) {
    r.failures.push_back("(LT1): weights do not form a root system: " + t.rd.identification_error);
    return r;
  }
  r.lt1 = true;
  const RootSystem& d = *t.rd.roots;
  const auto& chars = t.grading.characters;

  r.lt2i = true;
  for (const auto& a : d.nonzero_roots()) {
    if (d.is_divisible(a)) continue;
    if (t.cell(a, IntVec(t.nullity(), 0)).dim() == 0) {
      r.lt2i = false;
      r.failures.push_back("(LT2)(i): cell " + cell_name(a, IntVec(t.nullity(), 0)) + " is zero");
    }
  }

  r.lt2ii = true;
  for (const auto& a : d.nonzero_roots())
    for (const auto& l : chars) {
      Subspace c = t.cell(a, l);
      if (c.dim() == 0) continue;
      if (c.dim() > 1) {
        r.lt2ii = false;
        r.failures.push_back("(LT2)(ii): cell " + cell_name(a, l) + " has dimension " + std::to_string(c.dim()));
      } else if (!sl2_pair(t, a, l)) {
        r.lt2ii = false;
        r.failures.push_back("(LT2)(ii): no normalized sl2 pair for cell " + cell_name(a, l));
      }
    }

  // The algebra generated by the nonzero root spaces is their sum plus the brackets
  // [L_alpha, L_-alpha]; compare its root-0 part with L_0 residue by residue.
  r.lt3 = true;
  const IntVec zero(d.rank(), 0);
  for (const auto& l : chars) {
    Subspace target = t.cell(zero, l);
    if (target.dim() == 0) continue;
    std::vector<Vec> gens;
    for (const auto& a : d.nonzero_roots())
      for (const auto& mu : chars) {
        Subspace x = t.cell(a, mu), y = t.cell(neg(a), add_iv(l, mu, -1));
        for (const auto& u : x.basis())
          for (const auto& v : y.basis()) gens.push_back(t.s.bracket(u, v));
      }
    if (!Subspace::span(t.s.field(), t.s.dim(), gens).contains(target)) {
      r.lt3 = false;
      r.failures.push_back("(LT3): root-0 part of residue " + intvec_to_string(l) + " is not generated");
    }
  }

  auto sub = generated_subgroup(t.grading, t.grading.support());
  const bool gen = sub.size() == chars.size();
  r.lt4 = gen && t.a_report.a3;
  if (!gen) r.failures.push_back("(LT4): support generates a proper subgroup of order " + std::to_string(sub.size()));
  if (gen != t.a_report.a3) r.failures.push_back("(LT4): support generation disagrees with (A3)");

  r.lt5 = true;
  for (const auto& a : d.roots()) {
    auto k = t.rd.find_root(a);
    if (!k || t.rd.spaces[*k].dim() == 0) {
      r.lt5 = false;
      r.failures.push_back("(LT5): root " + intvec_to_string(a) + " has no root space");
    }
  }
  return r;
}

SemilatticeReport support_semilattices(const MultiloopTorus& t) {
  SemilatticeReport r;
  if (!t.rd.roots) {
    r.failures.push_back("root system not identified");
    return r;
  }
  const RootSystem& d = *t.rd.roots;
  const CharacterGrading& g = t.grading;
  for (const auto& a : d.roots()) {
    std::vector<IntVec> res;
    for (const auto& l : g.characters)
      if (t.cell(a, l).dim() > 0) res.push_back(l);
    r.residues[a] = res;
  }
  auto as_set = [](const std::vector<IntVec>& v) { return std::set<IntVec>(v.begin(), v.end()); };
  auto sumset = [&](const std::set<IntVec>& a, const std::set<IntVec>& b, long k) {
    std::set<IntVec> out;
    for (const auto& x : a)
      for (const auto& y : b) out.insert(g.reduce(add_iv(x, y, k)));
    return out;
  };
  auto subset = [](const std::set<IntVec>& a, const std::set<IntVec>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::set<IntVec> two_lambda;
  for (const auto& l : g.characters) two_lambda.insert(g.reduce(add_iv(l, l)));
  const IntVec zres(t.nullity(), 0);
  const auto nz = d.nonzero_roots();
  std::vector<IntVec> shorts;
  for (const auto& a : nz)
    if (d.is_short(a)) shorts.push_back(a);

  r.p1 = true;
  for (const auto& a : nz)
    if (!d.is_divisible(a) && !as_set(r.residues[a]).count(zres)) {
      r.p1 = false;
      r.failures.push_back("(i): 0 is not a residue of " + intvec_to_string(a));
    }

  r.p2 = true;
  for (const auto& a : nz) {
    auto s = as_set(r.residues[a]);
    if (s.empty()) continue;
    std::set<IntVec> negs;
    for (const auto& x : s) negs.insert(g.reduce(neg(x)));
    if (!subset(sumset(s, s, 2), s) || negs != s) {
      r.p2 = false;
      r.failures.push_back("(ii): fails for " + intvec_to_string(a));
    }
  }

  r.p3 = true;
  for (const auto& a : nz)
    for (const auto& b : nz) {
      if (r.residues[a].empty() || r.residues[b].empty()) continue;
      if (d.form(a, a) == d.form(b, b) && r.residues[a] != r.residues[b]) {
        r.p3 = false;
        r.failures.push_back("(iii): " + intvec_to_string(a) + " and " + intvec_to_string(b) + " differ");
      }
    }

  r.p4 = true;
  for (const auto& a : nz)
    for (const auto& b : shorts)
      if (!subset(as_set(r.residues[a]), as_set(r.residues[b]))) {
        r.p4 = false;
        r.failures.push_back("(iv): residues of " + intvec_to_string(a) + " not inside those of " + intvec_to_string(b));
      }

  r.p5 = true;
  const auto supp = as_set(g.support());
  for (const auto& b : shorts) {
    auto s = as_set(r.residues[b]);
    bool ok = supp == as_set(r.residues[IntVec(d.rank(), 0)]) && sumset(s, s, 1) == supp &&
              generated_subgroup(g, r.residues[b]).size() == g.characters.size() && subset(sumset(s, two_lambda, 1), s) &&
              subset(two_lambda, s);
    if (!ok) {
      r.p5 = false;
      r.failures.push_back("(v): fails for the short root " + intvec_to_string(b));
    }
  }

  r.p6 = subset(two_lambda, supp);
  if (!r.p6) r.failures.push_back("(vi): 2 Lambda is not inside the support");
  return r;
}

GradingPair root_grading_pair(const MultiloopTorus& t) {
  GradingPair p;
  p.g = t.grading.components[0];
  p.h = t.cell(IntVec(t.rd.roots ? t.rd.roots->rank() : 0, 0), IntVec(t.nullity(), 0));
  std::vector<std::string> bad;
  if (!t.a_report.a1) bad.push_back("fixed algebra is not simple");
  if (p.h != t.h) bad.push_back("root-0 part of the fixed algebra differs from h");
  if (!t.a_report.delta_g || !t.a_report.delta_g->roots) bad.push_back("h does not split the fixed algebra");
  if (!t.rd.roots) bad.push_back("roots of s not identified");
  p.verified = bad.empty();
  for (const auto& b : bad) p.detail += (p.detail.empty() ? "" : "; ") + b;
  return p;
}

std::vector<IntVec> window_degrees(size_t n, long r) {
  std::vector<IntVec> out{IntVec{}};
  for (size_t i = 0; i < n; ++i) {
    std::vector<IntVec> next;
    for (const auto& v : out)
      for (long x = -r; x <= r; ++x) {
        IntVec w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

CentralGrading central_grading_group(const MultiloopTorus& t, long radius) {
  CentralGrading c;
  for (size_t i = 0; i < t.nullity(); ++i) {
    IntVec row(t.nullity(), 0);
    row[i] = t.m[i];
    c.basis.push_back(row);
    c.index *= t.m[i];
  }
  // id tensor z^lambda preserves the algebra iff s^mu-bar lies in s^(mu+lambda)-bar for all mu.
  c.window_verified = true;
  const auto supp = t.grading.support();
  for (const auto& l : window_degrees(t.nullity(), radius)) {
    bool preserves = true;
    for (const auto& mu : supp)
      if (!t.grading.component(add_iv(mu, l)).contains(t.grading.component(mu))) preserves = false;
    if (preserves != is_zero_iv(t.grading.reduce(l))) c.window_verified = false;
  }
  return c;
}

AutTuple twisted_tuple(const MultiloopTorus& t, const RootLatticeHom& shift, AutTuple* twist) {
  if (!t.rd.roots) throw Error(ErrorCode::NotARootSystem, "twisted_tuple", "roots of the torus are not identified");
  const size_t l = t.rd.roots->rank();
  if (shift.images.size() != l || shift.target_rank != t.nullity())
    throw Error(ErrorCode::DimensionMismatch, "twisted_tuple", "shift must give one vector of length n per base root");
  const FieldContext& f = t.s.field();
  std::vector<Automorphism> taus, twisted;
  for (size_t i = 0; i < t.nullity(); ++i) {
    std::vector<Cyclo> rho;
    for (size_t j = 0; j < l; ++j) rho.push_back(zeta_of_order(f, t.m[i]).pow(-shift.images[j][i]));
    taus.push_back(torus_automorphism(t.s, t.rd, rho));
    twisted.push_back(compose(taus.back(), t.tuple.entries[i]));
  }
  if (twist) *twist = make_tuple(taus, t.m);
  return make_tuple(twisted, t.m);
}

IsotopeResult make_isotope(const MultiloopTorus& t, const RootLatticeHom& shift, long radius) {
  if (!t.rd.roots) throw Error(ErrorCode::NotARootSystem, "make_isotope", "roots of the torus are not identified");
  const RootSystem& d = *t.rd.roots;
  const auto base = d.base();
  if (shift.images.size() != base.size() || shift.target_rank != t.nullity())
    throw Error(ErrorCode::DimensionMismatch, "make_isotope", "shift must give one vector of length n per base root");
  for (size_t i = 0; i < base.size(); ++i)
    if (t.cell(base[i], shift.images[i]).dim() == 0)
      throw Error(ErrorCode::NotAdmissible, "make_isotope",
                  "shift of base root " + intvec_to_string(base[i]) + " is " + intvec_to_string(shift.images[i]) +
                      ", whose residue is not in the support of that root");
  IsotopeResult r;
  r.shift = shift;
  r.twisted = twisted_tuple(t, shift, &r.twist);
  r.torus = build_multiloop(t.s, r.twisted, t.h);
  // psi(x_alpha tensor z^lambda) = x_alpha tensor z^(lambda - s(alpha)) maps the shifted grading onto the new one.
  r.window_verified = true;
  for (const auto& a : d.roots()) {
    const IntVec sa = shift.apply(a);
    for (const auto& l : window_degrees(t.nullity(), radius))
      if (t.cell(a, add_iv(l, sa)) != r.torus.cell(a, l)) r.window_verified = false;
  }
  for (const auto& a : d.nonzero_roots()) {
    Subspace w = r.torus.cell(a, IntVec(t.nullity(), 0));
    if (w.dim() > 0) r.witnesses.emplace_back(a, w);
  }
  return r;
}

namespace {

using Graded = std::map<IntVec, Vec>;

Graded ad_graded(const LieAlgebra& s, const Vec& e, const IntVec& deg, const Graded& x) {
  Graded out;
  for (const auto& [mu, v] : x) {
    Vec w = s.bracket(e, v);
    if (!is_zero(w)) out[add_iv(mu, deg)] = std::move(w);
  }
  return out;
}

Graded exp_ad(const LieAlgebra& s, const Vec& e, const IntVec& deg, const Graded& x) {
  const FieldContext& f = s.field();
  Graded total = x, term = x;
  for (long k = 1; !term.empty(); ++k) {
    if (k > static_cast<long>(2 * s.dim() + 2))
      throw Error(ErrorCode::NotAdDiagonalizable, "weyl_automorphism_window", "ad e is not nilpotent");
    term = ad_graded(s, e, deg, term);
    const Cyclo inv = Cyclo(f, k).inverse();
    for (auto& [mu, v] : term) {
      v = scale(inv, v);
      auto it = total.find(mu);
      if (it == total.end()) total[mu] = v;
      else it->second = it->second + v;
    }
  }
  for (auto it = total.begin(); it != total.end();)
    it = is_zero(it->second) ? total.erase(it) : std::next(it);
  return total;
}

}  // namespace

WeylWindowReport weyl_automorphism_window(const MultiloopTorus& t, const IntVec& alpha, const IntVec& lambda, long radius) {
  WeylWindowReport r;
  long maxabs = 0;
  for (long x : lambda) maxabs = std::max(maxabs, std::labs(x));
  if (radius < maxabs)
    throw Error(ErrorCode::WindowTooSmall, "weyl_automorphism_window",
                "radius " + std::to_string(radius) + " does not contain the degree " + intvec_to_string(lambda));
  if (!t.rd.roots || is_zero_iv(alpha) || t.cell(alpha, lambda).dim() == 0)
    throw Error(ErrorCode::RootNotInSystem, "weyl_automorphism_window", "cell " + cell_name(alpha, lambda) + " is not in the support");
  auto pair = sl2_pair(t, alpha, lambda);
  if (!pair) {
    r.failures.push_back("no normalized sl2 pair for " + cell_name(alpha, lambda));
    return r;
  }
  const RootSystem& d = *t.rd.roots;
  const Vec minus_f = scale(Cyclo(t.s.field(), -1L), pair->f);
  const IntVec mlambda = neg(lambda);
  for (const auto& mu : window_degrees(t.nullity(), radius))
    for (const auto& beta : d.roots()) {
      Subspace src = t.cell(beta, mu);
      if (src.dim() == 0) continue;
      const long pr = is_zero_iv(beta) ? 0 : d.pairing(beta, alpha);
      const IntVec target_deg = add_iv(mu, lambda, -pr);
      const IntVec target_root = is_zero_iv(beta) ? beta : d.reflect(beta, alpha);
      Subspace dst = t.cell(target_root, target_deg);
      std::vector<Vec> images;
      bool ok = true;
      for (const auto& x : src.basis()) {
        Graded g{{mu, x}};
        g = exp_ad(t.s, pair->e, lambda, g);
        g = exp_ad(t.s, minus_f, mlambda, g);
        g = exp_ad(t.s, pair->e, lambda, g);
        if (g.size() != 1 || g.begin()->first != target_deg || !dst.contains(g.begin()->second)) ok = false;
        else images.push_back(g.begin()->second);
      }
      if (ok && Subspace::span(t.s.field(), t.s.dim(), images) != dst) ok = false;
      ++r.checked;
      if (!ok) r.failures.push_back("degree law fails on cell " + cell_name(beta, mu));
    }
  r.verified = r.failures.empty();
  return r;
}

bool untwisted_test(const MultiloopTorus& t) {
  const size_t z = t.rd.zero_index();
  const bool cartan = z < t.rd.spaces.size() && t.rd.spaces[z] == t.h;
  bool literal = true;
  for (const auto& e : t.tuple.entries) literal = literal && e.matrix.is_identity();
  if (literal && !cartan)
    throw Error(ErrorCode::NonCartanInput, "untwisted_test", "trivial tuple but h is not a Cartan subalgebra of s");
  return cartan;
}

long default_window_radius() {
  const char* v = std::getenv("LIETORUS_WINDOW");
  if (!v || !*v) return 2;
  char* end = nullptr;
  long r = std::strtol(v, &end, 10);
  if (*end != '\0' || r < 0) throw Error(ErrorCode::SchemaError, "default_window_radius", "LIETORUS_WINDOW must be a nonnegative integer");
  return r;
}

}  // namespace lietorus
