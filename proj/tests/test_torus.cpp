#include <doctest.h>

#include <lietorus/classify.hpp>
#include <lietorus/examples.hpp>
#include <set>

using namespace lietorus;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

MultiloopTorus b3_torus() {
  LieAlgebra s = b3_algebra();
  return build_multiloop(s, b3_tuple(s), b3_cartan(s));
}

IntVec neg(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

TEST_CASE("build_multiloop examples") {
  MultiloopTorus u = untwisted_torus(RootSystemType::parse("A2"), 2);
  CHECK(u.a_conditions);
  CHECK(u.nullity() == 2);
  CHECK(u.grading.components.size() == 1);
  for (size_t k = 0; k < u.rd.spaces.size(); ++k) CHECK(u.cells[k][0] == u.rd.spaces[k]);

  MultiloopTorus T = b3_torus();
  CHECK(T.a_conditions);
  CHECK(T.nullity() == 3);
  CHECK(T.delta().type().name() == "A1");
  CHECK(T.m == std::vector<unsigned>{2, 2, 2});

  LieAlgebra s = b3_algebra();
  MultiloopTorus v = build_multiloop(s, twisted_tuple(T, {3, {{1, 1, 0}}}));
  CHECK_FALSE(v.a_conditions);
}

TEST_CASE("window_bracket examples") {
  MultiloopTorus u = untwisted_torus(RootSystemType::parse("A1"), 1);
  auto c = chevalley_basis(RootSystemType::parse("A1"), FieldContext::get(1));
  Homogeneous r = window_bracket(u, {c.ep.e[0], {2}}, {c.ep.f[0], {-5}});
  CHECK(r.x == c.ep.h[0]);
  CHECK(r.degree == IntVec{-3});
  Homogeneous z = window_bracket(u, {zero_vec(u.s.field(), 3), {1}}, {c.ep.f[0], {1}});
  CHECK(is_zero(z.x));

  MultiloopTorus T = b3_torus();
  const Subspace& c100 = T.grading.component({1, 0, 0});
  REQUIRE(c100.dim() == 3);
  Homogeneous b = window_bracket(T, {c100.basis()[0], {1, 0, 0}}, {c100.basis()[1], {1, 0, 0}});
  CHECK(b.degree == IntVec{2, 0, 0});
  CHECK(T.grading.components[0].contains(b.x));
  CHECK(code_of([&] { window_bracket(T, {c100.basis()[0], {0, 0, 0}}, {c100.basis()[1], {1, 0, 0}}); }) ==
        ErrorCode::HomogeneityViolation);
}

TEST_CASE("verify_lie_torus_axioms examples") {
  MultiloopTorus u = untwisted_torus(RootSystemType::parse("A1"), 2);
  AxiomReport a = verify_lie_torus_axioms(u);
  CHECK(a.all());
  SemilatticeReport su = support_semilattices(u);
  for (const auto& [alpha, res] : su.residues) CHECK(res == std::vector<IntVec>{{0, 0}});

  MultiloopTorus T = b3_torus();
  AxiomReport b = verify_lie_torus_axioms(T);
  CHECK(b.all());
  CHECK(b.failures.empty());

  LieAlgebra s = b3_algebra();
  MultiloopTorus v = build_multiloop(s, twisted_tuple(T, {3, {{1, 1, 0}}}), b3_cartan(s));
  AxiomReport c = verify_lie_torus_axioms(v);
  CHECK_FALSE(c.lt2i);
  bool named = false;
  for (const auto& f : c.failures) named = named || f.rfind("(LT2)(i)", 0) == 0;
  CHECK(named);
}

TEST_CASE("support_semilattices examples") {
  MultiloopTorus T = b3_torus();
  SemilatticeReport r = support_semilattices(T);
  CHECK(r.all());
  const IntVec eps = T.delta().base()[0];
  CHECK(r.residues.at(eps).size() == 5);
  CHECK(r.residues.at(neg(eps)).size() == 5);
  CHECK(r.residues.at(IntVec{0}).size() == 8);
  // The residues of eps1 are 0 and the four adjoint characters.
  std::set<IntVec> want{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
  CHECK(std::set<IntVec>(r.residues.at(eps).begin(), r.residues.at(eps).end()) == want);

  for (const char* t : {"A1", "A2", "G2"})
    for (size_t n : {1, 2}) {
      CAPTURE(t);
      CHECK(support_semilattices(untwisted_torus(RootSystemType::parse(t), n)).all());
    }
}

TEST_CASE("root_grading_pair examples") {
  MultiloopTorus u = untwisted_torus(RootSystemType::parse("A2"), 1);
  GradingPair pu = root_grading_pair(u);
  CHECK(pu.verified);
  CHECK(pu.g == Subspace::whole(u.s.field(), 8));
  CHECK(pu.h == u.h);

  MultiloopTorus T = b3_torus();
  GradingPair p = root_grading_pair(T);
  CHECK(p.verified);
  CHECK(p.g.dim() == 3);
  CHECK(p.h == b3_cartan(T.s));

  DiagramSetup d = diagram_setup(diagram_examples()[0]);
  MultiloopTorus a2 = build_multiloop(d.c.algebra, d.tuple);
  GradingPair pa = root_grading_pair(a2);
  CHECK(pa.verified);
  CHECK(pa.g.dim() == 3);
}

TEST_CASE("central_grading_group examples") {
  CentralGrading cu = central_grading_group(untwisted_torus(RootSystemType::parse("A1"), 2), 2);
  CHECK(cu.index == 1);
  CHECK(cu.window_verified);
  CHECK(cu.basis == IntMat{{1, 0}, {0, 1}});

  CentralGrading cb = central_grading_group(b3_torus(), 2);
  CHECK(cb.index == 8);
  CHECK(cb.window_verified);
  CHECK(cb.basis == IntMat{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});

  DiagramSetup d = diagram_setup(diagram_examples()[0]);
  CentralGrading ca = central_grading_group(build_multiloop(d.c.algebra, d.tuple), 2);
  CHECK(ca.index == 2);
  CHECK(ca.basis == IntMat{{2}});
  CHECK(ca.window_verified);
}

TEST_CASE("make_isotope examples") {
  MultiloopTorus T = b3_torus();
  IsotopeResult zero = make_isotope(T, {3, {{0, 0, 0}}}, 1);
  CHECK(same_tuple(zero.twisted, T.tuple));
  CHECK(zero.window_verified);

  IsotopeResult iso = make_isotope(T, {3, {{1, 1, 1}}}, 2);
  CHECK(iso.window_verified);
  CHECK(iso.torus.a_conditions);
  const auto& s = T.s;
  Automorphism cd = conjugation_automorphism(s, b3_sign_matrix(s.field(), 0));
  for (size_t i = 0; i < 3; ++i) CHECK(iso.twisted.entries[i].matrix == cd.matrix * T.tuple.entries[i].matrix);

  // Oracle: [e11-e33, x] = c x computed directly fixes which root space holds each vector.
  const Vec h = matrix_unit_combination(s, {{1, 1, 1}, {3, 3, -1}});
  const Vec w71 = matrix_unit_combination(s, {{7, 1, 1}, {3, 7, -1}});
  const Vec other = matrix_unit_combination(s, {{1, 7, 1}, {7, 3, -1}});
  CHECK(s.bracket(h, w71) == scale(Cyclo(s.field(), -1L), w71));
  CHECK(s.bracket(h, other) == other);
  IntVec root_of_w71, root_of_other;
  for (const auto& [alpha, w] : iso.witnesses) {
    if (w.contains(w71)) root_of_w71 = alpha;
    if (w.contains(other)) root_of_other = alpha;
  }
  REQUIRE_FALSE(root_of_w71.empty());
  REQUIRE_FALSE(root_of_other.empty());
  CHECK(root_of_w71 == neg(root_of_other));
  for (const auto& e : iso.twisted.entries) {
    CHECK(e.matrix * w71 == w71);
    CHECK(e.matrix * other == other);
  }

  CHECK(code_of([&] { make_isotope(T, {3, {{1, 1, 0}}}, 1); }) == ErrorCode::NotAdmissible);
}

TEST_CASE("weyl_automorphism_window examples") {
  MultiloopTorus u = untwisted_torus(RootSystemType::parse("A1"), 1);
  const IntVec a = u.delta().base()[0];
  WeylWindowReport w0 = weyl_automorphism_window(u, a, {0}, 2);
  CHECK(w0.verified);
  CHECK(w0.checked > 0);
  WeylWindowReport w1 = weyl_automorphism_window(u, a, {1}, 2);
  CHECK(w1.verified);

  // The degree law for beta = a and lambda = 1 sends degree mu to mu - 2.
  CHECK(u.delta().reflect(a, a) == neg(a));
  CHECK(u.delta().pairing(a, a) == 2);

  MultiloopTorus T = b3_torus();
  WeylWindowReport wb = weyl_automorphism_window(T, T.delta().base()[0], {1, 0, 0}, 1);
  CHECK(wb.verified);
  CHECK(wb.failures.empty());
  CHECK(code_of([&] { weyl_automorphism_window(T, T.delta().base()[0], {2, 0, 0}, 1); }) == ErrorCode::WindowTooSmall);
}

TEST_CASE("untwisted_test examples") {
  CHECK(untwisted_test(untwisted_torus(RootSystemType::parse("A1"), 1)));
  CHECK_FALSE(untwisted_test(b3_torus()));
  DiagramSetup d = diagram_setup(diagram_examples()[0]);
  CHECK_FALSE(untwisted_test(build_multiloop(d.c.algebra, d.tuple)));
}

TEST_CASE("double grading consistency") {
  std::vector<MultiloopTorus> tori{b3_torus(), untwisted_torus(RootSystemType::parse("G2"), 2)};
  for (size_t i : {0, 4}) {
    DiagramSetup d = diagram_setup(diagram_examples()[i]);
    tori.push_back(build_multiloop(d.c.algebra, d.tuple));
  }
  for (const auto& T : tori) {
    for (size_t c = 0; c < T.grading.characters.size(); ++c) {
      size_t sum = 0;
      for (size_t k = 0; k < T.rd.spaces.size(); ++k) sum += T.cells[k][c].dim();
      CHECK(sum == T.grading.components[c].dim());
    }
    for (size_t k = 0; k < T.rd.spaces.size(); ++k) {
      size_t sum = 0;
      for (size_t c = 0; c < T.grading.characters.size(); ++c) sum += T.cells[k][c].dim();
      CHECK(sum == T.rd.spaces[k].dim());
    }
  }
}

TEST_CASE("sl2 pairs are normalized on every root space") {
  std::vector<MultiloopTorus> tori{b3_torus(), untwisted_torus(RootSystemType::parse("B2"), 1)};
  DiagramSetup d = diagram_setup(diagram_examples()[0]);
  tori.push_back(build_multiloop(d.c.algebra, d.tuple));
  for (const auto& T : tori) {
    const auto& D = T.delta();
    for (const auto& alpha : D.nonzero_roots())
      for (const auto& lambda : T.grading.characters) {
        if (T.cell(alpha, lambda).dim() == 0) continue;
        auto p = sl2_pair(T, alpha, lambda);
        REQUIRE(p);
        Vec hh = T.s.bracket(p->e, p->f);
        for (const auto& beta : D.roots()) {
          auto k = T.rd.find_root(beta);
          if (!k) continue;
          for (const auto& x : T.rd.spaces[*k].basis())
            CHECK(T.s.bracket(hh, x) == scale(Cyclo(T.s.field(), beta == IntVec(beta.size(), 0) ? 0L : D.pairing(beta, alpha)), x));
        }
      }
  }
}

TEST_CASE("isotope by s then by -s returns a bi-isomorphic torus") {
  MultiloopTorus T = b3_torus();
  RootLatticeHom s{3, {{1, 1, 1}}};
  IsotopeResult once = make_isotope(T, s, 1);
  IsotopeResult back = make_isotope(once.torus, s.negated(), 1);
  CHECK(same_tuple(back.twisted, T.tuple));
  CertificateResult c = certificate_check(T, back.torus, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Mat::identity(T.s.field(), 21),
                                          CertificateMode::Biiso);
  CHECK(c.valid);

  RootLatticeHom s2{3, {{1, 0, 0}}};
  IsotopeResult other = make_isotope(T, s2, 1);
  IsotopeResult other_back = make_isotope(other.torus, s2.negated(), 1);
  CHECK(certificate_check(T, other_back.torus, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Mat::identity(T.s.field(), 21),
                          CertificateMode::Biiso)
            .valid);
}

TEST_CASE("residue sets: short roots absorb 2 Lambda-bar, every root absorbs twice itself") {
  std::vector<MultiloopTorus> tori{b3_torus(), untwisted_torus(RootSystemType::parse("G2"), 1)};
  for (size_t i : {0, 2, 4}) {
    DiagramSetup d = diagram_setup(diagram_examples()[i]);
    tori.push_back(build_multiloop(d.c.algebra, d.tuple));
  }
  for (const auto& T : tori) {
    const auto& D = T.delta();
    SemilatticeReport r = support_semilattices(T);
    for (const auto& [alpha, res] : r.residues) {
      if (alpha == IntVec(alpha.size(), 0)) continue;
      std::set<IntVec> set(res.begin(), res.end());
      auto absorbs = [&](const std::vector<IntVec>& shifts) {
        for (const auto& l : res)
          for (const auto& mu : shifts) {
            IntVec x = l;
            for (size_t i = 0; i < x.size(); ++i) x[i] += 2 * mu[i];
            if (!set.count(T.grading.reduce(x))) return false;
          }
        return true;
      };
      CHECK(absorbs(res));
      if (D.is_short(alpha)) CHECK(absorbs(T.grading.characters));
    }
  }
}
