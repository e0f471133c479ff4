#include <doctest.h>

#include <lietorus/examples.hpp>
#include <algorithm>

using namespace lietorus;

namespace {

Cyclo trace(const Mat& m) {
  Cyclo t = Cyclo::zero(m.field());
  for (size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Cyclo kappa(const Mat& k, const Vec& x, const Vec& y) { return dot(x, k * y); }

const std::vector<std::string> kTypes{"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"};

}  // namespace

TEST_CASE("chevalley_basis examples") {
  const auto& q = FieldContext::get(1);
  auto a1 = chevalley_basis(RootSystemType::parse("A1"), q);
  CHECK(a1.algebra.dim() == 3);
  const auto& s = a1.algebra;
  const Vec& e = a1.ep.e[0];
  const Vec& f = a1.ep.f[0];
  const Vec& h = a1.ep.h[0];
  CHECK(s.bracket(e, f) == h);
  CHECK(s.bracket(h, e) == scale(Cyclo(q, 2L), e));
  CHECK(s.bracket(h, f) == scale(Cyclo(q, -2L), f));

  CHECK(chevalley_basis(RootSystemType::parse("F4"), q).algebra.dim() == 52);
  CHECK(chevalley_basis(RootSystemType::parse("G2"), q).algebra.dim() == 14);
  CHECK_THROWS_AS(chevalley_basis(RootSystemType::parse("BC2"), q), Error);
}

TEST_CASE("orthogonal_algebra examples") {
  LieAlgebra b3 = b3_algebra();
  CHECK(b3.dim() == 21);
  // I4 is anisotropic over Q, so a split Cartan of o(f) needs Q(i).
  CHECK_THROWS_AS(cartan_subalgebra(b3), Error);
  LieAlgebra b3i = b3.over(FieldContext::get(4));
  RootDatum rd = root_space_decomposition(b3i, cartan_subalgebra(b3i).h);
  REQUIRE(rd.roots);
  CHECK(rd.roots->type().name() == "B3");

  const auto& f4 = FieldContext::get(4);
  LieAlgebra so3 = orthogonal_algebra(Mat::identity(f4, 3));
  CHECK(so3.dim() == 3);
  RootDatum rd3 = root_space_decomposition(so3, cartan_subalgebra(so3).h);
  REQUIRE(rd3.roots);
  CHECK(rd3.roots->type().name() == "A1");

  LieAlgebra so2 = orthogonal_algebra(Mat::identity(f4, 2));
  CHECK(so2.dim() == 1);
  CHECK_FALSE(is_simple(so2).simple);

  CHECK_THROWS_AS(orthogonal_algebra(Mat(f4, 3, 3)), Error);
}

TEST_CASE("killing_form examples and invariance") {
  const auto& q = FieldContext::get(1);
  auto a1 = chevalley_basis(RootSystemType::parse("A1"), q);
  Mat k = killing_form(a1.algebra);
  CHECK(kappa(k, a1.ep.h[0], a1.ep.h[0]) == Cyclo(q, 8L));
  // Oracle: trace(ad x ad y) directly.
  const Mat adh = a1.algebra.ad(a1.ep.h[0]);
  CHECK(trace(adh * adh) == Cyclo(q, 8L));

  for (const auto& t : kTypes) {
    CAPTURE(t);
    auto c = chevalley_basis(RootSystemType::parse(t), q);
    const auto& s = c.algebra;
    Mat kf = killing_form(s);
    CHECK(rank(kf) == s.dim());
    for (size_t i = 0; i < std::min<size_t>(s.dim(), 6); ++i)
      for (size_t j = 0; j < s.dim(); ++j) {
        Vec x = unit_vec(q, s.dim(), i), y = unit_vec(q, s.dim(), j);
        CHECK(kappa(kf, x, y) == trace(s.ad_basis(i) * s.ad_basis(j)));
        for (size_t l = 0; l < s.dim(); l += 3) {
          Vec z = unit_vec(q, s.dim(), l);
          CHECK(kappa(kf, s.bracket(x, y), z) == kappa(kf, x, s.bracket(y, z)));
        }
      }
  }

  LieAlgebra ab(q, 1, {"x"}, std::vector<SparseVec>(1));
  CHECK(killing_form(ab).is_zero());
}

TEST_CASE("is_simple examples") {
  const auto& q = FieldContext::get(1);
  CHECK(is_simple(chevalley_basis(RootSystemType::parse("A1"), q).algebra).simple);

  LieAlgebra b3 = b3_algebra();
  auto variant = check_A_conditions(b3, twisted_tuple(build_multiloop(b3, b3_tuple(b3), b3_cartan(b3)), {3, {{1, 1, 0}}}));
  CHECK(variant.g.dim() == 1);
  CHECK(variant.g == b3_cartan(b3));
  CHECK_FALSE(variant.simplicity.simple);

  // so(4) = A1 + A1.
  const auto& f4 = FieldContext::get(4);
  LieAlgebra so4 = orthogonal_algebra(Mat::identity(f4, 4));
  auto r = is_simple(so4);
  CHECK_FALSE(r.simple);
  REQUIRE(r.ideal);
  CHECK(r.ideal->dim() == 3);
  for (const auto& x : r.ideal->basis())
    for (size_t j = 0; j < so4.dim(); ++j) CHECK(r.ideal->contains(so4.bracket(x, unit_vec(f4, 6, j))));
}

TEST_CASE("cartan_subalgebra examples") {
  const auto& q = FieldContext::get(1);
  auto a1 = chevalley_basis(RootSystemType::parse("A1"), q);
  CHECK(cartan_subalgebra(a1.algebra).h == Subspace::span(q, 3, {a1.ep.h[0]}));

  LieAlgebra b3 = b3_algebra();
  AReport r = check_A_conditions(b3, b3_tuple(b3));
  REQUIRE(r.h);
  CHECK(*r.h == b3_cartan(b3));
  CHECK(b3_cartan(b3) == Subspace::span(b3.field(), 21, {matrix_unit_combination(b3, {{1, 1, 1}, {3, 3, -1}})}));

  auto f4 = chevalley_basis(RootSystemType::parse("F4"), q);
  Subspace h = cartan_subalgebra(f4.algebra).h;
  CHECK(h.dim() == 4);
  for (const auto& x : h.basis())
    for (const auto& y : h.basis()) CHECK(is_zero(f4.algebra.bracket(x, y)));
}

TEST_CASE("root_space_decomposition examples") {
  const auto& q = FieldContext::get(1);
  auto a1 = chevalley_basis(RootSystemType::parse("A1"), q);
  RootDatum rd = root_space_decomposition(a1.algebra, a1.ep.cartan);
  CHECK(rd.spaces.size() == 3);
  std::vector<Cyclo> w;
  for (size_t k = 0; k < rd.spaces.size(); ++k) {
    CHECK(rd.spaces[k].dim() == 1);
    w.push_back(rd.weights[k][0]);
  }
  // The Cartan basis vector is a multiple c h of h, so weights are c * {2, 0, -2}.
  Cyclo c = a1.ep.cartan.basis()[0][a1.ep.cartan.pivots()[0]] / a1.ep.h[0][a1.ep.cartan.pivots()[0]];
  for (long v : {2L, 0L, -2L}) CHECK(std::count(w.begin(), w.end(), Cyclo(q, v) * c) == 1);

  LieAlgebra b3 = b3_algebra();
  RootDatum rb = root_space_decomposition(b3, b3_cartan(b3));
  REQUIRE(rb.roots);
  CHECK(rb.roots->type().name() == "A1");
  CHECK(rb.roots->roots().size() == 3);

  auto f4 = chevalley_basis(RootSystemType::parse("F4"), q);
  RootDatum rf = root_space_decomposition(f4.algebra, f4.ep.cartan);
  size_t ones = 0, total = 0;
  for (const auto& sp : rf.spaces) {
    ones += sp.dim() == 1;
    total += sp.dim();
  }
  CHECK(ones == 48);
  CHECK(rf.spaces[rf.zero_index()].dim() == 4);
  CHECK(total == 52);
}

TEST_CASE("analyze_module examples") {
  LieAlgebra b3 = b3_algebra();
  AReport r = check_A_conditions(b3, b3_tuple(b3));
  size_t adjoint = 0, trivial = 0;
  for (const auto& [lambda, m] : r.modules) {
    REQUIRE(m.summands.size() >= 1);
    if (m.summands.size() == 1 && m.summands[0].identity == ModuleIdentity::Adjoint && m.summands[0].dimension == 3) ++adjoint;
    bool all_trivial = true;
    size_t dim = 0;
    for (const auto& s : m.summands) {
      all_trivial = all_trivial && s.identity == ModuleIdentity::Trivial;
      dim += s.dimension * s.multiplicity;
    }
    if (all_trivial && dim == 2) ++trivial;
  }
  CHECK(adjoint == 4);
  CHECK(trivial == 3);

  // A2 involution on s^1: one summand of dim 5 with highest weight 2 theta_sh.
  DiagramSetup d = diagram_setup(diagram_examples()[0]);
  REQUIRE(d.tuple.entries[0].order == 2);
  AReport ra = check_A_conditions(d.c.algebra, d.tuple);
  REQUIRE(ra.modules.size() == 1);
  const auto& m = ra.modules[0].second;
  REQUIRE(m.summands.size() == 1);
  CHECK(m.summands[0].dimension == 5);
  CHECK(m.summands[0].identity == ModuleIdentity::Symmetric);

  // Oracle: eigenvalues of ad of the coroot of g on the (-1)-eigenspace are -4, -2, 0, 2, 4.
  const auto& s = d.c.algebra;
  const auto& f = s.field();
  Subspace v = kernel_in(d.tuple.entries[0].matrix + Mat::identity(f, s.dim()), Subspace::whole(f, s.dim()));
  CHECK(v.dim() == 5);
  REQUIRE(ra.h);
  Vec h = ra.h->basis()[0];
  Subspace g = ra.g;
  Mat adh_g = restrict_to(s.ad(h), g);
  // Rescale h so that its eigenvalues on g are 2, 0, -2.
  Cyclo top = Cyclo::zero(f);
  for (const auto& root : split_into_linear_factors(minimal_polynomial(adh_g)))
    if (!root.root.is_zero()) top = root.root;
  h = scale(Cyclo(f, 2L) / top, h);
  Mat adh_v = restrict_to(s.ad(h), v);
  for (long c : {-4L, -2L, 0L, 2L, 4L}) {
    Mat shifted = adh_v - Mat::identity(f, 5).scaled(Cyclo(f, c));
    CHECK(5 - rank(shifted) == 1);
  }
}

TEST_CASE("Jacobi and antisymmetry for every constructed algebra") {
  const auto& q = FieldContext::get(1);
  for (const auto& t : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    CAPTURE(t);
    const LieAlgebra& s = chevalley_basis(RootSystemType::parse(t), q).algebra;
    CHECK_FALSE(s.jacobi_violation());
  }
  LieAlgebra b3 = b3_algebra();
  CHECK_FALSE(b3.jacobi_violation());
  for (size_t i = 0; i < b3.dim(); ++i)
    for (size_t j = 0; j < b3.dim(); ++j) {
      Vec x = unit_vec(b3.field(), 21, i), y = unit_vec(b3.field(), 21, j);
      CHECK(b3.bracket(x, y) == scale(Cyclo(b3.field(), -1L), b3.bracket(y, x)));
    }
}

TEST_CASE("bad structure constants are rejected") {
  const auto& q = FieldContext::get(1);
  // [x, y] = x, [x, z] = y, [y, z] = 0 violates Jacobi.
  std::vector<SparseVec> t(9);
  t[0 * 3 + 1] = {{0, Cyclo(q, 1L)}};
  t[0 * 3 + 2] = {{1, Cyclo(q, 1L)}};
  CHECK_THROWS_AS(LieAlgebra(q, 3, {}, t), Error);
}

TEST_CASE("root spaces sum to s and pair under the Killing form as the grading dictates") {
  LieAlgebra b3 = b3_algebra();
  MultiloopTorus T = build_multiloop(b3, b3_tuple(b3), b3_cartan(b3));
  size_t total = 0;
  for (const auto& sp : T.rd.spaces) total += sp.dim();
  CHECK(total == 21);

  Mat k = killing_form(b3);
  const auto& chars = T.grading.characters;
  for (size_t a = 0; a < T.rd.spaces.size(); ++a)
    for (size_t b = 0; b < T.rd.spaces.size(); ++b)
      for (size_t l = 0; l < chars.size(); ++l)
        for (size_t m = 0; m < chars.size(); ++m) {
          IntVec sum_alpha = T.rd.coords[a];
          for (size_t i = 0; i < sum_alpha.size(); ++i) sum_alpha[i] += T.rd.coords[b][i];
          IntVec sum_lambda = chars[l];
          for (size_t i = 0; i < sum_lambda.size(); ++i) sum_lambda[i] += chars[m][i];
          bool opposite = std::all_of(sum_alpha.begin(), sum_alpha.end(), [](long x) { return x == 0; }) &&
                          T.grading.index_of(sum_lambda) == 0;
          if (opposite) continue;
          for (const auto& x : T.cells[a][l].basis())
            for (const auto& y : T.cells[b][m].basis()) CHECK(kappa(k, x, y).is_zero());
        }
}

TEST_CASE("condition-(M) summands have multiplicity-one nonzero weights") {
  for (const auto& e : diagram_examples()) {
    if (e.name == "E6") continue;
    CAPTURE(e.name);
    DiagramSetup d = diagram_setup(e);
    AReport r = check_A_conditions(d.c.algebra, d.tuple);
    for (const auto& [lambda, m] : r.modules) {
      CHECK(m.multiplicity_free_nonzero);
      for (const auto& s : m.summands)
        if (s.identity != ModuleIdentity::Trivial) CHECK(s.weights_checked);
    }
  }
}
