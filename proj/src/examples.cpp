#include "lietorus/examples.hpp"

namespace lietorus {

Mat diagonal_matrix(const FieldContext& f, const std::vector<long>& d) {
  Mat m(f, d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = Cyclo(f, d[i]);
  return m;
}

LieAlgebra b3_algebra() {
  const FieldContext& f = FieldContext::get(2);
  Mat g(f, 7, 7);
  g(0, 2) = g(1, 1) = g(2, 0) = Cyclo::one(f);
  for (size_t i = 3; i < 7; ++i) g(i, i) = Cyclo::one(f);
  return orthogonal_algebra(g);
}

Mat b3_sign_matrix(const FieldContext& f, int k) {
  switch (k) {
    case 0: return diagonal_matrix(f, {-1, 1, -1, 1, 1, 1, 1});
    case 1: return diagonal_matrix(f, {1, 1, 1, -1, 1, 1, -1});
    case 2: return diagonal_matrix(f, {1, 1, 1, 1, -1, 1, -1});
    case 3: return diagonal_matrix(f, {1, 1, 1, 1, 1, -1, -1});
  }
  throw Error(ErrorCode::SchemaError, "b3_sign_matrix", "index must be 0..3");
}

AutTuple b3_tuple(const LieAlgebra& s) {
  std::vector<Automorphism> e;
  for (int k = 1; k <= 3; ++k) e.push_back(conjugation_automorphism(s, b3_sign_matrix(s.field(), k)));
  return make_tuple(e);
}

Vec matrix_unit_combination(const LieAlgebra& s, const std::vector<std::tuple<size_t, size_t, long>>& terms) {
  const FieldContext& f = s.field();
  const size_t n = s.gram()->rows();
  Mat x(f, n, n);
  for (const auto& [i, j, c] : terms) x(i - 1, j - 1) += Cyclo(f, c);
  auto v = s.matrix_coordinates(x);
  if (!v) throw Error(ErrorCode::NotStable, "matrix_unit_combination", "matrix is not in the algebra");
  return *v;
}

Subspace b3_cartan(const LieAlgebra& s) {
  return Subspace::span(s.field(), s.dim(), {matrix_unit_combination(s, {{1, 1, 1}, {3, 3, -1}})});
}

std::vector<DiagramExample> diagram_examples() {
  return {
      {"A2", {Family::A, 2}, {1, 0}, 2},
      {"A3", {Family::A, 3}, {2, 1, 0}, 2},
      {"A4", {Family::A, 4}, {3, 2, 1, 0}, 2},
      {"D4", {Family::D, 4}, {0, 1, 3, 2}, 2},
      {"D4-3", {Family::D, 4}, {2, 1, 3, 0}, 3},
      {"E6", {Family::E, 6}, {5, 1, 4, 3, 2, 0}, 2},
  };
}

DiagramSetup diagram_setup(const DiagramExample& e) {
  const FieldContext& f = FieldContext::get(e.conductor);
  DiagramSetup d{chevalley_basis(e.type, f), {}};
  d.tuple = make_tuple({diagram_automorphism(d.c.algebra, d.c.ep, e.perm)});
  return d;
}

MultiloopTorus untwisted_torus(const RootSystemType& t, size_t n) {
  ChevalleyAlgebra c = chevalley_basis(t, FieldContext::get(1));
  return build_multiloop(c.algebra, identity_tuple(c.algebra, n), c.ep.cartan);
}

}  // namespace lietorus
