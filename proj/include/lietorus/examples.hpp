#pragma once

// Ready-made algebras and tuples used by the CLI and the tests.

#include <string>
#include <tuple>
#include <vector>

#include "lietorus/torus.hpp"

namespace lietorus {

Mat diagonal_matrix(const FieldContext& f, const std::vector<long>& d);

// o(f) for f = diag(J3, I4) on k^7, over Q(zeta_2) so that sign gradings are available.
LieAlgebra b3_algebra();
// d_1, d_2, d_3 for k = 1, 2, 3; the twist diag(-1,1,-1,I4) for k = 0.
Mat b3_sign_matrix(const FieldContext& f, int k);
AutTuple b3_tuple(const LieAlgebra& s);
// span(e11 - e33)
Subspace b3_cartan(const LieAlgebra& s);

// Coordinates of sum c * e_ij (1-based indices) in a matrix algebra.
Vec matrix_unit_combination(const LieAlgebra& s, const std::vector<std::tuple<size_t, size_t, long>>& terms);

struct DiagramExample {
  std::string name;
  RootSystemType type;
  std::vector<size_t> perm;  // 0-based image of each simple index
  unsigned conductor;
};

// A2, A3, A4 (reversal), D4 (order 2 and 3), E6.
std::vector<DiagramExample> diagram_examples();

struct DiagramSetup {
  ChevalleyAlgebra c;
  AutTuple tuple;
};

DiagramSetup diagram_setup(const DiagramExample& e);

// (s, identity tuple of length n, Cartan of the Chevalley basis).
MultiloopTorus untwisted_torus(const RootSystemType& t, size_t n);

}  // namespace lietorus
