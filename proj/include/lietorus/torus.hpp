#pragma once

// Multiloop Lie tori, kept as the finite kernel of cells s_alpha^lambda-bar.
//
// The degree-lambda piece of root alpha is s_alpha^{lambda mod m} tensor z^lambda, so every
// statement about the infinite algebra reduces to one about cells and residues.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lietorus/autos.hpp"

namespace lietorus {

struct MultiloopTorus {
  LieAlgebra s;
  AutTuple tuple;
  Subspace h;
  std::vector<unsigned> m;
  RootDatum rd;  // of (s, h); rd.coords are the roots in Delta
  CharacterGrading grading;
  AReport a_report;
  bool a_conditions = false;
  // cells[k][c] = rd.spaces[k] intersected with grading.components[c]
  std::vector<std::vector<Subspace>> cells;

  size_t nullity() const { return m.size(); }
  const RootSystem& delta() const { return *rd.roots; }
  // Cell of a root (base coordinates of Delta) at any degree; zero if the root is absent.
  Subspace cell(const IntVec& alpha, const IntVec& lambda) const;
};

// h defaults to a Cartan subalgebra of the fixed algebra. Non-tori are returned with the
// A-report flags set, so the axiom checker can say what fails.
MultiloopTorus build_multiloop(const LieAlgebra& s, const AutTuple& t, std::optional<Subspace> h = {});

struct Homogeneous {
  Vec x;
  IntVec degree;
};

Homogeneous window_bracket(const MultiloopTorus& t, const Homogeneous& x, const Homogeneous& y);

struct AxiomReport {
  bool lt1 = false, lt2i = false, lt2ii = false, lt3 = false, lt4 = false, lt5 = false;
  std::vector<std::string> failures;
  bool all() const { return lt1 && lt2i && lt2ii && lt3 && lt4 && lt5; }
};

AxiomReport verify_lie_torus_axioms(const MultiloopTorus& t);

// Normalized pair with [[e,f], x_beta] = <beta, alpha^vee> x_beta, when the cell is nonzero.
struct Sl2Pair {
  Vec e, f;
};
std::optional<Sl2Pair> sl2_pair(const MultiloopTorus& t, const IntVec& alpha, const IntVec& lambda);

struct SemilatticeReport {
  std::map<IntVec, std::vector<IntVec>> residues;  // root -> residues with a nonzero cell
  bool p1 = false, p2 = false, p3 = false, p4 = false, p5 = false, p6 = false;
  std::vector<std::string> failures;
  bool all() const { return p1 && p2 && p3 && p4 && p5 && p6; }
};

SemilatticeReport support_semilattices(const MultiloopTorus& t);

struct GradingPair {
  Subspace g, h;
  bool verified = false;
  std::string detail;
};

GradingPair root_grading_pair(const MultiloopTorus& t);

struct CentralGrading {
  IntMat basis;  // rows
  unsigned long index = 1;
  bool window_verified = false;
};

// Checks on the window that id tensor z^lambda is a degree-lambda centroid map iff lambda-bar = 0.
CentralGrading central_grading_group(const MultiloopTorus& t, long radius);

struct IsotopeResult {
  RootLatticeHom shift;
  AutTuple twist;
  AutTuple twisted;
  MultiloopTorus torus;
  bool window_verified = false;
  // Nonzero roots alpha with a nonzero fixed vector of the twisted tuple in s_alpha.
  std::vector<std::pair<IntVec, Subspace>> witnesses;
};

// (tau_i sigma_i) with tau_i acting on s_alpha by zeta_{m_i}^{-s_i(alpha)}; no admissibility check.
AutTuple twisted_tuple(const MultiloopTorus& t, const RootLatticeHom& shift, AutTuple* twist = nullptr);

IsotopeResult make_isotope(const MultiloopTorus& t, const RootLatticeHom& shift, long radius);

struct WeylWindowReport {
  bool verified = false;
  size_t checked = 0;
  std::vector<std::string> failures;
};

WeylWindowReport weyl_automorphism_window(const MultiloopTorus& t, const IntVec& alpha, const IntVec& lambda, long radius);

// True iff h is a Cartan subalgebra of s (full rank); cross-checked against sigma = 1.
bool untwisted_test(const MultiloopTorus& t);

// Window radius from LIETORUS_WINDOW, default 2.
long default_window_radius();

// All degrees in [-r, r]^n, lex order.
std::vector<IntVec> window_degrees(size_t n, long r);

}  // namespace lietorus
