#pragma once

// Finite-order automorphisms, commuting tuples and the gradings they induce.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lietorus/liealg.hpp"

namespace lietorus {

struct Automorphism {
  Mat matrix;  // column j is the image of b_j
  unsigned order = 1;
};

// Smallest k in [1, bound] with m^k = 1, or 0.
unsigned matrix_order(const Mat& m, unsigned bound = 240);

// Verifies multiplicativity and finite order; a declared order must be exact.
Automorphism make_automorphism(const LieAlgebra& s, const Mat& m, std::optional<unsigned> declared = {});
Automorphism identity_automorphism(const LieAlgebra& s);
Automorphism compose(const Automorphism& a, const Automorphism& b);  // a after b

// perm[i] is the image of simple index i.
Automorphism diagram_automorphism(const LieAlgebra& s, const Epinglage& ep, const std::vector<size_t>& perm);
// rho[i] is the scalar on the i-th base root of rd.
Automorphism torus_automorphism(const LieAlgebra& s, const RootDatum& rd, const std::vector<Cyclo>& rho);
// x -> g x g^{-1} for a matrix algebra preserving its form.
Automorphism conjugation_automorphism(const LieAlgebra& s, const Mat& g);

struct AutTuple {
  std::vector<Automorphism> entries;
  std::vector<unsigned> periods;  // m_i, with sigma_i^{m_i} = 1

  size_t size() const { return entries.size(); }
};

AutTuple make_tuple(std::vector<Automorphism> entries, std::vector<unsigned> periods = {});
AutTuple identity_tuple(const LieAlgebra& s, size_t n);
// Entry j is prod_i sigma_i^{p_ij}; periods of the result are the exact orders.
AutTuple tuple_power_action(const AutTuple& t, const IntMat& p);
bool same_tuple(const AutTuple& a, const AutTuple& b);

struct GroupStructure {
  IntMat kernel_basis;  // rows, Hermite form
  unsigned long group_order = 1;
  std::vector<long> invariant_factors;  // > 1, each divisible by the next
};

GroupStructure tuple_group_structure(const AutTuple& t);

struct CharacterGrading {
  std::vector<unsigned> modulus;
  std::vector<IntVec> characters;  // all residues in lex order
  std::vector<Subspace> components;

  IntVec reduce(const IntVec& lambda) const;
  size_t index_of(const IntVec& lambda) const;
  const Subspace& component(const IntVec& lambda) const { return components[index_of(lambda)]; }
  std::vector<IntVec> support() const;
};

CharacterGrading grading_by_tuple(const LieAlgebra& s, const AutTuple& t);

enum class DeltaRelation { Equal, Enlarged, Neither };
const char* relation_name(DeltaRelation r);

struct AReport {
  bool a1 = false, a2 = false, a3 = false;
  SimplicityResult simplicity;
  Subspace g;
  std::optional<Subspace> h;
  GroupStructure group;
  CharacterGrading grading;
  std::vector<std::pair<IntVec, ModuleReport>> modules;  // nonzero residues with nonzero component
  std::optional<RootDatum> delta;    // of (s, h)
  std::optional<RootDatum> delta_g;  // of (g, h)
  std::optional<DeltaRelation> relation;
  std::vector<std::string> failures;

  bool passed() const { return a1 && a2 && a3; }
};

AReport check_A_conditions(const LieAlgebra& s, const AutTuple& t, std::optional<Subspace> h = {});

}  // namespace lietorus
