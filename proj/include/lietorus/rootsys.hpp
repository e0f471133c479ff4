#pragma once

// Finite irreducible root systems with 0 included, stored in base coordinates.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lietorus/field.hpp"

namespace lietorus {

using IntVec = std::vector<long>;
using IntMat = std::vector<std::vector<long>>;

enum class Family { A, B, C, D, E, F, G, BC };

struct RootSystemType {
  Family family = Family::A;
  unsigned rank = 1;

  std::string name() const;
  static RootSystemType parse(const std::string& s);
  bool reduced() const { return family != Family::BC; }
  friend bool operator==(const RootSystemType& a, const RootSystemType& b) {
    return a.family == b.family && a.rank == b.rank;
  }
  friend bool operator!=(const RootSystemType& a, const RootSystemType& b) { return !(a == b); }
};

bool is_admissible(const RootSystemType& t);

// Bourbaki-ordered matrix n_ij = <alpha_i, alpha_j^vee>. Accepts D_l for l >= 3 and B_1/C_1 = A_1
// for internal constructions; BC_l returns the matrix of B_l (A_1 when l = 1).
IntMat cartan_matrix(Family f, unsigned rank);

class RootSystem {
 public:
  RootSystem() = default;
  // roots in base coordinates (any order, zero optional); cartan[i][j] = <alpha_i, alpha_j^vee>.
  RootSystem(RootSystemType type, IntMat cartan, std::vector<IntVec> roots);

  const RootSystemType& type() const { return type_; }
  unsigned rank() const { return static_cast<unsigned>(cartan_.size()); }
  const IntMat& cartan() const { return cartan_; }
  // Sorted by height, then lexicographically; includes the zero vector.
  const std::vector<IntVec>& roots() const { return roots_; }
  std::vector<IntVec> nonzero_roots() const;
  std::vector<IntVec> positive_roots() const;
  std::vector<IntVec> base() const;

  bool contains(const IntVec& a) const { return index_.count(a) > 0; }
  long height(const IntVec& a) const;
  // <a, b^vee>, b nonzero.
  long pairing(const IntVec& a, const IntVec& b) const;
  // W-invariant symmetric form in base coordinates.
  Rational form(const IntVec& a, const IntVec& b) const;
  IntVec reflect(const IntVec& a, const IntVec& b) const;  // w_b(a)
  bool is_short(const IntVec& a) const;  // nonzero of minimal length
  bool is_reduced() const;
  bool is_divisible(const IntVec& a) const;  // a/2 is a nonzero root

 private:
  void validate() const;
  RootSystemType type_;
  IntMat cartan_;
  std::vector<std::vector<Rational>> gram_;
  std::vector<IntVec> roots_;
  std::map<IntVec, size_t> index_;
  Rational min_norm_;
};

RootSystem build_root_system(const RootSystemType& t);

struct RootVariants {
  RootSystem ind;
  RootSystem en;
  std::vector<IntVec> sh;  // nonzero short roots
  IntVec theta;
  IntVec theta_sh;
};

RootVariants derive_variants(const RootSystem& d);

// Identification of a root system given as rational vectors in arbitrary coordinates.
struct IdentifiedRoots {
  RootSystem system;
  std::vector<IntVec> coords;  // base coordinates of each input vector, in input order
  std::vector<size_t> base_inputs;  // indices into the input of the chosen simple roots
};

IdentifiedRoots identify_rational_roots(const std::vector<std::vector<Rational>>& vecs);
RootSystemType identify_type(const std::vector<std::vector<Rational>>& vecs);

std::vector<IntVec> weyl_orbit(const RootSystem& d, const IntVec& a);

// s in Hom(Q, Z^n), given on the base.
struct RootLatticeHom {
  unsigned target_rank = 0;
  std::vector<IntVec> images;  // one per base root
  IntVec apply(const IntVec& coords) const;
  RootLatticeHom negated() const;
};

std::string intvec_to_string(const IntVec& v);

}  // namespace lietorus
