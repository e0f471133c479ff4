#pragma once

// Orbits of GL_n(Z) on generating tuples, and invariants of multiloop tori.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lietorus/intmat.hpp"
#include "lietorus/torus.hpp"

namespace lietorus {

struct NormalForm {
  IntMat P;  // unimodular
  long p = 0;
};

// A == B entrywise, with row i read modulo m_i.
bool congruent_mod_rows(const IntMat& a, const IntMat& b, const std::vector<long>& m);

// P and p with A P == diag(1, ..., 1, p) modulo the ideal; B certifies that A is invertible there.
NormalForm normalize_mod_ideal(const IntMat& a, const std::vector<long>& m, const IntMat& b);

// The admissible p for a group with the given invariant factors (decreasing, all > 1) and n slots.
std::vector<long> orbit_representatives(const std::vector<long>& invariant_factors, size_t n);

// Finite abelian group Z/f_1 x ... x Z/f_r; elements are mixed-radix integers.
class AbelianGroup {
 public:
  // The addition table is only worth building for groups that are used many times.
  explicit AbelianGroup(std::vector<long> factors, bool addition_table = true);
  const std::vector<long>& factors() const { return f_; }
  long order() const { return order_; }
  std::vector<long> digits(long x) const;
  long encode(const std::vector<long>& d) const;
  long add(long x, long y) const;
  long neg(long x) const;
  long mul(long x, long k) const;
  bool generates(const std::vector<long>& elems) const;

 private:
  long add_digits(long x, long y) const;
  std::vector<long> f_;
  long order_ = 1;
  std::vector<int> sum_;  // addition table for small groups
};

using GroupTuple = std::vector<long>;

// Images of a tuple under the elementary generators: adjacent swaps, inverting slot 0, adjacent
// transvections in both directions.
std::vector<GroupTuple> elementary_moves(const AbelianGroup& g, const GroupTuple& t);

// Lex-least tuple in the orbit; OrbitTooLarge beyond the limit.
GroupTuple canonical_orbit_form(const AbelianGroup& g, const GroupTuple& t, size_t limit = 1000000);

// Orbit id of every tuple of G^n (tuples indexed in mixed radix, slot 0 most significant).
std::vector<size_t> orbit_partition(const AbelianGroup& g, size_t n);
GroupTuple tuple_from_index(const AbelianGroup& g, size_t n, size_t index);

// Some B with A B == Id modulo the ideal of diag(m), by search in the finite group; none if A is not invertible there.
std::optional<IntMat> find_witness(const IntMat& a, const std::vector<long>& m);

// p of a generating tuple, via its exponent matrix over the standard generators.
long tuple_invariant_p(const AbelianGroup& g, const GroupTuple& t);

// All invariant-factor chains (f_1, f_2, ...) with f_{i+1} | f_i, all > 1, product <= bound.
std::vector<std::vector<long>> abelian_groups_up_to(long bound);

struct GroupElement {
  IntVec exponents;
  Mat matrix;
  unsigned order = 1;
};

std::vector<GroupElement> group_elements(const AutTuple& t);

using Profile = std::vector<std::pair<unsigned, size_t>>;  // (eigenvalue order, multiplicity)

struct Fingerprint {
  std::vector<long> invariant_factors;
  std::string fixed_type;
  std::string delta_type;
  std::vector<size_t> component_dims;  // sorted
  std::vector<Profile> eigen_profile;   // sorted
  std::vector<size_t> fixed_dims;       // sorted

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint biiso_fingerprint(const MultiloopTorus& t);
// Names of the fields that differ.
std::vector<std::string> fingerprint_difference(const Fingerprint& a, const Fingerprint& b);

enum class CertificateMode { Biiso, Isotopy };

struct CertificateResult {
  bool valid = false;
  std::string detail;
};

// biiso: sigma'_j phi = phi (sigma^P)_j and phi(h) = h'.
// isotopy: the same with sigma replaced by (tau_i sigma_i); each tau_i must act by characters of Q.
CertificateResult certificate_check(const MultiloopTorus& t, const MultiloopTorus& t2, const IntMat& p, const Mat& phi,
                                    CertificateMode mode, const AutTuple* tau = nullptr);

}  // namespace lietorus
