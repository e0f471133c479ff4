#pragma once

// Lie algebras given by structure constants over Q(zeta_N).

#include <optional>
#include <string>
#include <vector>

#include "lietorus/linalg.hpp"
#include "lietorus/rootsys.hpp"

namespace lietorus {

struct Term {
  size_t index;
  Cyclo coeff;
};
using SparseVec = std::vector<Term>;

class LieAlgebra {
 public:
  LieAlgebra() = default;
  // brackets[i * dim + j] = [b_i, b_j] for i < j; the rest is filled by antisymmetry.
  // Antisymmetry and Jacobi are checked on all basis triples when verify is set.
  LieAlgebra(const FieldContext& f, size_t dim, std::vector<std::string> labels,
             std::vector<SparseVec> upper_brackets, bool verify = true);

  const FieldContext& field() const { return *f_; }
  size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVec& bracket_basis(size_t i, size_t j) const { return table_[i * dim_ + j]; }

  Vec bracket(const Vec& x, const Vec& y) const;
  Mat ad(const Vec& x) const;
  Mat ad_basis(size_t i) const;
  bool is_abelian() const;
  // phi[b_i,b_j] = [phi b_i, phi b_j] for all basis pairs (phi maps into target, column convention).
  bool is_homomorphism(const Mat& phi, const LieAlgebra& target) const;
  // First basis triple violating Jacobi, if any.
  std::optional<std::string> jacobi_violation() const;

  // Structure constants of a subalgebra in the basis of s (throws NotStable if not closed).
  LieAlgebra subalgebra(const Subspace& s) const;
  // Same constants viewed over a larger cyclotomic field.
  LieAlgebra over(const FieldContext& f) const;

  // Matrix realization, if the algebra was built from matrices.
  const std::vector<Mat>& matrices() const { return matrices_; }
  const std::optional<Mat>& gram() const { return gram_; }
  void set_realization(std::vector<Mat> m, std::optional<Mat> gram) {
    matrices_ = std::move(m);
    gram_ = std::move(gram);
  }
  // Coordinates of a matrix in the realization basis.
  std::optional<Vec> matrix_coordinates(const Mat& x) const;

 private:
  const FieldContext* f_ = nullptr;
  size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;
  std::vector<Mat> matrices_;
  std::optional<Mat> gram_;
};

struct Epinglage {
  Subspace cartan;
  IntMat cartan_matrix;  // n_ij = <alpha_i, alpha_j^vee>
  std::vector<Vec> e, f, h;
};

struct ChevalleyAlgebra {
  LieAlgebra algebra;
  Epinglage ep;
  RootSystem roots;
  std::vector<IntVec> basis_roots;  // root of each basis vector (zero for the Cartan part)
};

ChevalleyAlgebra chevalley_basis(const RootSystemType& t, const FieldContext& f);

LieAlgebra orthogonal_algebra(const Mat& gram);

// The unique homomorphism s -> target sending each pair's first vector to its second, found by
// bracket propagation; the sources must generate s. Throws ExtensionInconsistent otherwise.
Mat extend_generator_map(const LieAlgebra& s, const LieAlgebra& target,
                         const std::vector<std::pair<Vec, Vec>>& gens, const std::string& op);

// "e11-e33" style name of a vector from basis names.
std::string combination_label(const Vec& v, const std::vector<std::string>& names);

Mat killing_form(const LieAlgebra& l);

struct SimplicityResult {
  bool simple = false;
  std::optional<Subspace> ideal;  // proper nonzero ideal when not simple
  std::string reason;
};

SimplicityResult is_simple(const LieAlgebra& l);

// Ideal of l generated by the given vectors.
Subspace generated_ideal(const LieAlgebra& l, const std::vector<Vec>& gens);
// Subalgebra generated by the given vectors.
Subspace generated_subalgebra(const LieAlgebra& l, const std::vector<Vec>& gens);

struct CartanResult {
  Subspace h;  // in the coordinates of the ambient algebra
  Vec regular;  // regular element of g with F0(ad x) = h
};

// Cartan subalgebra of the subalgebra g of s; semisimplicity tested through ad on s.
CartanResult cartan_subalgebra(const LieAlgebra& s, const Subspace& g);
inline CartanResult cartan_subalgebra(const LieAlgebra& g) {
  return cartan_subalgebra(g, Subspace::whole(g.field(), g.dim()));
}

struct RootDatum {
  Subspace cartan;
  Subspace ambient;             // the ad(h)-stable space that was decomposed
  std::vector<Vec> weights;     // values on cartan.basis()
  std::vector<Subspace> spaces;
  std::optional<RootSystem> roots;
  std::vector<IntVec> coords;   // per space, base coordinates (when identified)
  std::string identification_error;

  std::optional<size_t> find_weight(const Vec& w) const;
  std::optional<size_t> find_root(const IntVec& c) const;
  // Weight (values on the Cartan basis) of a root given in base coordinates.
  Vec weight_of(const IntVec& c) const;
  size_t zero_index() const;
};

// Joint eigenspace decomposition of the ad(h)-stable subspace w (whole s by default).
RootDatum root_space_decomposition(const LieAlgebra& s, const Subspace& h);
RootDatum decompose_subspace(const LieAlgebra& s, const Subspace& h, const Subspace& w);

enum class ModuleIdentity { Adjoint, LittleAdjoint, Symmetric, Trivial, Other };
const char* module_identity_name(ModuleIdentity m);

struct Summand {
  Vec highest_weight;
  IntVec highest_weight_coords;  // in the base of Delta_g when it lies in the root lattice
  size_t dimension = 0;
  size_t multiplicity = 1;
  ModuleIdentity identity = ModuleIdentity::Other;
  bool weights_checked = false;  // nonzero weights match the expected set, each with multiplicity 1
};

struct ModuleReport {
  std::vector<Summand> summands;
  bool multiplicity_free_nonzero = true;
  bool a2_shape = false;
};

// g is a simple subalgebra of s with split Cartan h; v a g-stable subspace of s.
ModuleReport analyze_module(const LieAlgebra& s, const Subspace& g, const Subspace& h, const Subspace& v);
ModuleReport analyze_module(const LieAlgebra& s, const Subspace& g, const RootDatum& g_roots, const Subspace& v);

// Weights of a root datum as rational vectors when possible, otherwise coordinates over a
// greedily chosen basis of nonzero weights; throws NonSplitWeights if not rational there.
std::vector<std::vector<Rational>> rational_weight_coordinates(const std::vector<Vec>& weights);

}  // namespace lietorus
