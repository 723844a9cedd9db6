#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "whitcalc/ratlin.hpp"

namespace wc {

using Elem = Vec;   // coordinates in the algebra basis
using Covec = Vec;  // values on the basis: phi[k] = phi(b_k)
using Root = std::vector<int>;  // coefficients in the simple roots

struct NotRationalSemisimple : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotNilpotent : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonCommuting : std::domain_error {
  using std::domain_error::domain_error;
};
struct Unsupported : std::domain_error {
  using std::domain_error::domain_error;
};

/// Finite crystallographic root system, Bourbaki numbering.
/// Roots 0..P-1 are positive (sorted by height, then lexicographically);
/// root P+k is the negative of root k.
class RootSystem {
 public:
  RootSystem() = default;
  RootSystem(char type, int rank);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;
  bool simply_laced() const;

  /// (alpha_i, alpha_j), long roots of squared length 2.
  const QMat& gram() const { return gram_; }
  /// A_ij = <alpha_j, alpha_i^vee>.
  int cartan(int i, int j) const { return cartan_[i][j]; }

  int num_positive() const { return static_cast<int>(pos_.size()); }
  int num_roots() const { return 2 * num_positive(); }
  const Root& root(int k) const { return all_[k]; }
  int find(const Root& r) const;
  int neg(int k) const { return k < num_positive() ? k + num_positive() : k - num_positive(); }
  bool positive(int k) const { return k < num_positive(); }
  int simple(int i) const { return i; }  // simple roots come first among heights 1
  int height(int k) const;
  int highest() const { return num_positive() - 1; }

  Rat ip(const Root& a, const Root& b) const;
  /// <b, a^vee> = 2(b,a)/(a,a).
  int pairing(const Root& b, const Root& a) const;
  Root reflect(int i, const Root& b) const;
  Root reflect_by(const Root& a, const Root& b) const;

 private:
  char type_ = 'A';
  int rank_ = 0;
  QMat gram_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> pos_;
  std::vector<Root> all_;
  std::map<Root, int> index_;
};

enum class Kind { Abstract, gl, sl, sp, so_split, so_odd };
std::string kind_name(Kind k);

/// Split reductive Lie algebra over Q with a root-vector basis.
/// Basis vectors are either Cartan basis elements or root vectors.
class LieAlgebra {
 public:
  static LieAlgebra build_split(char type, int rank);
  /// n is the matrix size (sp and so_split need n even).
  static LieAlgebra build_matrix(Kind kind, int n);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  bool has_matrices() const { return kind_ != Kind::Abstract; }
  int matrix_size() const { return msize_; }
  const RootSystem& roots() const { return rs_; }
  int semisimple_rank() const { return rs_.rank(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;

  const std::vector<int>& cartan_indices() const { return cartan_idx_; }
  Subspace cartan() const { return Subspace::coordinate(dim_, cartan_idx_); }
  int basis_of_root(int k) const { return basis_of_root_[k]; }
  int root_of_basis(int j) const { return root_of_basis_[j]; }
  /// Eigenvalue of ad(b_{cartan_indices[k]}) on b_j.
  const Rat& weight(int j, int k) const { return weights_[j][k]; }

  const SparseVec& bracket_basis(int i, int j) const { return br_[static_cast<size_t>(i) * dim_ + j]; }
  Elem bracket(const Elem& x, const Elem& y) const;
  /// Column j of ad(x) is [x, b_j].
  QMat ad(const Elem& x) const;
  const QMat& form() const { return form_; }
  Rat pair(const Elem& x, const Elem& y) const;

  Covec covec_of(const Elem& f) const { return form_.apply(f); }
  Elem elem_of(const Covec& phi) const { return form_inv_.apply(phi); }
  /// ad*(X)phi = -phi o ad(X).
  Covec coadjoint(const Elem& X, const Covec& phi) const;
  Rat eval(const Covec& phi, const Elem& x) const { return dot(phi, x); }

  Elem zero() const { return zero_vec(dim_); }
  Elem basis(int j) const { return unit_vec(dim_, j); }
  Elem root_vector(int k) const { return unit_vec(dim_, basis_of_root_[k]); }
  Elem root_vector(const Root& r) const;
  /// h_beta with beta(h_beta) = 2, proportional to [e_beta, e_-beta].
  Elem coroot(int k) const;
  bool in_cartan(const Elem& x) const;
  /// beta(h) for h in the Cartan.
  Rat root_value(int k, const Elem& h) const;
  /// Some Cartan element with alpha_i(h) = vals[i]; for gl the one orthogonal to the center.
  Elem cartan_with_values(const std::vector<Rat>& vals) const;
  Subspace center() const;

  // Matrix realisation.
  QMat matrix_of(const Elem& x) const;
  Elem elem_from_matrix(const QMat& m) const;

  bool is_ad_nilpotent(const Elem& x) const;
  QMat exp_ad(const Elem& X) const;

  /// Exhaustive (or sampled when samples > 0) Jacobi check; returns the number of failures.
  long jacobi_failures(long samples = 0, unsigned seed = 1) const;
  long form_invariance_failures(long samples = 0, unsigned seed = 1) const;

 private:
  void finish_from_weights();
  void compute_form_inverse();

  std::string name_;
  Kind kind_ = Kind::Abstract;
  int dim_ = 0;
  int msize_ = 0;
  RootSystem rs_;
  std::vector<std::string> labels_;
  std::vector<int> cartan_idx_;
  std::vector<int> basis_of_root_;
  std::vector<int> root_of_basis_;
  std::vector<Vec> weights_;
  std::vector<SparseVec> br_;
  QMat form_;
  QMat form_inv_;
  // matrix data
  std::vector<std::vector<std::pair<int, Rat>>> mats_;  // sparse, entry index = row*msize+col
  std::vector<SparseVec> coord_rows_;                   // T rows of the coordinate solve
  std::map<int, int> pivot_row_;                        // entry index -> row of T
};

/// Eigenspace decomposition of ad(S).
struct Grading {
  int dim = 0;
  std::map<Rat, Subspace> pieces;

  Subspace eq(const Rat& l) const;
  Subspace ge(const Rat& l) const;
  Subspace gt(const Rat& l) const;
  Subspace le(const Rat& l) const;
  Subspace lt(const Rat& l) const;
  std::vector<Rat> eigenvalues() const;
};

Grading grading(const LieAlgebra& g, const Elem& S);
/// (a, b) -> g^S_a ∩ g^Z_b, nonzero cells only.
std::map<std::pair<Rat, Rat>, Subspace> bigrading(const LieAlgebra& g, const Elem& S, const Elem& Z);
/// If ad(S) is diagonal in the basis, its diagonal.
std::optional<Vec> diagonal_eigenvalues(const LieAlgebra& g, const Elem& S);

Subspace centralizer(const LieAlgebra& g, const Elem& x);
Subspace centralizer(const LieAlgebra& g, const Subspace& s);
/// {Y : phi o ad(Y) = 0}.
Subspace stab_covec(const LieAlgebra& g, const Covec& phi);
/// Subspace of covectors corresponding to a subspace of elements.
Subspace covec_space(const LieAlgebra& g, const Subspace& s);
Subspace elem_space(const LieAlgebra& g, const Subspace& covecs);
/// Span of [a, b].
Subspace bracket_space(const LieAlgebra& g, const Subspace& a, const Subspace& b);
Subspace subalgebra_generated(const LieAlgebra& g, const Subspace& s);

/// Weyl orbit of a root.
std::vector<int> weyl_orbit(const RootSystem& rs, int k);
/// Simple-reflection word w with w(from) = to, BFS shortest; empty optional if unreachable.
std::optional<std::vector<int>> weyl_word(const RootSystem& rs, int from, int to);
/// Weyl group order by orbit-stabilizer on a regular weight (only for |W| <= 51840).
long weyl_order(const RootSystem& rs);
/// Adjoint automorphism of a Weyl representative n_i = exp(e_i)exp(-f_i)exp(e_i).
QMat weyl_rep(const LieAlgebra& g, int i);

std::shared_ptr<const LieAlgebra> algebra_from_descriptor(const std::string& type, int n);

}  // namespace wc
