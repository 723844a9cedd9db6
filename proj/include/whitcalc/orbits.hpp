#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whitcalc/whittaker.hpp"

namespace wc {

struct NoMatrixRealization : std::domain_error {
  using std::domain_error::domain_error;
};

/// Complex orbit label. For abstract builds the partition is the Jordan
/// type of ad(f) (adjoint = true), otherwise of the defining matrix.
struct OrbitLabel {
  std::vector<int> partition;
  Kind kind = Kind::Abstract;
  bool adjoint = false;
  std::string form_notes;

  int size() const;
  std::string str() const;
  bool operator==(const OrbitLabel& o) const {
    return partition == o.partition && kind == o.kind && adjoint == o.adjoint;
  }
  bool operator!=(const OrbitLabel& o) const { return !(*this == o); }
};

/// Jordan type of a nilpotent matrix from ranks of its powers.
std::vector<int> nilpotent_partition(const QMat& m);
/// Defining representation; throws NoMatrixRealization for abstract builds.
OrbitLabel jordan_partition(const LieAlgebra& g, const Elem& f);
/// Matrix label when available, adjoint label otherwise.
OrbitLabel orbit_label(const LieAlgebra& g, const Elem& f);
/// Dominance order; throws DimensionMismatch on different sizes or kinds.
bool closure_leq(const OrbitLabel& a, const OrbitLabel& b);

struct PLResult {
  enum Status { Yes, No, Exhausted } status = Exhausted;
  std::vector<int> levi;  // simple roots of the Levi where phi is principal
  std::vector<int> word;  // simple reflections used
  std::string note;
};
PLResult is_PL(const LieAlgebra& g, const Covec& phi);

enum class Tri { Yes, No, Unknown };
std::string tri_name(Tri t);
struct DistResult {
  Tri verdict = Tri::Unknown;
  std::string certificate;
  std::optional<Elem> witness;  // split torus element outside the center on NO
};
/// phi lies in no proper Levi of `within` (itself a Levi subalgebra).
DistResult is_k_distinguished(const LieAlgebra& g, const Covec& phi, const Subspace& within,
                              const std::optional<Elem>& h = std::nullopt);

struct Transport {
  Elem X;
  std::vector<Elem> word;  // Ad*(exp(word[k-1]) ... exp(word[0])) (phi + phi') = phi
};
/// X in g^Z_{>0} (and g^S_0 when S given) with ad*(X) phi = phi'.
std::optional<Transport> solve_transport(const LieAlgebra& g, const Covec& phi, const Covec& phi_prime,
                                         const Elem& Z, const std::optional<Elem>& S = std::nullopt,
                                         const std::optional<Rat>& q = std::nullopt);

struct OrderWitness {
  Elem Z;
  Covec phi;
  Covec phi_prime;
};
void validate_witness(const LieAlgebra& g, const OrderWitness& w);
bool order_related(const LieAlgebra& g, const OrbitLabel& a, const OrderWitness& w);

/// Cartan element S_i with alpha_j(S_i) = 2 delta_ij.
Elem fundamental_coweight2(const LieAlgebra& g, int i);

}  // namespace wc
