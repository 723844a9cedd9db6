#pragma once

#include <optional>
#include <string>

#include "whitcalc/liealg.hpp"

namespace wc {

struct InvalidPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SearchFailed : std::domain_error {
  using std::domain_error::domain_error;
};
struct PhiMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
/// A statement that is a theorem failed to hold: always a bug.
struct InternalFailure : std::logic_error {
  using std::logic_error::logic_error;
};

struct WhittakerPair {
  Elem S;
  Covec phi;
};

struct WhittakerTriple {
  Elem S;
  Covec phi;
  Covec phi_prime;
  WhittakerPair pair() const { return {S, phi}; }
};

struct Sl2Triple {
  Elem e, h, f;
};

/// omega(i, j) = phi([b_i, b_j]).
QMat omega(const LieAlgebra& g, const Covec& phi);
/// {x in u : omega(x, u) = 0}.
Subspace radical(const LieAlgebra& g, const Covec& phi, const Subspace& u);
bool is_isotropic(const LieAlgebra& g, const Covec& phi, const Subspace& r);
bool is_ideal(const LieAlgebra& g, const Subspace& a, const Subspace& in);

/// Covector version of a grading piece: phi with elem_of(phi) in the piece.
bool covec_in(const LieAlgebra& g, const Covec& phi, const Subspace& elems);
/// Eigenvalue of phi under ad*(S), if phi is an eigenvector.
std::optional<Rat> covec_eigenvalue(const LieAlgebra& g, const Elem& S, const Covec& phi);

void validate_pair(const LieAlgebra& g, const WhittakerPair& p);
void validate_triple(const LieAlgebra& g, const WhittakerTriple& t);

/// n_{S,phi}, computed as a radical and as g_{>1} + (g_1 ∩ g_phi); both must agree.
Subspace nilpotent_datum(const LieAlgebra& g, const WhittakerPair& p);

/// sl2-triple through f with e in V and h in [V, f]; h is taken in the Cartan when possible.
std::optional<Sl2Triple> graded_jm(const LieAlgebra& g, const Elem& f, const Subspace& V);
Sl2Triple jacobson_morozov(const LieAlgebra& g, const Elem& f);
bool is_sl2_triple(const LieAlgebra& g, const Sl2Triple& t);

struct HZ {
  Elem h, Z;
  Sl2Triple triple;
};
HZ decompose_hZ(const LieAlgebra& g, const WhittakerPair& p);

bool is_neutral(const LieAlgebra& g, const WhittakerPair& p);
bool is_standard(const LieAlgebra& g, const WhittakerPair& p);

struct LeviReport {
  bool ok = false;
  HZ hz;
  Subspace levi;
  bool eq_levi0 = false;
  std::string distinguished;  // yes / no / unknown
  std::string certificate;
};
/// Tries the hinted decomposition first when given, then the computed one.
LeviReport levi_distinguished_report(const LieAlgebra& g, const WhittakerPair& p,
                                     const std::optional<HZ>& hint = std::nullopt);
bool is_levi_distinguished(const LieAlgebra& g, const WhittakerPair& p,
                           const std::optional<HZ>& hint = std::nullopt);

bool dominates(const LieAlgebra& g, const WhittakerPair& a, const WhittakerPair& b);

int index_in(const LieAlgebra& g, const Elem& H, const Covec& phi);
int index_from(const LieAlgebra& g, const Elem& H, const Elem& h);

}  // namespace wc
