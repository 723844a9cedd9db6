#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "whitcalc/deform.hpp"
#include "whitcalc/orbits.hpp"

namespace wc {

struct NotIsotropic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MissingN : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EigenspaceViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotDominating : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAutomorphism : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSimplyLaced : std::domain_error {
  using std::domain_error::domain_error;
};
struct CertificateViolation : InternalFailure {
  using InternalFailure::InternalFailure;
};

enum class NodeKind { Leaf, SumRational, IntCompact, IntAdelic, Translate, Combine };
std::string kind_str(NodeKind k);

/// Symbolic summand of a character. A nonempty dir means name * dir with name a
/// scalar; an empty dir means name is a covector bound by an enclosing sum.
struct SymTerm {
  std::string name;
  Covec dir;
  bool operator==(const SymTerm& o) const { return name == o.name && dir == o.dir; }
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Leaf;

  // Leaf: F_{S, phi + sym, phi' + sym'} or F^R
  Elem S;
  Covec phi, phi_prime;
  bool triple = false;
  std::vector<SymTerm> phi_sym, prime_sym;
  std::optional<Subspace> r_space;
  std::string r_name;
  std::vector<std::string> tags;  // sorted
  std::string display;            // overrides the rendered head; $v marks a variable

  // binders
  std::string var;         // bound variable
  std::string word;        // group element put into the argument (group binders, Translate)
  std::string descriptor;  // LaTeX text of the index set
  std::string domain;      // scalar binders: "K", "K^x"; empty otherwise
  std::optional<Subspace> space;
  bool group = false;     // the variable translates the argument
  bool arg_left = false;  // insert the word at the far left of the argument

  std::vector<Expr> children;
  std::string note;
};

bool equal(const Expr& a, const Expr& b);

Expr make_leaf(const WhittakerPair& p);
Expr make_leaf(const WhittakerTriple& t);
Expr with(const Expr& e, const std::function<void(Node&)>& edit);
Expr sum_rational(std::string var, std::string descriptor, Expr body);
Expr sum_group(std::string var, std::string descriptor, Expr body);
Expr sum_scalar(std::string var, std::string descriptor, std::string domain, Expr body);
Expr int_compact(std::string var, std::string descriptor, std::optional<Subspace> space, Expr body);
Expr int_adelic(std::string var, std::string descriptor, std::optional<Subspace> space, Expr body);
Expr translate(std::string word, Expr body);
Expr combine(std::vector<Expr> terms);

/// A tree together with the algebra it lives in.
struct CoeffExpr {
  std::string type;
  int n = 0;
  Expr root;
  const LieAlgebra& algebra() const { return *algebra_from_descriptor(type, n); }
};

Expr normalize(const Expr& e);
std::vector<Expr> leaves(const Expr& e);
std::string emit_json(const CoeffExpr& e, int indent = 1);
CoeffExpr parse_json(const std::string& text);
std::string emit_latex(const CoeffExpr& e);
std::string latex_rat(const Rat& r);

// --- rewrites on single leaves

/// F^R = int_{[R/N]} F(ug) du.
Expr refine(const LieAlgebra& g, const Expr& leaf);
/// F = sum_{gamma in exp(u/r^perp)} F^R(gamma g).
Expr unrefine(const LieAlgebra& g, const Expr& leaf, const Subspace& R);
/// F^R = int_{R/(R∩R')} F^{R'}(ug) du.
Expr root_exchange(const LieAlgebra& g, const Expr& leaf, const Subspace& R2);

/// Parts 1 to 4 of the step lemma along d between s and t.
/// part 1: e is an L_t-leaf at H_t;  part 2: e at H_s;  part 3: e at H_s with
/// psi the H_t (-2)-part of phi';  part 4: e at H_t with psi the H_s (-2)-part.
Expr step_expand(const Deformation& d, const Rat& s, const Rat& t, const Expr& e, int part);
/// (g*)^{H_t}_{-1} ∩ (g*)^{e} ∩ (g*)^Z_{<0}.
Subspace step_characters(const Deformation& d, const Rat& t);

// --- Theorem A

struct ReductionStep {
  Rat t;
  std::string rule;
  OrbitLabel before, after;
  int index_before = 0, index_after = 0;
  bool branch = false;
};
struct ReductionCertificate {
  std::vector<ReductionStep> steps;
  /// Lexicographic strictness at every branch.
  bool valid() const;
};
struct Reduction {
  Expr tree;
  ReductionCertificate certificate;
};
Reduction reduce_to_levi_distinguished(const LieAlgebra& g, const WhittakerTriple& t);

// --- Theorem B

struct ThmB {
  Expr tree;
  bool part1 = false;
  Subspace v;
  Quotient u, w;
  /// character spaces dropped under WS(phi) at the critical values in (0,1)
  std::vector<std::pair<Rat, Subspace>> dropped;
};
ThmB theorem_b_transform(const LieAlgebra& g, const WhittakerPair& Hp, const WhittakerPair& Sp, bool ws);

// --- conjugation

/// A is the adjoint action of gamma; F_{S,phi,psi}(g) = F_{AS, A.phi, A.psi}(gamma g).
Expr conjugate_leaf(const LieAlgebra& g, const Expr& leaf, const QMat& A, const std::string& name);
bool is_automorphism(const LieAlgebra& g, const QMat& A);
/// x -> W x W^{-1} on a matrix build.
QMat inner_automorphism(const LieAlgebra& g, const QMat& W);
/// Adjoint action of the Weyl representative of s_{w[0]} ... s_{w.back()}.
QMat weyl_automorphism(const LieAlgebra& g, const std::vector<int>& word);

// --- Heisenberg

/// Index of the simple root alpha with dim g^{S_alpha}_4 = 1.
std::optional<int> heisenberg_root(const LieAlgebra& g);
struct HeisenbergData {
  int alpha = -1;
  Elem S, h;
  std::vector<int> Psi, Omega;  // root indices
  std::vector<int> gamma_word;
  QMat gamma;  // Ad(gamma)(S/2) = h
};
HeisenbergData heisenberg_data(const LieAlgebra& g);
Expr heisenberg_expansion(const LieAlgebra& g);

// --- examples

CoeffExpr gln_expansion(int n);
CoeffExpr sp4_expansion();

/// Delete or restrict summands that vanish under a hypothesis on eta:
/// cuspidal, minimal, next-to-minimal, non-generic.
CoeffExpr apply_filter(const CoeffExpr& e, const std::string& tag);

}  // namespace wc
