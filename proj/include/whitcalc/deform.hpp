#pragma once

#include <string>
#include <vector>

#include "whitcalc/whittaker.hpp"

namespace wc {

struct IntervalNotRegular : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Cell {
  Rat a;  // H-eigenvalue
  Rat b;  // Z-eigenvalue
  Subspace piece;
};

/// H_t = H + tZ with [H,Z] = 0 and ad*(Z)phi = 0.
class Deformation {
 public:
  Deformation(const LieAlgebra& g, Elem H, Elem Z, Covec phi);

  const LieAlgebra& algebra() const { return *g_; }
  const Elem& H() const { return H_; }
  const Elem& Z() const { return Z_; }
  const Covec& phi() const { return phi_; }
  const std::vector<Cell>& support() const { return cells_; }
  Elem at(const Rat& t) const { return H_ + t * Z_; }

  /// Sum of the cells whose H_t-eigenvalue satisfies pred.
  template <class P>
  Subspace collect(const Rat& t, P pred) const {
    std::vector<Vec> v;
    for (const auto& c : cells_)
      if (pred(c.a + t * c.b, c.b))
        for (const auto& b : c.piece.basis()) v.push_back(b);
    return Subspace::span(g_->dim(), v);
  }
  /// Z-graded piece of g: sign -1, 0 or 1.
  Subspace z_sign(int sign) const;
  const Subspace& g_phi() const { return gphi_; }

 private:
  const LieAlgebra* g_;
  Elem H_, Z_;
  Covec phi_;
  std::vector<Cell> cells_;
  Subspace gphi_;
};

std::vector<Rat> critical_values(const Deformation& d);
std::vector<Rat> quasi_critical_values(const Deformation& d);

struct Snapshot {
  Rat t;
  Subspace u, v, w, n, l, r;
};
Snapshot snapshot(const Deformation& d, const Rat& t);

struct ClauseResult {
  std::string name;
  bool ok = false;
};
struct LemmaReport {
  std::vector<ClauseResult> clauses;
  bool ok() const;
  std::string failures() const;
};

/// Clauses (1) to (5) of the auxiliary lemma at parameters s < t.
LemmaReport check_help_lemma(const Deformation& d, const Rat& s, const Rat& t);
/// Clauses (1), (2) at t and s; clause (3) when s < t. Throws IntervalNotRegular
/// if a critical value lies strictly between s and t, InternalFailure on any failed clause.
LemmaReport verify_key_lemma(const Deformation& d, const Rat& s, const Rat& t);

struct ZPrime {
  HZ hz;
  Elem z;
  Elem Zp;
  long N = 1;
  Rat T;
  Subspace levi;
  Subspace torus;
  bool torus_maximal = false;
};
/// Z' = NZ + z and the least T making (H + TZ', phi) Levi-distinguished.
ZPrime build_zprime(const LieAlgebra& g, const WhittakerPair& p);

}  // namespace wc
