#pragma once

#include <map>
#include <string>
#include <vector>

#include "whitcalc/expand.hpp"

namespace wc {

struct SweepOptions {
  unsigned seed = 1;
  int samples = 100;  // per algebra
  int chains = 20;    // dominating chains per algebra
  int max_rank = 4;
  int index_trials = 50;         // exp_ad recombinations per pair
  int transport_instances = 200;  // total, rank <= min(3, max_rank)
};

struct SweepFailure {
  std::string algebra;
  int sample = 0;
  std::string detail;
};

struct SweepReport {
  std::string suite;
  std::map<std::string, long> checks;  // per algebra
  std::map<std::string, long> counters;
  std::vector<SweepFailure> failures;

  bool ok() const { return failures.empty(); }
  long total_checks() const;
  std::string text() const;
};

struct SweepAlgebra {
  std::string type;
  int n = 0;
  std::string name;
  int rank = 0;
};
/// sl2, sl3, sl4, sp4, so(4,4) and the Chevalley D4, filtered by rank.
std::vector<SweepAlgebra> sweep_algebras(int max_rank);

/// Auxiliary lemma, both n formulas, key lemma and the UnQuasy datum identity.
SweepReport sweep_lemmas(const SweepOptions& o);
/// Dominating chains: dim n monotone, transitivity, critical values compose.
SweepReport sweep_domination(const SweepOptions& o);
/// in(H, phi) under recombinations h -> exp(ad X) h with X in g^H_0 ∩ g_phi ∩ g^h_{<0}.
SweepReport sweep_index(const SweepOptions& o);
/// Transport succeeds iff Jordan types agree; order_related is antisymmetric.
SweepReport sweep_transport(const SweepOptions& o);

std::vector<SweepReport> verify_lemmas(const SweepOptions& o);

}  // namespace wc
