#include <gtest/gtest.h>

#include "util.hpp"
#include "whitcalc/sweep.hpp"

using namespace wc;
using wct::D;

// sp4, neutral Siegel pair against a dominated pair sitting at a critical value.
// dims 3 and 2 computed by hand-built sp4 matrices in sympy.
TEST(Domination, DimDropAtCriticalTarget) {
  const LieAlgebra& g = *algebra_from_descriptor("sp", 4);
  Covec phi = g.covec_of(g.elem_from_matrix(wct::unit(4, 3, 2) + wct::unit(4, 4, 1)));
  Elem h = D(g, {1, 1, -1, -1});
  Elem S = D(g, {qr(3, 2), qr(1, 2), qr(-3, 2), qr(-1, 2)});
  ASSERT_TRUE(is_neutral(g, {h, phi}));
  EXPECT_TRUE(dominates(g, {h, phi}, {S, phi}));
  EXPECT_EQ(nilpotent_datum(g, {h, phi}).dim(), 3);
  EXPECT_EQ(nilpotent_datum(g, {S, phi}).dim(), 2);
  Deformation d(g, h, S - h, phi);
  auto c = critical_values(d);
  EXPECT_NE(std::find(c.begin(), c.end(), Rat(1)), c.end());
  // just past the critical value the dimension is back
  EXPECT_EQ(nilpotent_datum(g, {d.at(qr(5, 4)), phi}).dim(), 3);
  EXPECT_EQ(nilpotent_datum(g, {d.at(qr(3, 4)), phi}).dim(), 3);
}

TEST(Sweep, LemmasSmall) {
  SweepOptions o;
  o.samples = 6;
  o.max_rank = 3;
  SweepReport r = sweep_lemmas(o);
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_EQ(r.checks.size(), 4u);
}

TEST(Sweep, DominationRegularTargetsNeverDrop) {
  SweepOptions o;
  o.chains = 6;
  o.max_rank = 3;
  SweepReport r = sweep_domination(o);
  EXPECT_EQ(r.counters["drops_at_regular_target"], 0) << r.text();
  for (const auto& f : r.failures) EXPECT_NE(f.detail.find("target critical"), std::string::npos) << f.detail;
}

TEST(Sweep, IndexCorpus) {
  SweepOptions o;
  o.index_trials = 5;
  o.max_rank = 2;
  SweepReport r = sweep_index(o);
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_GT(r.counters["moved"], 0);
}

TEST(Sweep, TransportSmall) {
  SweepOptions o;
  o.transport_instances = 60;
  SweepReport r = sweep_transport(o);
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_GT(r.counters["same_orbit"], 0);
  EXPECT_GT(r.counters["orbit_grows"], 0);
}

TEST(Sweep, Deterministic) {
  SweepOptions o;
  o.transport_instances = 30;
  o.seed = 7;
  EXPECT_EQ(sweep_transport(o).text(), sweep_transport(o).text());
  SweepOptions p = o;
  p.seed = 8;
  EXPECT_NE(sweep_transport(o).text(), sweep_transport(p).text());
}
