#include <gtest/gtest.h>

#include "util.hpp"
#include "whitcalc/orbits.hpp"

using namespace wc;
using wct::D;
using wct::E;

namespace {

const LieAlgebra& alg(const char* t, int n) { return *algebra_from_descriptor(t, n); }

OrbitLabel lab(const LieAlgebra& g, std::vector<int> p) {
  OrbitLabel l;
  l.kind = g.kind();
  l.partition = std::move(p);
  return l;
}

}  // namespace

TEST(Partition, Basics) {
  const LieAlgebra& g = alg("gl", 3);
  EXPECT_EQ(jordan_partition(g, g.zero()).partition, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(jordan_partition(g, E(g, 2, 1) + E(g, 3, 2)).partition, (std::vector<int>{3}));
  const LieAlgebra& s = alg("sp", 4);
  EXPECT_EQ(jordan_partition(s, E(s, 3, 1)).partition, (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(jordan_partition(s, E(s, 3, 1) + E(s, 4, 2)).partition, (std::vector<int>{2, 2}));
  const LieAlgebra& a = *algebra_from_descriptor("G", 2);
  EXPECT_THROW(jordan_partition(a, a.zero()), NoMatrixRealization);
  EXPECT_TRUE(orbit_label(a, a.zero()).adjoint);
}

TEST(Closure, Dominance) {
  const LieAlgebra& g = alg("gl", 4);
  EXPECT_TRUE(closure_leq(lab(g, {2, 2}), lab(g, {3, 1})));
  EXPECT_FALSE(closure_leq(lab(g, {3, 1}), lab(g, {2, 2})));
  EXPECT_TRUE(closure_leq(lab(g, {1, 1, 1, 1}), lab(g, {4})));
  EXPECT_TRUE(closure_leq(lab(g, {2, 1, 1}), lab(g, {2, 1, 1})));
  EXPECT_THROW(closure_leq(lab(g, {2, 1}), lab(g, {2, 2})), DimensionMismatch);
}

TEST(PL, GlnPrincipalInLevi) {
  const LieAlgebra& g = alg("gl", 5);
  EXPECT_EQ(is_PL(g, g.zero()).status, PLResult::Yes);
  for (int mask = 1; mask < 16; ++mask) {
    Elem f = g.zero();
    std::vector<int> x;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) {
        f = f + E(g, i + 2, i + 1);
        x.push_back(i);
      }
    PLResult r = is_PL(g, g.covec_of(f));
    EXPECT_EQ(r.status, PLResult::Yes);
    EXPECT_EQ(r.levi, x);
  }
}

TEST(PL, D4NonSimpleSupport) {
  const LieAlgebra& g = *algebra_from_descriptor("D", 4);
  const RootSystem& rs = g.roots();
  Elem f = g.root_vector(rs.neg(rs.highest())) + g.root_vector(rs.neg(0));
  PLResult r = is_PL(g, g.covec_of(f));
  ASSERT_EQ(r.status, PLResult::Yes);
  EXPECT_EQ(r.levi.size(), 2u);
  EXPECT_FALSE(r.word.empty());
}

TEST(PL, G2SubregularIsNot) {
  // The subregular orbit of G2 is distinguished and not regular; its
  // orbit dimension is 10.
  const LieAlgebra& g = *algebra_from_descriptor("G", 2);
  const RootSystem& rs = g.roots();
  int found = 0;
  for (int a = 0; a < rs.num_positive(); ++a)
    for (int b = a + 1; b < rs.num_positive(); ++b) {
      Elem f = g.root_vector(rs.neg(a)) + g.root_vector(rs.neg(b));
      int odim = g.dim() - centralizer(g, f).dim();
      PLResult r = is_PL(g, g.covec_of(f));
      if (odim == 10) {
        ++found;
        EXPECT_EQ(r.status, PLResult::No) << a << " " << b;
      } else if (odim < 10) {
        EXPECT_NE(r.status, PLResult::No) << a << " " << b;
      }
    }
  EXPECT_GT(found, 0);
}

TEST(KDistinguished, GlAndSp) {
  const LieAlgebra& g = alg("gl", 4);
  Subspace all = Subspace::whole(g.dim());
  DistResult a = is_k_distinguished(g, g.covec_of(E(g, 3, 1) + E(g, 4, 2)), all);
  EXPECT_EQ(a.verdict, Tri::No);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_FALSE(g.center().contains(*a.witness));
  Elem reg = E(g, 2, 1) + E(g, 3, 2) + E(g, 4, 3);
  EXPECT_EQ(is_k_distinguished(g, g.covec_of(reg), all).verdict, Tri::Yes);

  const LieAlgebra& s = alg("sp", 4);
  Subspace sall = Subspace::whole(s.dim());
  EXPECT_EQ(is_k_distinguished(s, s.covec_of(E(s, 3, 1) + E(s, 4, 2)), sall).verdict, Tri::Yes);
  EXPECT_EQ(is_k_distinguished(s, s.covec_of(s.elem_from_matrix(wct::unit(4, 3, 2) + wct::unit(4, 4, 1))), sall).verdict, Tri::No);
  EXPECT_EQ(is_k_distinguished(s, s.covec_of(E(s, 3, 1)), sall).verdict, Tri::No);
}

TEST(Transport, Sl3) {
  const LieAlgebra& g = alg("sl", 3);
  Elem Z = D(g, {1, 1, -2});
  Covec phi = g.covec_of(E(g, 2, 1));
  auto t0 = solve_transport(g, phi, g.zero(), Z);
  ASSERT_TRUE(t0);
  EXPECT_TRUE(is_zero(t0->X));
  EXPECT_TRUE(t0->word.empty());

  Covec same = g.covec_of(E(g, 2, 3));
  auto t = solve_transport(g, phi, same, Z);
  ASSERT_TRUE(t);
  EXPECT_EQ(g.coadjoint(t->X, phi), same);
  EXPECT_EQ(jordan_partition(g, E(g, 2, 1) + E(g, 2, 3)), jordan_partition(g, E(g, 2, 1)));

  Covec up = g.covec_of(E(g, 1, 3));
  EXPECT_FALSE(solve_transport(g, phi, up, Z));
  EXPECT_THROW(solve_transport(g, phi, g.covec_of(E(g, 3, 1)), Z), std::invalid_argument);
}

TEST(Order, Gl3) {
  const LieAlgebra& g = alg("gl", 3);
  OrderWitness w{D(g, {1, 1, -2}), g.covec_of(E(g, 2, 1)), g.covec_of(E(g, 1, 3))};
  EXPECT_TRUE(order_related(g, lab(g, {2, 1}), w));
  EXPECT_FALSE(order_related(g, lab(g, {3}), w));
  OrderWitness z{w.Z, w.phi, g.zero()};
  EXPECT_FALSE(order_related(g, lab(g, {2, 1}), z));
}

TEST(Coweight, Values) {
  const LieAlgebra& g = *algebra_from_descriptor("B", 3);
  for (int i = 0; i < 3; ++i) {
    Elem S = fundamental_coweight2(g, i);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(g.root_value(j, S), i == j ? 2 : 0);
  }
}
