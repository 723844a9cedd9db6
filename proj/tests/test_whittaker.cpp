#include <gtest/gtest.h>

#include <random>

#include "util.hpp"
#include "whitcalc/whittaker.hpp"

using namespace wc;
using wct::D;
using wct::E;
using wct::span;

namespace {

const LieAlgebra& sl(int n) { return *algebra_from_descriptor("sl", n); }
const LieAlgebra& gl(int n) { return *algebra_from_descriptor("gl", n); }

WhittakerPair sl4_pair() {
  const LieAlgebra& g = sl(4);
  return {D(g, {1, qr(1, 3), qr(-1, 3), -1}), g.covec_of(E(g, 4, 1))};
}

}  // namespace

TEST(Omega, ZeroAndEvaluation) {
  const LieAlgebra& g = sl(2);
  EXPECT_TRUE(omega(g, g.zero()).is_zero());
  Covec phi = g.covec_of(E(g, 2, 1));
  QMat w = omega(g, phi);
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) EXPECT_EQ(w.at(i, j), dot(phi, g.bracket(g.basis(i), g.basis(j))));
  EXPECT_EQ(w, w.transpose().scaled(-1));
  EXPECT_EQ(nullspace(w), stab_covec(g, phi));
}

TEST(NilpotentDatum, SL4Example) {
  const LieAlgebra& g = sl(4);
  WhittakerPair p = sl4_pair();
  validate_pair(g, p);
  Subspace n = nilpotent_datum(g, p);
  EXPECT_EQ(n, span(g, {E(g, 1, 3), E(g, 2, 4), E(g, 1, 4)}));
  WhittakerTriple t{p.S, p.phi, g.covec_of(qr(5) * E(g, 3, 1) + qr(-2, 7) * E(g, 4, 2))};
  validate_triple(g, t);
  EXPECT_EQ(covec_eigenvalue(g, p.S, g.covec_of(E(g, 3, 1))), qr(-4, 3));
}

TEST(NilpotentDatum, ZeroCharacterAndSl2) {
  const LieAlgebra& g = sl(4);
  Elem S = sl4_pair().S;
  EXPECT_EQ(nilpotent_datum(g, {S, g.zero()}), grading(g, S).ge(1));
  const LieAlgebra& s2 = sl(2);
  WhittakerPair p{D(s2, {1, -1}), s2.covec_of(E(s2, 2, 1))};
  EXPECT_EQ(nilpotent_datum(s2, p), span(s2, {E(s2, 1, 2)}));
}

TEST(NilpotentDatum, RejectsInvalidPairs) {
  const LieAlgebra& g = sl(3);
  EXPECT_THROW(validate_pair(g, {D(g, {1, 0, -1}), g.covec_of(E(g, 2, 1))}), InvalidPair);
  EXPECT_THROW(validate_pair(g, {E(g, 1, 2), g.zero()}), InvalidPair);
  WhittakerTriple t{D(g, {2, 0, -2}), g.covec_of(E(g, 2, 1)), g.covec_of(E(g, 3, 1))};
  EXPECT_THROW(validate_triple(g, t), InvalidPair);
}

TEST(JacobsonMorozov, ZeroAndSl3) {
  const LieAlgebra& g = sl(3);
  Sl2Triple z = jacobson_morozov(g, g.zero());
  EXPECT_TRUE(is_zero(z.e) && is_zero(z.h) && is_zero(z.f));
  Sl2Triple t = jacobson_morozov(g, E(g, 3, 1));
  EXPECT_TRUE(is_sl2_triple(g, t));
  EXPECT_EQ(t.h, D(g, {1, 0, -1}));
  EXPECT_EQ(t.e, E(g, 1, 3));
  // oracle: matrix commutator
  QMat me = g.matrix_of(t.e), mf = g.matrix_of(t.f);
  EXPECT_EQ(me * mf - mf * me, g.matrix_of(t.h));
  EXPECT_THROW(jacobson_morozov(g, D(g, {1, 0, -1})), NotNilpotent);
}

TEST(JacobsonMorozov, RegularGln) {
  for (int n = 2; n <= 5; ++n) {
    const LieAlgebra& g = gl(n);
    Elem f = g.zero();
    for (int i = 1; i < n; ++i) f = f + E(g, i + 1, i);
    Sl2Triple t = jacobson_morozov(g, f);
    QMat h = g.matrix_of(t.h);
    for (int i = 0; i < n; ++i) EXPECT_EQ(h.at(i, i), n - 1 - 2 * i) << n;
  }
}

TEST(DecomposeHZ, NeutralGl3AndSL4) {
  const LieAlgebra& s2 = sl(2);
  WhittakerPair neu{D(s2, {1, -1}), s2.covec_of(E(s2, 2, 1))};
  EXPECT_TRUE(is_zero(decompose_hZ(s2, neu).Z));

  const LieAlgebra& g3 = gl(3);
  WhittakerPair p{D(g3, {2, 0, -2}), g3.covec_of(E(g3, 2, 1))};
  HZ d = decompose_hZ(g3, p);
  EXPECT_EQ(d.h, D(g3, {1, -1, 0}));
  EXPECT_TRUE(g3.in_cartan(d.Z));
  EXPECT_TRUE(is_neutral(g3, {d.h, p.phi}));

  const LieAlgebra& g4 = sl(4);
  WhittakerPair q = sl4_pair();
  HZ e = decompose_hZ(g4, q);
  EXPECT_EQ(e.h, D(g4, {1, 0, 0, -1}));
  EXPECT_EQ(e.Z, q.S - e.h);
  EXPECT_TRUE(is_neutral(g4, {e.h, q.phi}));
}

TEST(Predicates, NeutralStandardLevi) {
  const LieAlgebra& g3 = gl(3);
  EXPECT_TRUE(is_neutral(g3, {g3.zero(), g3.zero()}));
  EXPECT_FALSE(is_neutral(g3, {D(g3, {1, 0, -1}), g3.zero()}));
  for (int n = 2; n <= 4; ++n) {
    const LieAlgebra& g = gl(n);
    std::vector<Rat> d;
    Elem f = g.zero();
    for (int i = 0; i < n; ++i) d.push_back(n - 1 - 2 * i);
    for (int i = 1; i < n; ++i) f = f + E(g, i + 1, i);
    WhittakerPair p{D(g, d), g.covec_of(f)};
    EXPECT_TRUE(is_standard(g, p)) << n;
    EXPECT_TRUE(is_neutral(g, p)) << n;
    EXPECT_TRUE(is_levi_distinguished(g, p)) << n;
  }
  EXPECT_FALSE(is_standard(sl(4), sl4_pair()));
  EXPECT_TRUE(is_standard(g3, {D(g3, {2, 0, -2}), g3.zero()}));
}

TEST(Dominates, Basics) {
  const LieAlgebra& g = sl(4);
  WhittakerPair p = sl4_pair();
  EXPECT_TRUE(dominates(g, p, p));
  HZ d = decompose_hZ(g, p);
  EXPECT_TRUE(dominates(g, {d.h, p.phi}, p));
  const LieAlgebra& g3 = sl(3);
  WhittakerPair a{D(g3, {1, 0, -1}), g3.zero()}, b{D(g3, {1, 1, -2}), g3.zero()};
  EXPECT_FALSE(dominates(g3, a, b));
  EXPECT_THROW(dominates(g3, a, {a.S, g3.covec_of(E(g3, 3, 1))}), PhiMismatch);
}

TEST(Index, NeutralZeroAndSL4Count) {
  const LieAlgebra& g = sl(4);
  WhittakerPair p = sl4_pair();
  HZ d = decompose_hZ(g, p);
  EXPECT_EQ(index_in(g, d.h, p.phi), 0);
  // oracle: count elementary matrices by diagonal eigenvalues
  std::vector<Rat> h{1, 0, 0, -1}, H{1, qr(1, 3), qr(-1, 3), -1};
  int count = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      Rat a = h[i] - h[j], b = H[i] - H[j];
      count += (a < 1 && b >= 1) + (a < 2 && b >= 2);
    }
  EXPECT_EQ(index_in(g, p.S, p.phi), count);
  EXPECT_EQ(count, 0);
}

TEST(Index, InvariantUnderTwist) {
  const LieAlgebra& g = sl(4);
  WhittakerPair p = sl4_pair();
  int base = index_in(g, p.S, p.phi);
  Subspace cz = intersect(grading(g, p.S).eq(0), centralizer(g, p.S));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int s = 0; s < 10; ++s) {
    Elem X = g.zero();
    for (int j = 0; j < g.dim(); ++j)
      if (cz.contains(g.basis(j)) && g.root_of_basis(j) >= 0 && g.roots().positive(g.root_of_basis(j)))
        X[j] = d(rng);
    QMat A = g.exp_ad(X);
    Covec phi2 = g.covec_of(A.apply(g.elem_of(p.phi)));
    EXPECT_EQ(index_in(g, p.S, phi2), base);
  }
}

TEST(HelpLemma, KernelOfOmegaIsStabilizer) {
  for (const char* t : {"sl", "sp"}) {
    const LieAlgebra& g = *algebra_from_descriptor(t, 4);
    for (int j = 0; j < g.dim(); ++j) {
      Covec phi = g.covec_of(g.basis(j));
      EXPECT_EQ(nullspace(omega(g, phi)), stab_covec(g, phi));
    }
  }
}
