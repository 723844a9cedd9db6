#include <gtest/gtest.h>

#include "util.hpp"
#include "whitcalc/deform.hpp"
#include "whitcalc/orbits.hpp"

using namespace wc;
using wct::D;
using wct::E;
using wct::span;

namespace {

const LieAlgebra& alg(const char* t, int n) { return *algebra_from_descriptor(t, n); }

Deformation heis_d4() {
  const LieAlgebra& g = *algebra_from_descriptor("D", 4);
  const int a = 1;  // alpha_2
  Elem h = g.coroot(a);
  Elem S = fundamental_coweight2(g, a);
  return Deformation(g, h, S - h, g.covec_of(g.root_vector(g.roots().neg(a))));
}

std::vector<Rat> rats(std::initializer_list<Rat> l) { return l; }

// the h -> S segment is t in (0, 1]
std::vector<Rat> unit_window(const std::vector<Rat>& v) {
  std::vector<Rat> o;
  for (const Rat& x : v)
    if (sgn(x) > 0 && x <= 1) o.push_back(x);
  return o;
}

}  // namespace

TEST(Critical, Sl3BruteForce) {
  const LieAlgebra& g = alg("sl", 3);
  std::vector<Rat> z{1, 0, -1};
  Deformation d(g, g.zero(), D(g, z), g.zero());
  // oracle: eigenvalue pairs of the elementary matrices
  std::set<Rat> crit{0}, quasi{0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rat b = z[i] - z[j];
      if (i == j || sgn(b) == 0) continue;
      for (int lv : {1, 2}) {
        Rat t = Rat(lv) / b;
        if (sgn(t) > 0) (lv == 1 ? crit : quasi).insert(t);
      }
    }
  quasi.insert(crit.begin(), crit.end());
  EXPECT_EQ(critical_values(d), std::vector<Rat>(crit.begin(), crit.end()));
  EXPECT_EQ(quasi_critical_values(d), std::vector<Rat>(quasi.begin(), quasi.end()));
  EXPECT_EQ(critical_values(d), rats({0, qr(1, 2), 1}));
  EXPECT_EQ(quasi_critical_values(d), rats({0, qr(1, 2), 1, 2}));

  Deformation z0(g, D(g, {1, 0, -1}), g.zero(), g.zero());
  EXPECT_EQ(critical_values(z0), rats({0}));
}

TEST(Critical, HeisenbergD4) {
  Deformation d = heis_d4();
  auto crit = unit_window(critical_values(d));
  EXPECT_EQ(crit, rats({qr(1, 2), qr(2, 3)}));
  std::vector<Rat> extra;
  for (const Rat& x : unit_window(quasi_critical_values(d)))
    if (std::find(crit.begin(), crit.end(), x) == crit.end()) extra.push_back(x);
  EXPECT_EQ(extra, rats({qr(1, 3), 1}));
}

TEST(Deformation, RejectsBadDirection) {
  const LieAlgebra& g = alg("sl", 3);
  Covec phi = g.covec_of(E(g, 3, 1));
  EXPECT_THROW(Deformation(g, D(g, {1, 0, -1}), D(g, {1, -1, 0}), phi), std::invalid_argument);
  EXPECT_THROW(Deformation(g, D(g, {1, 0, -1}), E(g, 1, 2), phi), NonCommuting);
}

TEST(Snapshot, NeutralAtZero) {
  const LieAlgebra& g = alg("sl", 3);
  Covec phi = g.covec_of(E(g, 3, 1));
  Elem h = D(g, {1, 0, -1});
  Deformation d(g, h, g.zero(), phi);
  Snapshot s = snapshot(d, 0);
  Grading gh = grading(g, h);
  Subspace expect = sum(gh.ge(2), intersect(gh.eq(1), stab_covec(g, phi)));
  EXPECT_EQ(s.n, expect);
  EXPECT_EQ(s.l, expect);
  EXPECT_EQ(s.r, expect);
}

TEST(Snapshot, SL4DimsFromCells) {
  const LieAlgebra& g = alg("sl", 4);
  std::vector<Rat> h{1, 0, 0, -1}, S{1, qr(1, 3), qr(-1, 3), -1};
  std::vector<Rat> z;
  for (int i = 0; i < 4; ++i) z.push_back(S[i] - h[i]);
  Deformation d(g, D(g, h), D(g, z), g.covec_of(E(g, 4, 1)));
  for (Rat t : rats({0, qr(1, 4), qr(1, 2), qr(3, 4), 1, 2})) {
    int u = 0, v = 0, w = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        Rat l = h[i] - h[j] + t * (z[i] - z[j]);
        u += l >= 1;
        v += l > 1;
        w += l == 1;
      }
    Snapshot s = snapshot(d, t);
    EXPECT_EQ(s.u.dim(), u) << t;
    EXPECT_EQ(s.v.dim(), v) << t;
    EXPECT_EQ(s.w.dim(), w) << t;
  }
  EXPECT_EQ(snapshot(d, 1).n, span(g, {E(g, 1, 3), E(g, 2, 4), E(g, 1, 4)}));
}

TEST(Snapshot, Sp4Siegel) {
  const LieAlgebra& g = alg("sp", 4);
  Deformation d(g, g.zero(), D(g, {1, 1, -1, -1}), g.zero());
  Subspace siegel =
      span(g, {E(g, 1, 3), E(g, 2, 4), g.elem_from_matrix(wct::unit(4, 1, 4) + wct::unit(4, 2, 3))});
  EXPECT_EQ(snapshot(d, qr(1, 2)).u, siegel);
  EXPECT_EQ(critical_values(d), rats({0, qr(1, 2)}));
}

TEST(KeyLemma, Sl3Segments) {
  const LieAlgebra& g = alg("sl", 3);
  Deformation d(g, g.zero(), D(g, {1, 0, -1}), g.zero());
  auto cv = critical_values(d);
  cv.push_back(3);
  for (size_t i = 0; i + 1 < cv.size(); ++i) {
    EXPECT_TRUE(verify_key_lemma(d, cv[i], cv[i + 1]).ok());
    EXPECT_TRUE(check_help_lemma(d, cv[i], cv[i + 1]).ok());
    EXPECT_TRUE(verify_key_lemma(d, cv[i], cv[i]).ok());
  }
  EXPECT_THROW(verify_key_lemma(d, 0, 1), IntervalNotRegular);
}

TEST(KeyLemma, HeisenbergSegment) {
  Deformation d = heis_d4();
  LemmaReport r = verify_key_lemma(d, qr(1, 2), qr(2, 3));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(check_help_lemma(d, qr(1, 2), qr(2, 3)).ok());
}

TEST(ZPrime, DistinguishedGivesWholeLevi) {
  const LieAlgebra& g = alg("gl", 3);
  Elem f = E(g, 2, 1) + E(g, 3, 2);
  WhittakerPair p{D(g, {2, 0, -2}), g.covec_of(f)};
  ZPrime zp = build_zprime(g, p);
  EXPECT_EQ(zp.levi, Subspace::whole(g.dim()));
  EXPECT_TRUE(zp.torus_maximal);
  EXPECT_TRUE(is_levi_distinguished(g, {p.S + zp.T * zp.Zp, p.phi}));

  const LieAlgebra& s = alg("sp", 4);
  WhittakerPair q{D(s, {1, 1, -1, -1}), s.covec_of(E(s, 3, 1) + E(s, 4, 2))};
  ZPrime zq = build_zprime(s, q);
  EXPECT_EQ(zq.levi, Subspace::whole(s.dim()));
}

TEST(ZPrime, Gl4MinimalOrbit) {
  const LieAlgebra& g = alg("gl", 4);
  WhittakerPair p{D(g, {1, -1, 0, 0}), g.covec_of(E(g, 2, 1))};
  ZPrime zp = build_zprime(g, p);
  Subspace block = span(g, {E(g, 1, 1), E(g, 2, 2), E(g, 3, 3), E(g, 4, 4), E(g, 1, 2), E(g, 2, 1)});
  EXPECT_EQ(zp.levi, block);
  WhittakerPair end{p.S + zp.T * zp.Zp, p.phi};
  EXPECT_TRUE(dominates(g, p, end));
  EXPECT_TRUE(is_levi_distinguished(g, end));
  // oracle: phi is principal in the block Levi
  PLResult pl = is_PL(g, p.phi);
  ASSERT_EQ(pl.status, PLResult::Yes);
  EXPECT_EQ(pl.levi, std::vector<int>{0});
}

TEST(ZPrime, ZeroPair) {
  const LieAlgebra& g = alg("gl", 3);
  ZPrime zp = build_zprime(g, {g.zero(), g.zero()});
  EXPECT_EQ(zp.levi, g.cartan());
  WhittakerPair end{zp.T * zp.Zp, g.zero()};
  EXPECT_TRUE(is_standard(g, end));
  EXPECT_TRUE(is_levi_distinguished(g, end));
}
