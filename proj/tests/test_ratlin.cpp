#include <gtest/gtest.h>

#include <random>

#include "whitcalc/ratlin.hpp"

using namespace wc;

namespace {

QMat random_mat(std::mt19937& rng, int r, int c, int rank_cap) {
  // product of r x k and k x c integer matrices has rank <= k
  std::uniform_int_distribution<int> d(-3, 3);
  QMat a(r, rank_cap), b(rank_cap, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < rank_cap; ++j) a.at(i, j) = d(rng);
  for (int i = 0; i < rank_cap; ++i)
    for (int j = 0; j < c; ++j) b.at(i, j) = qr(d(rng), 1 + (i + j) % 3);
  return a * b;
}

Subspace random_sub(std::mt19937& rng, int n, int k) {
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<Vec> vs;
  for (int i = 0; i < k; ++i) {
    Vec v = zero_vec(n);
    for (auto& x : v) x = d(rng);
    vs.push_back(v);
  }
  return Subspace::span(n, vs);
}

}  // namespace

TEST(Ratlin, ParseAndPrint) {
  EXPECT_EQ(parse_rat("-6/4"), qr(-3, 2));
  EXPECT_EQ(to_string(parse_rat("10/5")), "2");
  EXPECT_THROW(parse_rat("x"), std::invalid_argument);
}

TEST(Ratlin, NullspaceKillsMatrix) {
  std::mt19937 rng(7);
  for (int it = 0; it < 40; ++it) {
    int r = 1 + it % 6, c = 2 + it % 7, k = 1 + it % 4;
    QMat m = random_mat(rng, r, c, k);
    Subspace ns = nullspace(m);
    EXPECT_EQ(ns.dim() + rank(m), c);
    for (const auto& v : ns.basis()) EXPECT_TRUE(is_zero(m.apply(v)));
  }
}

TEST(Ratlin, CanonicalFormIsUnique) {
  Subspace a = Subspace::span(3, {{Rat(1), Rat(2), Rat(0)}, {Rat(0), Rat(1), qr(1, 2)}});
  Subspace b = Subspace::span(3, {{Rat(2), Rat(5), qr(1, 2)}, {Rat(1), Rat(1), qr(-1, 2)}});
  EXPECT_EQ(a, b);
  for (const auto& row : a.basis())
    for (const auto& x : row) EXPECT_EQ(x.get_den(), 1);
}

TEST(Ratlin, GrassmannIdentity) {
  std::mt19937 rng(11);
  for (int it = 0; it < 60; ++it) {
    int n = 3 + it % 6;
    Subspace a = random_sub(rng, n, 1 + it % n), b = random_sub(rng, n, 1 + (it * 5) % n);
    Subspace s = sum(a, b), i = intersect(a, b);
    EXPECT_EQ(s.dim() + i.dim(), a.dim() + b.dim());
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
    EXPECT_TRUE(s.contains(a));
    EXPECT_TRUE(s.contains(b));
  }
}

TEST(Ratlin, CoordsRoundTrip) {
  std::mt19937 rng(3);
  Subspace a = random_sub(rng, 6, 3);
  Vec v = qr(2, 3) * a.basis()[0] - Rat(5) * a.basis()[2];
  Vec c = a.coords(v);
  EXPECT_EQ(c[0], qr(2, 3));
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], -5);
}

TEST(Ratlin, SolveAffine) {
  QMat m = QMat::from_rows({{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}}, 2);
  auto x = solve_affine(m, {Rat(3), Rat(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 1);
  QMat s = QMat::from_rows({{Rat(1), Rat(1)}, {Rat(2), Rat(2)}}, 2);
  EXPECT_FALSE(solve_affine(s, {Rat(1), Rat(1)}));
}

TEST(Ratlin, ComplementAndQuotient) {
  Subspace a = Subspace::whole(4);
  Subspace k = Subspace::coordinate(4, {1, 3});
  Quotient q = make_quotient(a, k);
  EXPECT_EQ(q.dim(), 2);
  Subspace sec = q.section();
  EXPECT_TRUE(independent(sec, k));
  EXPECT_EQ(sum(sec, k), a);
  EXPECT_THROW(make_quotient(k, a), std::invalid_argument);
}

TEST(Ratlin, Inverse) {
  QMat m = QMat::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(1)}}, 2);
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv * m, QMat::identity(2));
  EXPECT_FALSE(inverse(QMat(2, 2)));
}

TEST(Ratlin, CharpolyMatchesDeterminantAtPoints) {
  // oracle: det(xI - M) by elimination at integer points
  std::mt19937 rng(5);
  for (int it = 0; it < 10; ++it) {
    int n = 2 + it % 5;
    QMat m = random_mat(rng, n, n, n);
    auto c = charpoly(m);
    ASSERT_EQ(static_cast<int>(c.size()), n + 1);
    EXPECT_EQ(c[n], 1);
    for (int x = -2; x <= 2; ++x) {
      QMat t = QMat::identity(n).scaled(Rat(x)) - m;
      Rat det = 1;
      for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int r = col; r < n; ++r)
          if (sgn(t.at(r, col))) { p = r; break; }
        if (p < 0) { det = 0; break; }
        if (p != col) {
          for (int j = 0; j < n; ++j) std::swap(t.at(p, j), t.at(col, j));
          det = -det;
        }
        det *= t.at(col, col);
        for (int r = col + 1; r < n; ++r) {
          Rat f = t.at(r, col) / t.at(col, col);
          for (int j = col; j < n; ++j) t.at(r, j) -= f * t.at(col, j);
        }
      }
      Rat val = 0;
      for (int k = n; k >= 0; --k) val = val * x + c[k];
      EXPECT_EQ(val, det);
    }
  }
}

TEST(Ratlin, RationalSpectrum) {
  QMat d(3, 3);
  d.at(0, 0) = qr(1, 2);
  d.at(1, 1) = qr(1, 2);
  d.at(2, 2) = -3;
  d.at(0, 2) = 7;
  auto s = rational_spectrum(d);
  ASSERT_TRUE(s);
  ASSERT_EQ(s->size(), 2u);
  EXPECT_EQ((*s)[0], std::make_pair(Rat(-3), 1));
  EXPECT_EQ((*s)[1], std::make_pair(qr(1, 2), 2));
  QMat rot = QMat::from_rows({{Rat(0), Rat(-1)}, {Rat(1), Rat(0)}}, 2);
  EXPECT_FALSE(rational_spectrum(rot));
}
