#include "whitcalc/whittaker.hpp"

#include "whitcalc/orbits.hpp"

namespace wc {

QMat omega(const LieAlgebra& g, const Covec& phi) {
  const int D = g.dim();
  QMat w(D, D);
  if (is_zero(phi)) return w;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (const auto& [k, v] : g.bracket_basis(i, j))
        if (sgn(phi[k])) w.at(i, j) += v * phi[k];
  return w;
}

namespace {

QMat gram_on(const QMat& om, const Subspace& a, const Subspace& b) {
  QMat A = a.as_matrix(), B = b.as_matrix();
  return A * om * B.transpose();
}

}  // namespace

Subspace radical(const LieAlgebra& g, const Covec& phi, const Subspace& u) {
  if (u.is_zero() || is_zero(phi)) return u;
  QMat M = gram_on(omega(g, phi), u, u);
  Subspace c = nullspace(M.transpose());
  std::vector<Vec> vs;
  for (const auto& x : c.basis()) {
    Vec v = zero_vec(g.dim());
    for (int k = 0; k < u.dim(); ++k)
      if (sgn(x[k])) axpy(v, x[k], u.basis()[k]);
    vs.push_back(std::move(v));
  }
  return Subspace::span(g.dim(), vs);
}

bool is_isotropic(const LieAlgebra& g, const Covec& phi, const Subspace& r) {
  if (r.is_zero() || is_zero(phi)) return true;
  return gram_on(omega(g, phi), r, r).is_zero();
}

bool is_ideal(const LieAlgebra& g, const Subspace& a, const Subspace& in) {
  return a.contains(bracket_space(g, in, a));
}

bool covec_in(const LieAlgebra& g, const Covec& phi, const Subspace& elems) {
  return elems.contains(g.elem_of(phi));
}

std::optional<Rat> covec_eigenvalue(const LieAlgebra& g, const Elem& S, const Covec& phi) {
  if (is_zero(phi)) return std::nullopt;
  Covec a = g.coadjoint(S, phi);
  int k = 0;
  while (!sgn(phi[k])) ++k;
  Rat l = a[k] / phi[k];
  if (a != l * phi) return std::nullopt;
  return l;
}

void validate_pair(const LieAlgebra& g, const WhittakerPair& p) {
  if (static_cast<int>(p.S.size()) != g.dim() || static_cast<int>(p.phi.size()) != g.dim())
    throw DimensionMismatch("pair has wrong length");
  try {
    grading(g, p.S);
  } catch (const NotRationalSemisimple& e) {
    throw InvalidPair(std::string("S is not rational semisimple: ") + e.what());
  }
  if (g.coadjoint(p.S, p.phi) != Rat(-2) * p.phi) throw InvalidPair("ad*(S) phi != -2 phi");
  if (!g.is_ad_nilpotent(g.elem_of(p.phi))) throw InternalFailure("phi of a pair is not nilpotent");
}

void validate_triple(const LieAlgebra& g, const WhittakerTriple& t) {
  validate_pair(g, t.pair());
  if (static_cast<int>(t.phi_prime.size()) != g.dim()) throw DimensionMismatch("phi' has wrong length");
  if (!covec_in(g, t.phi_prime, grading(g, t.S).gt(-2))) throw InvalidPair("phi' not in (g*)^S_{>-2}");
}

Subspace nilpotent_datum(const LieAlgebra& g, const WhittakerPair& p) {
  Grading gr = grading(g, p.S);
  Subspace u = gr.ge(1);
  Subspace n1 = radical(g, p.phi, u);
  Subspace gphi = stab_covec(g, p.phi);
  Subspace n2 = sum(gr.gt(1), intersect(gr.eq(1), gphi));
  if (n1 != n2) throw InternalFailure("n_{S,phi}: radical and graded formula disagree");
  if (!is_ideal(g, n1, u)) throw InternalFailure("n_{S,phi} is not an ideal of u");
  if (!n1.contains(bracket_space(g, u, u))) throw InternalFailure("u/n_{S,phi} is not abelian");
  return n1;
}

bool is_sl2_triple(const LieAlgebra& g, const Sl2Triple& t) {
  return g.bracket(t.h, t.e) == Rat(2) * t.e && g.bracket(t.h, t.f) == Rat(-2) * t.f && g.bracket(t.e, t.f) == t.h;
}

std::optional<Sl2Triple> graded_jm(const LieAlgebra& g, const Elem& f, const Subspace& V) {
  const int D = g.dim();
  if (is_zero(f)) return Sl2Triple{g.zero(), g.zero(), g.zero()};
  const QMat A = g.ad(f);
  const QMat B = V.as_matrix().transpose();  // D x k
  const int k = V.dim();
  if (k == 0) return std::nullopt;
  const QMat A1 = A * B, A2 = A * A1;

  // y in V with [f,[f,y]] = -2f; h = [y,f] = -A y.
  std::vector<bool> cart(D, false);
  for (int i : g.cartan_indices()) cart[i] = true;
  std::optional<Vec> c;
  {
    int extra = 0;
    for (int i = 0; i < D; ++i) extra += !cart[i];
    QMat M(D + extra, k);
    Vec rhs = zero_vec(D + extra);
    for (int i = 0; i < D; ++i) {
      for (int j = 0; j < k; ++j) M.at(i, j) = A2.at(i, j);
      rhs[i] = -2 * f[i];
    }
    int r = D;
    for (int i = 0; i < D; ++i)
      if (!cart[i]) {
        for (int j = 0; j < k; ++j) M.at(r, j) = A1.at(i, j);
        ++r;
      }
    c = solve_affine(M, rhs);
  }
  if (!c) {
    QMat M(D, k);
    Vec rhs = zero_vec(D);
    for (int i = 0; i < D; ++i) {
      for (int j = 0; j < k; ++j) M.at(i, j) = A2.at(i, j);
      rhs[i] = -2 * f[i];
    }
    c = solve_affine(M, rhs);
  }
  if (!c) return std::nullopt;
  Elem h = -(A1.apply(*c));

  // e in V with [e,f] = h and [h,e] = 2e.
  const QMat H2 = (g.ad(h) - QMat::identity(D).scaled(2)) * B;
  QMat M(2 * D, k);
  Vec rhs = zero_vec(2 * D);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < k; ++j) {
      M.at(i, j) = A1.at(i, j);
      M.at(D + i, j) = H2.at(i, j);
    }
    rhs[i] = -h[i];
  }
  auto ce = solve_affine(M, rhs);
  if (!ce) return std::nullopt;
  Elem e = B.apply(*ce);
  Sl2Triple t{e, h, f};
  if (!is_sl2_triple(g, t)) throw InternalFailure("graded_jm produced a non-triple");
  return t;
}

Sl2Triple jacobson_morozov(const LieAlgebra& g, const Elem& f) {
  if (!g.is_ad_nilpotent(f)) throw NotNilpotent("jacobson_morozov: f is not nilpotent");
  auto t = graded_jm(g, f, Subspace::whole(g.dim()));
  if (!t) throw InternalFailure("jacobson_morozov: no triple for a nilpotent element");
  return *t;
}

HZ decompose_hZ(const LieAlgebra& g, const WhittakerPair& p) {
  validate_pair(g, p);
  if (is_zero(p.phi)) return {g.zero(), p.S, {g.zero(), g.zero(), g.zero()}};
  Elem f = g.elem_of(p.phi);
  auto t = graded_jm(g, f, grading(g, p.S).eq(2));
  if (!t) throw SearchFailed("decompose_hZ: no graded sl2-triple found");
  HZ r{t->h, p.S - t->h, *t};
  if (!is_zero(g.bracket(r.h, r.Z))) throw InternalFailure("decompose_hZ: [h, Z] != 0");
  if (!is_zero(g.coadjoint(r.Z, p.phi))) throw InternalFailure("decompose_hZ: Z does not fix phi");
  return r;
}

bool is_neutral(const LieAlgebra& g, const WhittakerPair& p) {
  validate_pair(g, p);
  if (is_zero(p.phi)) return is_zero(p.S);
  const int D = g.dim();
  Elem f = g.elem_of(p.phi);
  // Completable: e with [e,f] = S and [S,e] = 2e.
  QMat A = g.ad(f), H2 = g.ad(p.S) - QMat::identity(D).scaled(2);
  QMat M(2 * D, D);
  Vec rhs = zero_vec(2 * D);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) {
      M.at(i, j) = A.at(i, j);
      M.at(D + i, j) = H2.at(i, j);
    }
    rhs[i] = -p.S[i];
  }
  if (!solve_affine(M, rhs)) return false;
  // ad*(phi): g^S_0 -> (g*)^S_{-2} onto.
  Grading gr = grading(g, p.S);
  Subspace img = image(A, gr.eq(0));
  return img == gr.eq(-2);
}

namespace {

// Positive system test for a set of roots: closed, and R ⊔ -R = all roots.
bool is_positive_system(const RootSystem& rs, const std::vector<int>& R) {
  if (static_cast<int>(R.size()) != rs.num_positive()) return false;
  std::vector<bool> in(rs.num_roots(), false);
  for (int k : R) in[k] = true;
  for (int k : R)
    if (in[rs.neg(k)]) return false;
  for (int a : R)
    for (int b : R) {
      Root s = rs.root(a);
      for (size_t i = 0; i < s.size(); ++i) s[i] += rs.root(b)[i];
      int c = rs.find(s);
      if (c >= 0 && !in[c]) return false;
    }
  return true;
}

}  // namespace

bool is_standard(const LieAlgebra& g, const WhittakerPair& p) {
  Subspace n = nilpotent_datum(g, p);
  const RootSystem& rs = g.roots();
  if (n.dim() != rs.num_positive()) return false;
  if (!n.contains(bracket_space(g, n, n))) return false;
  for (const auto& v : n.basis())
    if (!g.is_ad_nilpotent(v)) return false;
  // Root-spanned n: its roots must form a Weyl conjugate of the positive system.
  std::vector<int> R;
  bool rooty = true;
  for (int j = 0; j < g.dim() && rooty; ++j) {
    Elem b = g.basis(j);
    if (!n.contains(b)) continue;
    if (g.root_of_basis(j) < 0) rooty = false;
    else R.push_back(g.root_of_basis(j));
  }
  if (rooty && static_cast<int>(R.size()) == n.dim()) return is_positive_system(rs, R);
  return true;
}

int index_from(const LieAlgebra& g, const Elem& H, const Elem& h) {
  Grading gh = grading(g, h), gH = grading(g, H);
  return intersect(gh.lt(1), gH.ge(1)).dim() + intersect(gh.lt(2), gH.ge(2)).dim();
}

int index_in(const LieAlgebra& g, const Elem& H, const Covec& phi) {
  HZ d = decompose_hZ(g, {H, phi});
  return index_from(g, H, d.h);
}

namespace {

bool levi0_holds(const LieAlgebra& g, const Elem& h, const Elem& Z) {
  Grading gH = grading(g, h + Z), gh = grading(g, h), gZ = grading(g, Z);
  Subspace l = gZ.eq(0);
  Subspace a = gH.gt(1), b = gH.ge(2);
  Subspace c = sum(gZ.gt(0), intersect(l, gh.ge(2)));
  return a == b && b == c && gH.eq(1) == intersect(l, gh.eq(1));
}

}  // namespace

LeviReport levi_distinguished_report(const LieAlgebra& g, const WhittakerPair& p, const std::optional<HZ>& hint) {
  validate_pair(g, p);
  std::vector<HZ> tries;
  if (hint) tries.push_back(*hint);
  tries.push_back(decompose_hZ(g, p));
  LeviReport last;
  for (const HZ& d : tries) {
    LeviReport r;
    r.hz = d;
    if (d.h + d.Z != p.S || !is_zero(g.bracket(d.h, d.Z)) || !is_zero(g.coadjoint(d.Z, p.phi))) continue;
    r.levi = centralizer(g, d.Z);
    if (!is_zero(p.phi)) {
      const Sl2Triple& t = d.triple;
      if (!is_sl2_triple(g, t) || t.f != g.elem_of(p.phi) || t.h != d.h) continue;
      if (!r.levi.contains(t.e) || !r.levi.contains(t.h)) continue;
    } else if (!is_zero(d.h)) {
      continue;
    }
    r.eq_levi0 = levi0_holds(g, d.h, d.Z);
    DistResult dr = is_k_distinguished(g, p.phi, r.levi, d.h);
    r.distinguished = tri_name(dr.verdict);
    r.certificate = dr.certificate;
    r.ok = r.eq_levi0 && dr.verdict == Tri::Yes;
    if (r.ok) return r;
    last = r;
  }
  return last;
}

bool is_levi_distinguished(const LieAlgebra& g, const WhittakerPair& p, const std::optional<HZ>& hint) {
  return levi_distinguished_report(g, p, hint).ok;
}

bool dominates(const LieAlgebra& g, const WhittakerPair& a, const WhittakerPair& b) {
  if (a.phi != b.phi) throw PhiMismatch("dominates: the pairs carry different phi");
  validate_pair(g, a);
  validate_pair(g, b);
  if (!is_zero(g.bracket(a.S, b.S))) return false;
  Subspace lhs = intersect(stab_covec(g, a.phi), grading(g, a.S).ge(1));
  return grading(g, b.S - a.S).ge(0).contains(lhs);
}

}  // namespace wc
