#include "whitcalc/deform.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "whitcalc/orbits.hpp"

namespace wc {

Deformation::Deformation(const LieAlgebra& g, Elem H, Elem Z, Covec phi)
    : g_(&g), H_(std::move(H)), Z_(std::move(Z)), phi_(std::move(phi)) {
  if (!is_zero(g.bracket(H_, Z_))) throw NonCommuting("deformation: [H, Z] != 0");
  if (!is_zero(g.coadjoint(Z_, phi_))) throw std::invalid_argument("deformation: ad*(Z) phi != 0");
  validate_pair(g, {H_, phi_});
  for (auto& [k, s] : bigrading(g, H_, Z_)) cells_.push_back({k.first, k.second, s});
  gphi_ = stab_covec(g, phi_);
}

Subspace Deformation::z_sign(int sign) const {
  return collect(Rat(0), [sign](const Rat&, const Rat& b) { return sgn(b) == sign; });
}

namespace {

std::vector<Rat> crossings(const Deformation& d, std::vector<int> levels) {
  std::set<Rat> out{Rat(0)};
  for (const auto& c : d.support()) {
    if (sgn(c.b) == 0) continue;
    for (int lv : levels) {
      Rat t = (Rat(lv) - c.a) / c.b;
      if (sgn(t) > 0) out.insert(t);
    }
  }
  return {out.begin(), out.end()};
}

// x in u with omega(x, r) = 0
Subspace perp(const QMat& om, const Subspace& u, const Subspace& r) {
  const int du = u.dim(), dr = r.dim();
  if (du == 0) return u;
  QMat m(std::max(dr, 1), du);
  for (int j = 0; j < dr; ++j) {
    Vec wy = om.apply(r.basis()[j]);
    for (int i = 0; i < du; ++i) m.at(j, i) = dot(u.basis()[i], wy);
  }
  Subspace c = nullspace(m);
  std::vector<Vec> out;
  for (const auto& cv : c.basis()) {
    Vec x = zero_vec(u.ambient());
    for (int i = 0; i < du; ++i)
      if (sgn(cv[i])) axpy(x, cv[i], u.basis()[i]);
    out.push_back(x);
  }
  return Subspace::span(u.ambient(), out);
}

bool direct_sum_is(const Subspace& a, const Subspace& b, const Subspace& total) {
  return independent(a, b) && sum(a, b) == total;
}

}  // namespace

std::vector<Rat> critical_values(const Deformation& d) { return crossings(d, {1}); }
std::vector<Rat> quasi_critical_values(const Deformation& d) { return crossings(d, {1, 2}); }

Snapshot snapshot(const Deformation& d, const Rat& t) {
  if (sgn(t) < 0) throw std::invalid_argument("snapshot: t < 0");
  const LieAlgebra& g = d.algebra();
  Snapshot s;
  s.t = t;
  s.u = d.collect(t, [](const Rat& l, const Rat&) { return l >= 1; });
  s.v = d.collect(t, [](const Rat& l, const Rat&) { return l > 1; });
  s.w = d.collect(t, [](const Rat& l, const Rat&) { return l == 1; });
  s.n = radical(g, d.phi(), s.u);
  if (s.n != sum(s.v, intersect(s.w, d.g_phi())))
    throw InternalFailure("snapshot: radical differs from v + (w ∩ g_phi)");
  s.l = sum(d.collect(t, [](const Rat& l, const Rat& b) { return l >= 1 && sgn(b) < 0; }), s.n);
  s.r = sum(d.collect(t, [](const Rat& l, const Rat& b) { return l >= 1 && sgn(b) > 0; }), s.n);
  if (intersect(s.l, s.r) != s.n) throw InternalFailure("snapshot: l ∩ r != n");
  if (!s.n.contains(s.v) || !s.l.contains(s.n) || !s.r.contains(s.n) || !s.u.contains(s.l) || !s.u.contains(s.r))
    throw InternalFailure("snapshot: inclusions v ⊆ n ⊆ l, r ⊆ u fail");
  return s;
}

bool LemmaReport::ok() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.ok; });
}

std::string LemmaReport::failures() const {
  std::ostringstream o;
  for (const auto& c : clauses)
    if (!c.ok) o << c.name << " ";
  return o.str();
}

LemmaReport check_help_lemma(const Deformation& d, const Rat& s, const Rat& t) {
  const LieAlgebra& g = d.algebra();
  LemmaReport rep;
  QMat om = omega(g, d.phi());
  QMat A = g.ad(d.Z());
  rep.clauses.push_back({"help1", (A.transpose() * om + om * A).is_zero()});
  rep.clauses.push_back({"help2", nullspace(om) == d.g_phi()});
  bool c3 = true, c4 = true;
  for (const Rat& x : {s, t}) {
    Subspace u = d.collect(x, [](const Rat& l, const Rat&) { return l >= 1; });
    Subspace v = d.collect(x, [](const Rat& l, const Rat&) { return l > 1; });
    Subspace w = d.collect(x, [](const Rat& l, const Rat&) { return l == 1; });
    Subspace kw = radical(g, d.phi(), w);
    c3 = c3 && kw == intersect(d.g_phi(), w);
    c4 = c4 && direct_sum_is(v, kw, radical(g, d.phi(), u));
  }
  rep.clauses.push_back({"help3", c3});
  rep.clauses.push_back({"help4", c4});
  if (s < t) {
    Subspace ws = d.collect(s, [](const Rat& l, const Rat&) { return l == 1; });
    Subspace ut = d.collect(t, [](const Rat& l, const Rat&) { return l >= 1; });
    rep.clauses.push_back({"help5", ut.contains(intersect(ws, d.g_phi()))});
  }
  return rep;
}

LemmaReport verify_key_lemma(const Deformation& d, const Rat& s, const Rat& t) {
  if (sgn(s) < 0 || t < s) throw std::invalid_argument("verify_key_lemma: need 0 <= s <= t");
  const LieAlgebra& g = d.algebra();
  if (s < t)
    for (const Rat& c : critical_values(d))
      if (s < c && c < t) throw IntervalNotRegular("critical value " + to_string(c) + " in (s,t)");
  QMat om = omega(g, d.phi());
  LemmaReport rep;
  Snapshot S = snapshot(d, s), T = snapshot(d, t);
  for (const Snapshot* x : {&S, &T}) {
    const std::string at = "@" + to_string(x->t);
    bool c1 = is_ideal(g, x->l, x->u) && is_ideal(g, x->r, x->u) && x->n.contains(bracket_space(g, x->l, x->r)) &&
              intersect(x->l, x->r) == x->n;
    rep.clauses.push_back({"key1" + at, c1});
    Subspace rp = perp(om, x->u, x->r), lp = perp(om, x->u, x->l);
    bool iso = is_isotropic(g, d.phi(), x->l) && is_isotropic(g, d.phi(), x->r);
    bool proj = intersect(x->l, rp) == x->n && x->l.dim() - x->n.dim() == x->u.dim() - rp.dim() &&
                intersect(x->r, lp) == x->n && x->r.dim() - x->n.dim() == x->u.dim() - lp.dim();
    Subspace wneg = d.collect(x->t, [](const Rat& l, const Rat& b) { return l == 1 && sgn(b) < 0; });
    bool split = direct_sum_is(wneg, x->n, x->l);
    rep.clauses.push_back({"key2" + at, iso && proj && split});
  }
  if (s < t) {
    Subspace wt_neg = d.collect(t, [](const Rat& l, const Rat& b) { return l == 1 && sgn(b) < 0; });
    Subspace ws_pos = d.collect(s, [](const Rat& l, const Rat& b) { return l == 1 && sgn(b) > 0; });
    bool vw = independent(T.v, wt_neg) && independent(S.v, ws_pos) && sum(T.v, wt_neg) == sum(S.v, ws_pos);
    rep.clauses.push_back({"key3-vw", vw});
    Subspace wtphi = intersect(T.w, d.g_phi());
    Subspace w0z0 = intersect(d.collect(0, [](const Rat& l, const Rat& b) { return l == 1 && sgn(b) == 0; }),
                              d.g_phi());
    bool lrw = T.l == sum(S.r, wtphi) && intersect(S.r, wtphi) == w0z0;
    rep.clauses.push_back({"key3-lrw", lrw});
    bool quot = is_ideal(g, S.r, T.l) && S.r.contains(bracket_space(g, T.l, T.l));
    rep.clauses.push_back({"key3-ideal", quot});
  }
  if (!rep.ok()) throw InternalFailure("key lemma failed: " + rep.failures());
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

Rat max_abs_eig(const Grading& gr) {
  Rat m = 0;
  for (const auto& [l, s] : gr.pieces) m = std::max(m, Rat(abs(l)));
  return m;
}

std::optional<Rat> min_pos_eig(const Grading& gr) {
  for (const auto& [l, s] : gr.pieces)
    if (sgn(l) > 0) return l;
  return std::nullopt;
}

long ceil_rat(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

// coordinates 1, N1, N1^2, ... in the basis of a, N1 doubling until generic
Elem generic_element(const LieAlgebra& g, const Subspace& a, Subspace& ma) {
  ma = centralizer(g, a);
  if (a.is_zero()) return g.zero();
  for (long N1 = 2; N1 < (1L << 20); N1 *= 2) {
    Elem z = g.zero();
    Rat pw = 1;
    for (const auto& b : a.basis()) {
      axpy(z, pw, b);
      pw *= N1;
    }
    if (centralizer(g, z) == ma) return z;
  }
  throw SearchFailed("build_zprime: no generic element of the torus");
}

}  // namespace

ZPrime build_zprime(const LieAlgebra& g, const WhittakerPair& p) {
  validate_pair(g, p);
  ZPrime out;
  out.hz = decompose_hZ(g, p);
  const Elem& h = out.hz.h;
  const Elem& Z = out.hz.Z;
  Subspace c = intersect(centralizer(g, h), stab_covec(g, p.phi));
  Subspace a = intersect(intersect(c, g.cartan()), centralizer(g, Z));
  if (!is_zero(Z)) a = sum(a, Subspace::span(g.dim(), {Z}));
  // enlarge a by split witnesses until phi is K-distinguished in its centralizer
  Subspace ma;
  Grading gz, gZ = grading(g, Z);
  for (int round = 0;; ++round) {
    if (round > g.dim()) throw SearchFailed("build_zprime: torus did not stabilise");
    out.z = generic_element(g, a, ma);
    gz = grading(g, out.z);
    out.levi = gz.eq(0);
    if (out.levi != ma) throw InternalFailure("build_zprime: centralizer of z is not the centralizer of a");
    DistResult dr = is_k_distinguished(g, p.phi, out.levi, h);
    if (dr.verdict == Tri::Yes) break;
    if (dr.verdict == Tri::Unknown || !dr.witness)
      throw SearchFailed("build_zprime: no maximal split torus certificate (" + dr.certificate + ")");
    a = sum(a, Subspace::span(g.dim(), {*dr.witness}));
  }
  out.torus = a;
  out.torus_maximal = true;
  auto mp = min_pos_eig(gZ);
  out.N = mp ? 1 + ceil_rat(max_abs_eig(gz) / *mp) : 1;
  out.Zp = Rat(out.N) * Z + out.z;
  Grading gZp = grading(g, out.Zp);
  if (gZp.gt(0) != sum(gZ.gt(0), intersect(gZ.eq(0), gz.gt(0))) || gZp.eq(0) != out.levi ||
      !gZ.eq(0).contains(out.levi))
    throw InternalFailure("build_zprime: grading of Z' is not the expected refinement");

  // least T: breakpoints of the cell inequalities, then interval midpoints
  auto hz_cells = bigrading(g, p.S, out.Zp);
  auto zz_cells = bigrading(g, Z, out.Zp);
  std::set<Rat> bp;
  for (const auto& [k, s] : hz_cells)
    if (sgn(k.second))
      for (int lv : {1, 2}) bp.insert((Rat(lv) - k.first) / k.second);
  for (const auto& [k, s] : zz_cells)
    if (sgn(k.second)) bp.insert(-k.first / k.second);
  std::vector<Rat> pts;
  for (const Rat& x : bp)
    if (sgn(x) > 0) pts.push_back(x);
  std::vector<Rat> cand;
  Rat prev = 0;
  for (const Rat& x : pts) {
    cand.push_back((prev + x) / 2);
    cand.push_back(x);
    prev = x;
  }
  cand.push_back(prev + 1);
  auto cheap = [&](const Rat& T) {
    for (const auto& [k, s] : hz_cells) {
      Rat l = k.first + T * k.second;
      if (sgn(k.second) > 0 && l < 2) return false;
      if (sgn(k.second) < 0 && l >= 1) return false;
    }
    for (const auto& [k, s] : zz_cells)
      if (sgn(k.second) && sgn(k.first + T * k.second) == 0) return false;
    return true;
  };
  for (const Rat& T : cand) {
    if (!cheap(T)) continue;
    Elem HT = p.S + T * out.Zp;
    HZ hint{h, Z + T * out.Zp, out.hz.triple};
    LeviReport rep = levi_distinguished_report(g, {HT, p.phi}, hint);
    if (!rep.ok || rep.levi != out.levi) continue;
    out.T = T;
    if (!dominates(g, p, {HT, p.phi})) throw InternalFailure("build_zprime: (H, phi) does not dominate (H+TZ', phi)");
    return out;
  }
  throw SearchFailed("build_zprime: no T makes the pair Levi-distinguished");
}

}  // namespace wc
