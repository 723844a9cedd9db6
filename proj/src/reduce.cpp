#include <algorithm>
#include <sstream>

#include "whitcalc/expand.hpp"

namespace wc {

namespace {

// eigencomponents of a covector under ad*(H), keyed by eigenvalue
std::map<Rat, Covec> components(const LieAlgebra& g, const Grading& gr, const Covec& phi) {
  std::map<Rat, Covec> out;
  if (is_zero(phi)) return out;
  Elem y = g.elem_of(phi);
  std::vector<Vec> cols;
  std::vector<Rat> owner;
  for (const auto& [l, s] : gr.pieces)
    for (const auto& b : s.basis()) {
      cols.push_back(b);
      owner.push_back(l);
    }
  auto c = solve_affine(QMat::from_cols(cols, g.dim()), y);
  if (!c) throw InternalFailure("components: grading does not span");
  for (size_t k = 0; k < cols.size(); ++k) {
    if (!sgn((*c)[k])) continue;
    auto it = out.try_emplace(owner[k], zero_vec(g.dim())).first;
    axpy(it->second, (*c)[k], cols[k]);
  }
  for (auto& [l, v] : out) v = g.covec_of(v);
  return out;
}

Covec piece_at(const std::map<Rat, Covec>& m, const Rat& l, int dim) {
  auto it = m.find(l);
  return it == m.end() ? zero_vec(dim) : it->second;
}

bool covec_in_range(const LieAlgebra& g, const Grading& gr, const Covec& phi, const Rat& lo, bool strict) {
  for (const auto& [l, _] : components(g, gr, phi))
    if (strict ? l <= lo : l < lo) return false;
  return true;
}

const Node& leaf_of(const Expr& e) {
  if (!e || e->kind != NodeKind::Leaf) throw std::invalid_argument("step_expand: expected a leaf");
  return *e;
}

const char* kCharDesc = "(\\mathfrak{g}^*)^{H_t}_{-1}\\cap(\\mathfrak{g}^*)^{e}\\cap(\\mathfrak{g}^*)^{Z}_{<0}";

}  // namespace

Subspace step_characters(const Deformation& d, const Rat& t) {
  const LieAlgebra& g = d.algebra();
  Elem e = is_zero(d.phi()) ? g.zero() : decompose_hZ(g, {d.H(), d.phi()}).triple.e;
  Subspace s = d.collect(t, [](const Rat& l, const Rat& b) { return l == -1 && sgn(b) < 0; });
  return covec_space(g, intersect(s, centralizer(g, e)));
}

Expr step_expand(const Deformation& d, const Rat& s, const Rat& t, const Expr& e, int part) {
  const LieAlgebra& g = d.algebra();
  const Node& n = leaf_of(e);
  if (t < s) throw std::invalid_argument("step_expand: s > t");
  for (const Rat& c : critical_values(d))
    if (s < c && c < t) throw IntervalNotRegular("step_expand: critical value " + c.get_str() + " in (s,t)");
  if (n.phi != d.phi()) throw PhiMismatch("step_expand: leaf character differs from the deformation");
  const Elem Hs = d.at(s), Ht = d.at(t);
  const Elem& here = (part == 1 || part == 4) ? Ht : Hs;
  if (n.S != here) throw EigenspaceViolation("step_expand: leaf is not at the expected parameter");
  Grading gs = grading(g, Hs), gt = grading(g, Ht);
  const int dim = g.dim();
  const Covec& p = n.phi_prime;

  if (part == 1) {
    Snapshot sn = snapshot(d, t);
    Subspace zneg = d.z_sign(-1);
    Quotient V = make_quotient(intersect(gt.ge(1), zneg), intersect(gt.gt(1), zneg));
    Expr r = with(e, [&](Node& x) {
      x.r_space = sn.r;
      x.r_name = "R_t";
    });
    if (V.dim() == 0) return r;
    return int_adelic("v", "V", V.section(), r);
  }
  if (part == 2) {
    if (!covec_in_range(g, gt, p, -2, true) || !covec_in_range(g, gs, p, -2, true))
      throw EigenspaceViolation("step_expand(2): phi' not in the range (-2, inf) at s and t");
    Subspace C = step_characters(d, t);
    Expr l = with(e, [&](Node& x) {
      x.S = Ht;
      x.triple = true;
      if (!C.is_zero()) x.prime_sym.push_back({"\\psi'", {}});
    });
    if (C.is_zero()) return l;
    return with(sum_rational("\\psi'", kCharDesc, l), [&](Node& x) { x.space = C; });
  }
  if (part == 3 || part == 4) {
    const Grading& at_new = part == 3 ? gt : gs;   // where psi sits at -2
    const Grading& at_old = part == 3 ? gs : gt;
    auto comp = components(g, at_new, p);
    Covec psi = piece_at(comp, Rat(-2), dim);
    Covec rest = p - psi;
    if (!covec_in_range(g, at_old, p, -2, true)) throw EigenspaceViolation("step_expand: phi' not in (g*)_{>-2}");
    if (!covec_in_range(g, at_new, rest, -2, true))
      throw EigenspaceViolation("step_expand: phi' has components below -2 at the new parameter");
    const Elem& Hn = part == 3 ? Ht : Hs;
    Subspace C = covec_space(g, at_new.eq(-1));
    Expr l = with(e, [&](Node& x) {
      x.S = Hn;
      x.phi = n.phi + psi;
      x.phi_prime = rest;
      x.triple = true;
      if (!C.is_zero()) x.prime_sym.push_back({"\\psi'", {}});
    });
    if (C.is_zero()) return l;
    const char* desc = part == 3 ? "(\\mathfrak{g}^*)^{H_t}_{-1}" : "(\\mathfrak{g}^*)^{H_s}_{-1}";
    return with(sum_rational("\\psi'", desc, l), [&](Node& x) { x.space = C; });
  }
  throw std::invalid_argument("step_expand: part must be 1..4");
}

// --- Theorem A

bool ReductionCertificate::valid() const {
  for (const auto& s : steps) {
    if (!s.branch) continue;
    if (!closure_leq(s.before, s.after)) return false;
    if (s.before == s.after && s.index_after <= s.index_before) return false;
  }
  return true;
}

namespace {

struct Reducer {
  const LieAlgebra& g;
  ReductionCertificate& cert;
  int counter = 0;
  static constexpr int kMaxDepth = 64;
  static constexpr int kMaxStrata = 10;

  std::string fresh(const std::string& base) { return base + "_{" + std::to_string(++counter) + "}"; }

  void check_above(const Grading& gr, const Covec& p0, const Subspace& W, const char* where) {
    if (!covec_in_range(g, gr, p0, -2, true)) throw InternalFailure(std::string(where) + ": phi' leaves (-2, inf)");
    for (const auto& w : W.basis())
      if (!covec_in_range(g, gr, w, -2, true)) throw InternalFailure(std::string(where) + ": phi' leaves (-2, inf)");
  }

  Expr unquasy(const Elem& H, const Covec& phi, const std::string& note) {
    return with(make_leaf(WhittakerPair{H, phi}), [&](Node& n) { n.note = note; });
  }

  Expr run(const Elem& H, const Covec& phi, const Covec& p0, const Subspace& W, int depth) {
    if (depth > kMaxDepth) throw SearchFailed("reduce: depth limit reached");
    Grading gH = grading(g, H);
    check_above(gH, p0, W, "reduce");
    if (levi_distinguished_report(g, {H, phi}).ok) return unquasy(H, phi, "UnQuasy");

    ZPrime zp = build_zprime(g, {H, phi});
    Deformation d(g, H, zp.Zp, phi);
    std::vector<Rat> qs;
    for (const Rat& q : quasi_critical_values(d))
      if (sgn(q) > 0 && q <= zp.T) qs.push_back(q);
    OrbitLabel label = orbit_label(g, g.elem_of(phi));
    int idx = index_in(g, H, phi);

    if (qs.empty()) {
      Elem HT = d.at(zp.T);
      HZ hint{zp.hz.h, zp.hz.Z + zp.T * zp.Zp, zp.hz.triple};
      if (!levi_distinguished_report(g, {HT, phi}, hint).ok)
        throw InternalFailure("reduce: end pair of the deformation is not Levi-distinguished");
      Subspace C = step_characters(d, zp.T);
      Grading gT = grading(g, HT);
      check_above(gT, p0, sum(W, C), "UnQuasy");
      if (nilpotent_datum(g, {HT, phi}) != gT.ge(2)) throw InternalFailure("UnQuasy: n != g_{>=2}");
      cert.steps.push_back({zp.T, "step(2)+UnQuasy", label, label, idx, index_in(g, HT, phi), false});
      Expr leaf = unquasy(HT, phi, "UnQuasy");
      if (C.is_zero()) return leaf;
      return with(sum_rational(fresh("\\psi'"), kCharDesc, leaf), [&](Node& n) {
        n.space = C;
        n.note = "summands coincide after UnQuasy";
      });
    }

    const Rat s = qs.front();
    const Elem Hs = d.at(s);
    Grading gs = grading(g, Hs);
    // everything in (g*)^H_{>-2} is >= -2 at the first quasi-critical value
    auto split = [&](const Covec& c, Covec& lo) {
      auto m = components(g, gs, c);
      for (const auto& [l, _] : m)
        if (l < -2) throw InternalFailure("reduce: component below -2 before the first quasi-critical value");
      lo = piece_at(m, Rat(-2), g.dim());
      return c - lo;
    };
    Covec psi0;
    Covec rest0 = split(p0, psi0);
    std::vector<Vec> wpsi, wrest;
    for (const auto& w : W.basis()) {
      Covec lo;
      Covec hi = split(w, lo);
      if (!is_zero(lo)) wpsi.push_back(lo);
      if (!is_zero(hi)) wrest.push_back(hi);
    }
    Subspace Wpsi = Subspace::span(g.dim(), wpsi);
    Subspace Cs = covec_space(g, gs.eq(-1));
    Subspace Wnext = sum(Subspace::span(g.dim(), wrest), Cs);
    if (Wpsi.dim() > kMaxStrata) throw SearchFailed("reduce: too many strata");

    std::vector<Expr> branches;
    const int m = Wpsi.dim();
    for (int mask = 0; mask < (1 << m); ++mask) {
      Covec psi = psi0;
      std::vector<Vec> supp;
      for (int j = 0; j < m; ++j)
        if (mask >> j & 1) {
          psi = psi + Wpsi.basis()[j];
          supp.push_back(Wpsi.basis()[j]);
        }
      Covec phi2 = phi + psi;
      OrbitLabel after = orbit_label(g, g.elem_of(phi2));
      int idx2 = index_in(g, Hs, phi2);
      cert.steps.push_back({s, "step(3)", label, after, idx, idx2, true});
      bool up = closure_leq(label, after);
      if (!up || (label == after && idx2 <= idx)) {
        std::ostringstream os;
        os << "reduce: no lexicographic increase at t=" << s.get_str() << " (" << label.str() << ", " << idx
           << ") -> (" << after.str() << ", " << idx2 << ")";
        throw CertificateViolation(os.str());
      }
      Expr child = run(Hs, phi2, rest0, Wnext, depth + 1);
      if (!Cs.is_zero())
        child = with(sum_rational(fresh("\\psi''"), "(\\mathfrak{g}^*)^{H_s}_{-1}", child),
                     [&](Node& n) { n.space = Cs; });
      if (!supp.empty())
        child = with(sum_scalar(fresh("c"), "(\\mathbb{K}^{\\times})^{" + std::to_string(supp.size()) + "}", "K^x", child),
                     [&](Node& n) {
                       n.space = Subspace::span(g.dim(), supp);
                       n.note = "unit-coefficient stratum of the -2 part";
                     });
      branches.push_back(child);
    }
    return branches.size() == 1 ? branches[0] : combine(branches);
  }
};

}  // namespace

Reduction reduce_to_levi_distinguished(const LieAlgebra& g, const WhittakerTriple& t) {
  validate_triple(g, t);
  Reduction r;
  Reducer red{g, r.certificate};
  r.tree = red.run(t.S, t.phi, t.phi_prime, Subspace::span(g.dim(), {}), 0);
  for (const Expr& l : leaves(r.tree))
    if (!is_levi_distinguished(g, {l->S, l->phi}))
      throw InternalFailure("reduce: output leaf is not Levi-distinguished");
  if (!r.certificate.valid()) throw CertificateViolation("reduce: certificate failed validation");
  return r;
}

// --- Theorem B

ThmB theorem_b_transform(const LieAlgebra& g, const WhittakerPair& Hp, const WhittakerPair& Sp, bool ws) {
  if (Hp.phi != Sp.phi) throw PhiMismatch("theorem B: the pairs have different characters");
  if (!ws) throw std::invalid_argument("theorem B: the WS(phi) hypothesis must be declared");
  validate_pair(g, Hp);
  validate_pair(g, Sp);
  if (!dominates(g, Hp, Sp)) throw NotDominating("theorem B: (H, phi) does not dominate (S, phi)");
  Grading gH = grading(g, Hp.S), gS = grading(g, Sp.S);
  ThmB out;
  out.v = intersect(gH.gt(1), gS.lt(1));
  out.u = make_quotient(intersect(gS.ge(1), gH.gt(1)), intersect(gS.gt(1), gH.gt(1)));
  out.w = make_quotient(intersect(gH.ge(1), gS.lt(1)), out.v);
  out.part1 = gH.eq(1).is_zero() && gS.eq(1).is_zero();

  Expr e = with(make_leaf(Sp), [](Node& n) { n.tags = {"WS(\\varphi)"}; });
  if (!out.part1 && out.u.dim()) e = int_compact("u", "[U]", out.u.section(), e);
  if (!out.v.is_zero()) e = int_adelic("v", "V", out.v, e);
  if (!out.part1 && out.w.dim()) e = with(sum_group("w", "\\Omega", e), [&](Node& n) { n.space = out.w.section(); });
  out.tree = e;

  if (Hp.S != Sp.S) {
    Deformation d(g, Hp.S, Sp.S - Hp.S, Hp.phi);
    for (const Rat& c : critical_values(d))
      if (sgn(c) > 0 && c < 1) out.dropped.emplace_back(c, step_characters(d, c));
  }
  return out;
}

}  // namespace wc
