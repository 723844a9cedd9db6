#include <algorithm>

#include "whitcalc/expand.hpp"

namespace wc {

// --- Heisenberg parabolics

std::optional<int> heisenberg_root(const LieAlgebra& g) {
  const RootSystem& rs = g.roots();
  if (!rs.simply_laced()) throw NotSimplyLaced("heisenberg_root: " + rs.name() + " is not simply laced");
  std::vector<int> found;
  for (int i = 0; i < rs.rank(); ++i)
    if (grading(g, fundamental_coweight2(g, i)).eq(4).dim() == 1) found.push_back(i);
  if (found.empty()) return std::nullopt;
  if (found.size() > 1) throw InternalFailure("heisenberg_root: not unique");
  return found[0];
}

HeisenbergData heisenberg_data(const LieAlgebra& g) {
  auto a = heisenberg_root(g);
  if (!a) throw std::domain_error("no Heisenberg root in " + g.roots().name());
  const RootSystem& rs = g.roots();
  HeisenbergData d;
  d.alpha = *a;
  d.S = fundamental_coweight2(g, d.alpha);
  d.h = g.coroot(rs.simple(d.alpha));
  const Root& al = rs.root(rs.simple(d.alpha));
  for (int k = 0; k < rs.num_roots(); ++k) {
    const Root& r = rs.root(k);
    int p = rs.pairing(r, al);
    if (rs.positive(k) && p <= 0 && r[d.alpha] == 1) d.Psi.push_back(k);
    if (!rs.positive(k) && p == 1) d.Omega.push_back(k);
  }
  auto w = weyl_word(rs, rs.highest(), rs.simple(d.alpha));
  if (!w) throw InternalFailure("heisenberg_data: alpha_max not conjugate to alpha");
  Elem half = qr(1, 2) * d.S;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<int> word = *w;
    if (attempt) std::reverse(word.begin(), word.end());
    QMat A = weyl_automorphism(g, word);
    if (A.apply(half) == d.h) {
      d.gamma_word = word;
      d.gamma = A;
      return d;
    }
  }
  throw InternalFailure("heisenberg_data: gamma_alpha does not carry S/2 to h_alpha");
}

Expr heisenberg_expansion(const LieAlgebra& g) {
  HeisenbergData d = heisenberg_data(g);
  const RootSystem& rs = g.roots();
  Grading gS = grading(g, d.S);

  Expr first = with(make_leaf(WhittakerPair{d.S, g.zero()}), [](Node& n) {
    n.phi_sym = {{"\\varphi", {}}};
    n.display = "\\mathcal{F}_{S_\\alpha,\\varphi}";
  });
  first = with(sum_rational("\\varphi", "(\\mathfrak{g}^*)^{S_\\alpha}_{-2}", first),
               [&](Node& n) { n.space = covec_space(g, gS.eq(-2)); });

  Covec dir = g.covec_of(g.root_vector(rs.neg(rs.simple(d.alpha))));
  std::vector<Vec> psi, omega;
  for (int k : d.Psi) psi.push_back(g.covec_of(g.root_vector(rs.neg(k))));
  for (int k : d.Omega) omega.push_back(g.root_vector(k));
  Expr second = with(make_leaf(WhittakerPair{d.S, g.zero()}), [&](Node& n) {
    n.phi_sym = {{"\\varphi", dir}, {"\\psi", {}}};
    n.display = "\\mathcal{F}_{S_\\alpha,\\varphi+\\psi}";
  });
  second = translate("\\gamma_\\alpha", second);
  second = with(sum_rational("\\psi", "\\bigoplus_{\\varepsilon\\in\\Psi_\\alpha}\\mathfrak{g}^*_{-\\varepsilon}", second),
                [&](Node& n) { n.space = Subspace::span(g.dim(), psi); });
  second = with(sum_group("\\omega", "\\Omega_\\alpha", second),
                [&](Node& n) { n.space = Subspace::span(g.dim(), omega); });
  second = with(sum_scalar("\\varphi", "\\mathfrak{g}^{\\times}_{-\\alpha}", "K^x", second),
                [&](Node& n) { n.space = Subspace::span(g.dim(), {dir}); });
  return combine({first, second});
}

// --- GL_n

namespace {

QMat unit(int m, int i, int j) {
  QMat u(m, m);
  u.at(i, j) = 1;
  return u;
}

Elem diag_elem(const LieAlgebra& g, const std::vector<Rat>& v) {
  QMat m(static_cast<int>(v.size()), static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = v[i];
  return g.elem_from_matrix(m);
}

std::string subset_str(const std::vector<int>& x) {
  std::string s = "\\{";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + "\\}";
}

// covector chi with chi(X) = 1, supported on the root space opposite to Y
Covec dual_to(const LieAlgebra& g, const Elem& X, const Elem& Y) {
  Covec c = g.covec_of(Y);
  Rat v = dot(c, X);
  return (1 / v) * c;
}

}  // namespace

CoeffExpr gln_expansion(int n) {
  if (n < 2) throw std::invalid_argument("gln: n >= 2");
  CoeffExpr out{"gl", n, nullptr};
  const LieAlgebra& g = out.algebra();
  std::vector<Rat> s;
  for (int i = 0; i < n; ++i) s.push_back(n - 1 - 2 * i);
  Elem S = diag_elem(g, s);
  std::vector<Expr> terms;
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    std::vector<int> x;
    QMat f(n, n);
    for (int i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) {
        x.push_back(i);
        f = f + unit(n, i, i - 1);
      }
    WhittakerPair p{S, g.covec_of(g.elem_from_matrix(f))};
    validate_pair(g, p);
    if (!is_standard(g, p)) throw InternalFailure("gln: (S, phi_x) is not a Whittaker pair");
    Expr leaf = with(make_leaf(p), [&](Node& l) { l.note = "x=" + subset_str(x); });
    terms.push_back(with(sum_group("\\gamma", "\\Gamma_{" + subset_str(x) + "}", leaf),
                         [](Node& b) { b.note = "Gamma_x: a certain subset of Gamma, not specified"; }));
  }
  out.root = combine(terms);
  return out;
}

// --- Sp_4

CoeffExpr sp4_expansion() {
  CoeffExpr out{"sp", 4, nullptr};
  const LieAlgebra& g = out.algebra();
  auto E = [&](int i, int j) { return g.elem_from_matrix(unit(4, i - 1, j - 1)); };
  auto Em = [&](int i, int j, int k, int l) {
    return g.elem_from_matrix(unit(4, i - 1, j - 1) - unit(4, k - 1, l - 1));
  };

  Elem siegel = diag_elem(g, {1, 1, -1, -1});
  Elem SW = diag_elem(g, {3, 1, -3, -1});
  Covec d1 = dual_to(g, Em(1, 2, 4, 3), Em(2, 1, 3, 4));
  Covec d2 = dual_to(g, E(2, 4), E(4, 2));
  Covec zero = g.zero();

  WhittakerPair px{siegel, g.covec_of(E(3, 1) + E(4, 2))};
  validate_pair(g, px);
  Expr X = with(make_leaf(px), [](Node& n) {
    n.display = "\\mathcal{F}_{\\mathfrak{u},\\varphi}";
    n.note = "representative x^2+y^2";
  });
  X = with(sum_rational("\\varphi", "X", X),
           [](Node& n) { n.note = "anisotropic non-degenerate forms in u-bar = Sym^2"; });

  auto W = [&](const Covec& base, const Covec& dir, const char* disp) {
    validate_pair(g, {SW, base + dir});
    if (!is_standard(g, {SW, base + dir})) throw InternalFailure("sp4: W is not a Whittaker coefficient");
    return with(make_leaf(WhittakerPair{SW, base}), [&](Node& n) {
      n.phi_sym = {{"a", dir}};
      n.display = disp;
    });
  };
  Expr w1a = W(d1, d2, "\\mathcal{W}_{1,$a}");
  Expr wa1 = W(d2, d1, "\\mathcal{W}_{$a,1}");
  Expr wa0 = W(zero, d1, "\\mathcal{W}_{$a,0}");

  Expr vx = with(int_adelic("x", "\\mathbb{A}", Subspace::span(g.dim(), {E(2, 4)}), w1a), [](Node& n) {
    n.word = "v_x";
    n.arg_left = true;
    n.note = "v_x = Id + x e_24";
  });
  Expr tw = with(translate("w", vx), [](Node& n) {
    n.arg_left = true;
    n.note = "w = diag(1,1,1,-1) sigma_24";
  });
  Expr fam1 = with(sum_group("\\gamma", "L/O(1,1)", tw),
                   [](Node& n) { n.note = "O(1,1): stabilizer of the split form"; });
  Expr fam2 = sum_group("\\gamma", "L/(N\\cap L)", wa1);
  Expr asum = sum_scalar("a", "\\mathbb{K}", "K", combine({fam1, fam2, wa0}));
  out.root = combine({X, asum});
  return out;
}

}  // namespace wc
