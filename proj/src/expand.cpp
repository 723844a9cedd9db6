#include "whitcalc/expand.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wc {

using nlohmann::json;

std::string kind_str(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "Leaf";
    case NodeKind::SumRational: return "SumRational";
    case NodeKind::IntCompact: return "IntCompact";
    case NodeKind::IntAdelic: return "IntAdelic";
    case NodeKind::Translate: return "Translate";
    case NodeKind::Combine: return "Combine";
  }
  return "?";
}

namespace {

NodeKind kind_from(const std::string& s) {
  for (NodeKind k : {NodeKind::Leaf, NodeKind::SumRational, NodeKind::IntCompact, NodeKind::IntAdelic,
                     NodeKind::Translate, NodeKind::Combine})
    if (kind_str(k) == s) return k;
  throw std::invalid_argument("coeffexpr: unknown node kind " + s);
}

Expr binder(NodeKind k, std::string var, std::string descriptor, Expr body) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->var = std::move(var);
  n->descriptor = std::move(descriptor);
  n->children = {std::move(body)};
  return n;
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->S != b->S || a->phi != b->phi || a->phi_prime != b->phi_prime ||
      a->triple != b->triple || a->phi_sym != b->phi_sym || a->prime_sym != b->prime_sym ||
      a->r_space != b->r_space || a->r_name != b->r_name || a->tags != b->tags || a->display != b->display ||
      a->var != b->var || a->word != b->word || a->descriptor != b->descriptor || a->domain != b->domain ||
      a->space != b->space || a->group != b->group || a->arg_left != b->arg_left || a->note != b->note ||
      a->children.size() != b->children.size())
    return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

Expr make_leaf(const WhittakerPair& p) {
  auto n = std::make_shared<Node>();
  n->S = p.S;
  n->phi = p.phi;
  n->phi_prime = zero_vec(static_cast<int>(p.phi.size()));
  return n;
}

Expr make_leaf(const WhittakerTriple& t) {
  auto n = std::make_shared<Node>();
  n->S = t.S;
  n->phi = t.phi;
  n->phi_prime = t.phi_prime;
  n->triple = true;
  return n;
}

Expr with(const Expr& e, const std::function<void(Node&)>& edit) {
  auto n = std::make_shared<Node>(*e);
  edit(*n);
  std::sort(n->tags.begin(), n->tags.end());
  n->tags.erase(std::unique(n->tags.begin(), n->tags.end()), n->tags.end());
  return n;
}

Expr sum_rational(std::string var, std::string descriptor, Expr body) {
  return binder(NodeKind::SumRational, std::move(var), std::move(descriptor), std::move(body));
}

Expr sum_group(std::string var, std::string descriptor, Expr body) {
  return with(sum_rational(var, std::move(descriptor), std::move(body)), [&](Node& n) {
    n.group = true;
    n.word = var;
  });
}

Expr sum_scalar(std::string var, std::string descriptor, std::string domain, Expr body) {
  return with(sum_rational(std::move(var), std::move(descriptor), std::move(body)),
              [&](Node& n) { n.domain = domain; });
}

Expr int_compact(std::string var, std::string descriptor, std::optional<Subspace> space, Expr body) {
  return with(binder(NodeKind::IntCompact, var, std::move(descriptor), std::move(body)), [&](Node& n) {
    n.space = std::move(space);
    n.group = true;
    n.word = var;
  });
}

Expr int_adelic(std::string var, std::string descriptor, std::optional<Subspace> space, Expr body) {
  return with(binder(NodeKind::IntAdelic, var, std::move(descriptor), std::move(body)), [&](Node& n) {
    n.space = std::move(space);
    n.group = true;
    n.word = var;
  });
}

Expr translate(std::string word, Expr body) {
  return with(binder(NodeKind::Translate, "", "", std::move(body)), [&](Node& n) {
    n.word = word;
    n.group = true;
  });
}

Expr combine(std::vector<Expr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Combine;
  n->children = std::move(terms);
  return n;
}

std::vector<Expr> leaves(const Expr& e) {
  if (e->kind == NodeKind::Leaf) return {e};
  std::vector<Expr> out;
  for (const auto& c : e->children) {
    auto l = leaves(c);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

// --- JSON

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i])) a.push_back(json::array({static_cast<int>(i), v[i].get_str()}));
  return a;
}

Vec vec_from(const json& a, int dim) {
  Vec v = zero_vec(dim);
  for (const auto& p : a) {
    int i = p.at(0).get<int>();
    if (i < 0 || i >= dim) throw std::invalid_argument("coeffexpr: index out of range");
    v[i] = Rat(p.at(1).get<std::string>());
    v[i].canonicalize();
  }
  return v;
}

json space_json(const Subspace& s) {
  json b = json::array();
  for (const auto& v : s.basis()) b.push_back(vec_json(v));
  return b;
}

Subspace space_from(const json& a, int dim) {
  std::vector<Vec> vs;
  for (const auto& v : a) vs.push_back(vec_from(v, dim));
  return Subspace::span(dim, vs);
}

json syms_json(const std::vector<SymTerm>& s) {
  json a = json::array();
  for (const auto& t : s) {
    json o{{"name", t.name}};
    if (!t.dir.empty()) o["dir"] = vec_json(t.dir);
    a.push_back(o);
  }
  return a;
}

std::vector<SymTerm> syms_from(const json& a, int dim) {
  std::vector<SymTerm> out;
  for (const auto& o : a) {
    SymTerm t{o.at("name").get<std::string>(), {}};
    if (o.contains("dir")) t.dir = vec_from(o.at("dir"), dim);
    out.push_back(t);
  }
  return out;
}

json node_json(const Expr& e) {
  json o{{"kind", kind_str(e->kind)}};
  if (!e->note.empty()) o["note"] = e->note;
  if (e->kind == NodeKind::Leaf) {
    o["S"] = vec_json(e->S);
    o["phi"] = vec_json(e->phi);
    if (e->triple) o["phi_prime"] = vec_json(e->phi_prime);
    if (!e->phi_sym.empty()) o["phi_sym"] = syms_json(e->phi_sym);
    if (!e->prime_sym.empty()) o["prime_sym"] = syms_json(e->prime_sym);
    if (e->r_space) o["r_space"] = space_json(*e->r_space);
    if (!e->r_name.empty()) o["r_name"] = e->r_name;
    if (!e->tags.empty()) o["tags"] = e->tags;
    if (!e->display.empty()) o["display"] = e->display;
    return o;
  }
  if (e->kind == NodeKind::Combine) {
    json t = json::array();
    for (const auto& c : e->children) t.push_back(node_json(c));
    o["terms"] = t;
    return o;
  }
  if (!e->var.empty()) o["var"] = e->var;
  if (!e->word.empty()) o["word"] = e->word;
  if (!e->descriptor.empty()) o["descriptor"] = e->descriptor;
  if (!e->domain.empty()) o["domain"] = e->domain;
  if (e->space) o["space"] = space_json(*e->space);
  if (e->group) o["group"] = true;
  if (e->arg_left) o["arg_left"] = true;
  o["body"] = node_json(e->children.at(0));
  return o;
}

const std::set<std::string> kLeafKeys{"kind", "note", "S", "phi", "phi_prime", "phi_sym",
                                      "prime_sym", "r_space", "r_name", "tags", "display"};
const std::set<std::string> kBinderKeys{"kind", "note", "var", "word", "descriptor", "domain",
                                        "space", "group", "arg_left", "body"};

Expr node_from(const json& o, int dim) {
  auto n = std::make_shared<Node>();
  n->kind = kind_from(o.at("kind").get<std::string>());
  n->note = o.value("note", "");
  const auto& allowed = n->kind == NodeKind::Leaf ? kLeafKeys
                        : n->kind == NodeKind::Combine ? std::set<std::string>{"kind", "note", "terms"}
                                                       : kBinderKeys;
  for (auto it = o.begin(); it != o.end(); ++it)
    if (!allowed.count(it.key())) throw std::invalid_argument("coeffexpr: unknown field " + it.key());
  if (n->kind == NodeKind::Leaf) {
    n->S = vec_from(o.at("S"), dim);
    n->phi = vec_from(o.at("phi"), dim);
    n->triple = o.contains("phi_prime");
    n->phi_prime = n->triple ? vec_from(o.at("phi_prime"), dim) : zero_vec(dim);
    if (o.contains("phi_sym")) n->phi_sym = syms_from(o.at("phi_sym"), dim);
    if (o.contains("prime_sym")) n->prime_sym = syms_from(o.at("prime_sym"), dim);
    if (o.contains("r_space")) n->r_space = space_from(o.at("r_space"), dim);
    n->r_name = o.value("r_name", "");
    if (o.contains("tags")) n->tags = o.at("tags").get<std::vector<std::string>>();
    n->display = o.value("display", "");
    return n;
  }
  if (n->kind == NodeKind::Combine) {
    for (const auto& t : o.at("terms")) n->children.push_back(node_from(t, dim));
    return n;
  }
  n->var = o.value("var", "");
  n->word = o.value("word", "");
  n->descriptor = o.value("descriptor", "");
  n->domain = o.value("domain", "");
  if (o.contains("space")) n->space = space_from(o.at("space"), dim);
  n->group = o.value("group", false);
  n->arg_left = o.value("arg_left", false);
  n->children.push_back(node_from(o.at("body"), dim));
  return n;
}

}  // namespace

std::string emit_json(const CoeffExpr& e, int indent) {
  json o{{"schema", "coeffexpr-1"},
         {"algebra", {{"type", e.type}, {"n", e.n}, {"dim", e.algebra().dim()}}},
         {"tree", node_json(e.root)}};
  return o.dump(indent) + "\n";
}

CoeffExpr parse_json(const std::string& text) {
  json o = json::parse(text);
  if (!o.is_object()) throw std::invalid_argument("coeffexpr: expected an object");
  for (const auto& [k, v] : o.items())
    if (k != "schema" && k != "algebra" && k != "tree") throw std::invalid_argument("coeffexpr: unknown field " + k);
  for (const auto& [k, v] : o.at("algebra").items())
    if (k != "type" && k != "n" && k != "dim") throw std::invalid_argument("coeffexpr: unknown algebra field " + k);
  if (o.value("schema", "") != "coeffexpr-1") throw std::invalid_argument("coeffexpr: bad schema tag");
  CoeffExpr e;
  e.type = o.at("algebra").at("type").get<std::string>();
  e.n = o.at("algebra").at("n").get<int>();
  int dim = o.at("algebra").at("dim").get<int>();
  e.root = node_from(o.at("tree"), dim);
  return e;
}

Expr normalize(const Expr& e) {
  if (e->kind == NodeKind::Leaf) return e;
  std::vector<Expr> kids;
  for (const auto& c : e->children) {
    Expr k = normalize(c);
    if (e->kind == NodeKind::Combine && k->kind == NodeKind::Combine)
      kids.insert(kids.end(), k->children.begin(), k->children.end());
    else
      kids.push_back(k);
  }
  if (e->kind == NodeKind::Combine) {
    if (kids.size() == 1) return kids[0];
    std::vector<std::pair<std::string, Expr>> keyed;
    for (auto& k : kids) keyed.emplace_back(node_json(k).dump(), k);
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    kids.clear();
    for (auto& [_, k] : keyed) kids.push_back(k);
  }
  return with(e, [&](Node& n) { n.children = kids; });
}

// --- LaTeX

std::string latex_rat(const Rat& r) {
  Rat q = r;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  std::string s = sgn(q) < 0 ? "-" : "";
  mpz_class num = abs(q.get_num());
  return s + "\\tfrac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
}

namespace {

std::string term(const Rat& c, const std::string& x, bool first) {
  std::string s;
  if (c == 1)
    s = first ? "" : "+";
  else if (c == -1)
    s = "-";
  else {
    std::string r = latex_rat(c);
    s = (first || r[0] == '-') ? r : "+" + r;
  }
  return s + x;
}

std::string render_elem(const LieAlgebra& g, const Elem& x) {
  if (is_zero(x)) return "0";
  std::string out;
  if (g.has_matrices()) {
    QMat m = g.matrix_of(x);
    bool diag = true;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (i != j && sgn(m.at(i, j))) diag = false;
    if (diag) {
      out = "\\operatorname{diag}(";
      for (int i = 0; i < m.rows(); ++i) out += (i ? "," : "") + latex_rat(m.at(i, i));
      return out + ")";
    }
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (sgn(m.at(i, j)))
          out += term(m.at(i, j), "e_{" + std::to_string(i + 1) + std::to_string(j + 1) + "}", out.empty());
    return out;
  }
  for (int j = 0; j < g.dim(); ++j)
    if (sgn(x[j])) out += term(x[j], "x_{" + g.labels()[j] + "}", out.empty());
  return out;
}

std::string render_covec(const LieAlgebra& g, const Covec& phi, const std::vector<SymTerm>& syms) {
  std::string out = is_zero(phi) ? "" : render_elem(g, g.elem_of(phi));
  for (const auto& s : syms) {
    std::string t = s.dir.empty() ? s.name : s.name + "\\," + render_elem(g, g.elem_of(s.dir));
    if (s.dir.size() && render_elem(g, g.elem_of(s.dir)).find_first_of("+-") != std::string::npos)
      t = s.name + "\\,(" + render_elem(g, g.elem_of(s.dir)) + ")";
    out += out.empty() ? t : "+" + t;
  }
  return out.empty() ? "0" : out;
}

std::string fill_display(std::string d) {
  for (size_t p; (p = d.find('$')) != std::string::npos;) d.erase(p, 1);
  return d;
}

std::string arg_text(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += w + " ";
  return s + "g";
}

std::string latex_node(const LieAlgebra& g, const Expr& e, std::vector<std::string> words, bool nested) {
  auto push = [&](const Node& n) {
    if (n.word.empty()) return;
    if (n.arg_left)
      words.insert(words.begin(), n.word);
    else
      words.push_back(n.word);
  };
  switch (e->kind) {
    case NodeKind::Leaf: {
      std::string head;
      if (!e->display.empty())
        head = fill_display(e->display);
      else {
        head = "\\mathcal{F}";
        if (e->r_space) head += "^{" + (e->r_name.empty() ? std::string("R") : e->r_name) + "}";
        head += "_{" + render_elem(g, e->S) + ",\\," + render_covec(g, e->phi, e->phi_sym);
        if (e->triple) head += ",\\," + render_covec(g, e->phi_prime, e->prime_sym);
        head += "}";
      }
      return head + "[\\eta](" + arg_text(words) + ")";
    }
    case NodeKind::Combine: {
      std::string s;
      for (size_t i = 0; i < e->children.size(); ++i)
        s += (i ? " + " : "") + latex_node(g, e->children[i], words, false);
      return nested && e->children.size() > 1 ? "\\Bigl(" + s + "\\Bigr)" : s;
    }
    case NodeKind::SumRational: {
      push(*e);
      std::string idx = e->var + "\\in " + e->descriptor;
      return "\\sum_{" + idx + "} " + latex_node(g, e->children[0], words, true);
    }
    case NodeKind::IntCompact:
    case NodeKind::IntAdelic: {
      push(*e);
      std::string idx = e->var + "\\in " + e->descriptor;
      return "\\int_{" + idx + "} " + latex_node(g, e->children[0], words, true);
    }
    case NodeKind::Translate:
      push(*e);
      return latex_node(g, e->children[0], words, nested);
  }
  return "";
}

}  // namespace

std::string emit_latex(const CoeffExpr& e) {
  return latex_node(e.algebra(), e.root, {}, false) + "\n";
}

// --- refinements

namespace {

const Node& expect_leaf(const Expr& e) {
  if (!e || e->kind != NodeKind::Leaf) throw std::invalid_argument("rewrite: expected a leaf");
  return *e;
}

WhittakerPair pair_of(const Node& n) { return {n.S, n.phi}; }

void check_r(const LieAlgebra& g, const Node& n, const Subspace& R, const Subspace& nsp) {
  if (!is_isotropic(g, n.phi, R)) throw NotIsotropic("omega_phi does not vanish on R x R");
  if (!R.contains(nsp)) throw MissingN("R does not contain n_{S,phi}");
}

}  // namespace

Expr refine(const LieAlgebra& g, const Expr& e) {
  const Node& n = expect_leaf(e);
  if (!n.r_space) throw std::invalid_argument("refine: leaf has no R");
  Subspace nsp = nilpotent_datum(g, pair_of(n));
  Subspace u = grading(g, n.S).ge(1);
  if (!u.contains(*n.r_space)) throw std::invalid_argument("refine: R is not inside u");
  check_r(g, n, *n.r_space, nsp);
  Expr plain = with(e, [](Node& x) {
    x.r_space.reset();
    x.r_name.clear();
  });
  if (*n.r_space == nsp) return plain;
  Quotient q = make_quotient(*n.r_space, nsp);
  return with(int_compact("u", "[R/N]", q.section(), plain), [&](Node& x) {
    x.note = "dim R/N = " + std::to_string(q.dim());
  });
}

Expr unrefine(const LieAlgebra& g, const Expr& e, const Subspace& R) {
  const Node& n = expect_leaf(e);
  Subspace nsp = nilpotent_datum(g, pair_of(n));
  Subspace u = grading(g, n.S).ge(1);
  if (!u.contains(R)) throw std::invalid_argument("unrefine: R is not inside u");
  check_r(g, n, R, nsp);
  Expr rl = with(e, [&](Node& x) {
    x.r_space = R;
    x.r_name = "R";
  });
  if (R == nsp) return with(rl, [](Node& x) {
    x.r_space.reset();
    x.r_name.clear();
  });
  // r^perp inside u for omega_phi
  QMat om = omega(g, n.phi);
  std::vector<Vec> rows;
  for (const auto& r : R.basis()) rows.push_back(om.apply(r));
  Subspace perp = intersect(u, nullspace(QMat::from_rows(rows.empty() ? std::vector<Vec>{zero_vec(g.dim())} : rows,
                                                         g.dim())));
  Quotient q = make_quotient(u, perp);
  if (q.dim() == 0) return rl;
  return with(sum_group("\\gamma", "\\exp(\\mathfrak{u}/\\mathfrak{r}^{\\perp})", rl), [&](Node& x) {
    x.space = q.section();
    x.note = "dim u/r^perp = " + std::to_string(q.dim());
  });
}

Expr root_exchange(const LieAlgebra& g, const Expr& e, const Subspace& R2) {
  const Node& n = expect_leaf(e);
  if (!n.r_space) throw std::invalid_argument("root_exchange: leaf has no R");
  const Subspace& R = *n.r_space;
  if (R.dim() != R2.dim()) throw DimMismatch("root_exchange: dim R != dim R'");
  if (!is_isotropic(g, n.phi, R) || !is_isotropic(g, n.phi, R2)) throw NotIsotropic("root_exchange");
  Subspace nsp = nilpotent_datum(g, pair_of(n));
  if (!R.contains(nsp) || !R2.contains(nsp)) throw MissingN("root_exchange");
  Expr out = with(e, [&](Node& x) {
    x.r_space = R2;
    x.r_name = "R'";
  });
  if (R == R2) return e;
  Quotient q = make_quotient(R, intersect(R, R2));
  return int_adelic("u", "R/(R\\cap R')", q.section(), out);
}

// --- conjugation

bool is_automorphism(const LieAlgebra& g, const QMat& A) {
  if (A.rows() != g.dim() || A.cols() != g.dim()) return false;
  const int n = g.dim();
  std::vector<Vec> img(n);
  for (int j = 0; j < n; ++j) img[j] = A.col(j);
  // all pairs on small algebras; a fixed sample otherwise
  const long total = static_cast<long>(n) * n;
  const long step = total <= 4096 ? 1 : total / 4096 + 1;
  for (long k = 0; k < total; k += step) {
    int i = static_cast<int>(k / n), j = static_cast<int>(k % n);
    Elem lhs = A.apply(g.bracket(g.basis(i), g.basis(j)));
    if (lhs != g.bracket(img[i], img[j])) return false;
  }
  return true;
}

QMat inner_automorphism(const LieAlgebra& g, const QMat& W) {
  if (!g.has_matrices()) throw NoMatrixRealization("inner_automorphism");
  const int m = g.matrix_size();
  // W^{-1} by solving W x = e_k
  QMat inv(m, m);
  for (int k = 0; k < m; ++k) {
    auto x = solve_affine(W, unit_vec(m, k));
    if (!x) throw NotAutomorphism("inner_automorphism: W is singular");
    for (int i = 0; i < m; ++i) inv.at(i, k) = (*x)[i];
  }
  std::vector<Vec> cols;
  for (int j = 0; j < g.dim(); ++j) cols.push_back(g.elem_from_matrix(W * g.matrix_of(g.basis(j)) * inv));
  return QMat::from_cols(cols, g.dim());
}

QMat weyl_automorphism(const LieAlgebra& g, const std::vector<int>& word) {
  QMat A = QMat::identity(g.dim());
  for (int i : word) A = A * weyl_rep(g, i);
  return A;
}

Expr conjugate_leaf(const LieAlgebra& g, const Expr& e, const QMat& A, const std::string& name) {
  expect_leaf(e);
  if (!is_automorphism(g, A)) throw NotAutomorphism("conjugate_leaf: bracket not preserved");
  if (A == QMat::identity(g.dim())) return e;
  QMat At = A.transpose();
  auto co = [&](const Covec& c) {
    auto x = solve_affine(At, c);
    if (!x) throw NotAutomorphism("conjugate_leaf: singular");
    return *x;
  };
  Expr moved = with(e, [&](Node& x) {
    x.S = A.apply(x.S);
    x.phi = co(x.phi);
    x.phi_prime = co(x.phi_prime);
    for (auto& s : x.phi_sym)
      if (!s.dir.empty()) s.dir = co(s.dir);
    for (auto& s : x.prime_sym)
      if (!s.dir.empty()) s.dir = co(s.dir);
    if (x.r_space) x.r_space = image(A, *x.r_space);
  });
  return translate(name, moved);
}

// --- hypothesis filters

namespace {

Covec eval_phi(const Node& n, const std::map<std::string, int>& env) {
  Covec phi = n.phi;
  for (const auto& s : n.phi_sym) {
    if (s.dir.empty()) continue;
    auto it = env.find(s.name);
    int v = it == env.end() ? 1 : it->second;
    if (v) axpy(phi, Rat(v), s.dir);
  }
  return phi;
}

int matrix_rank(const QMat& m) {
  std::vector<Vec> rows;
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return Subspace::span(m.cols(), rows).dim();
}

bool vanishes(const LieAlgebra& g, const std::string& tag, const Covec& phi) {
  Elem f = g.elem_of(phi);
  if (tag == "cuspidal") return is_k_distinguished(g, phi, Subspace::whole(g.dim())).verdict == Tri::No;
  if (tag == "non-generic") return centralizer(g, f).dim() == static_cast<int>(g.cartan_indices().size());
  if (tag == "minimal" || tag == "next-to-minimal") {
    if (!g.has_matrices()) throw NoMatrixRealization("rank filter needs a matrix build");
    return matrix_rank(g.matrix_of(f)) > (tag == "minimal" ? 1 : 2);
  }
  throw std::invalid_argument("unknown hypothesis tag: " + tag);
}

Expr drop_var(const Expr& e, const std::string& v) {
  if (e->kind == NodeKind::Leaf)
    return with(e, [&](Node& n) {
      std::erase_if(n.phi_sym, [&](const SymTerm& s) { return s.name == v; });
      std::erase_if(n.prime_sym, [&](const SymTerm& s) { return s.name == v; });
      for (size_t p; (p = n.display.find("$" + v)) != std::string::npos;) n.display.replace(p, v.size() + 1, "0");
    });
  std::vector<Expr> kids;
  for (const auto& c : e->children) kids.push_back(drop_var(c, v));
  return with(e, [&](Node& n) { n.children = kids; });
}

std::optional<Expr> filter_node(const LieAlgebra& g, const std::string& tag, const Expr& e,
                                std::map<std::string, int> env) {
  switch (e->kind) {
    case NodeKind::Leaf:
      if (vanishes(g, tag, eval_phi(*e, env))) return std::nullopt;
      return with(e, [&](Node& n) { n.tags.push_back(tag); });
    case NodeKind::Combine: {
      std::vector<Expr> kids;
      for (const auto& c : e->children)
        if (auto k = filter_node(g, tag, c, env)) kids.push_back(*k);
      if (kids.empty()) return std::nullopt;
      if (kids.size() == 1) return kids[0];
      return combine(kids);
    }
    default:
      break;
  }
  const Expr& body = e->children[0];
  if (e->domain.empty()) {
    auto b = filter_node(g, tag, body, env);
    if (!b) return std::nullopt;
    return with(e, [&](Node& n) { n.children = {*b}; });
  }
  // a scalar binder distributes over a formal sum
  if (body->kind == NodeKind::Combine) {
    // parts that keep the binder with the same domain are summed under one binder again
    std::vector<Expr> loose;
    std::map<std::string, std::vector<Expr>> bound;
    for (const auto& c : body->children) {
      auto r = filter_node(g, tag, with(e, [&](Node& n) { n.children = {c}; }), env);
      if (!r) continue;
      if ((*r)->kind == e->kind && (*r)->var == e->var && !(*r)->domain.empty())
        bound[(*r)->domain].push_back(*r);
      else
        loose.push_back(*r);
    }
    for (const auto& [dom, v] : bound) {
      std::vector<Expr> bodies;
      for (const auto& b : v) bodies.push_back(b->children[0]);
      loose.push_back(with(v[0], [&](Node& n) { n.children = {bodies.size() == 1 ? bodies[0] : combine(bodies)}; }));
    }
    if (loose.empty()) return std::nullopt;
    return loose.size() == 1 ? loose[0] : combine(loose);
  }
  std::optional<Expr> zero, unit;
  if (e->domain == "K") {
    env[e->var] = 0;
    zero = filter_node(g, tag, body, env);
  }
  env[e->var] = 1;
  unit = filter_node(g, tag, body, env);
  if (zero && unit) return with(e, [&](Node& n) { n.children = {*unit}; });
  if (unit)
    return with(e, [&](Node& n) {
      n.children = {*unit};
      n.domain = "K^x";
      n.descriptor = "\\mathbb{K}^{\\times}";
    });
  if (zero) return drop_var(*zero, e->var);
  return std::nullopt;
}

}  // namespace

CoeffExpr apply_filter(const CoeffExpr& e, const std::string& tag) {
  auto r = filter_node(e.algebra(), tag, e.root, {});
  CoeffExpr out = e;
  out.root = r ? normalize(*r) : combine({});
  return out;
}

}  // namespace wc
