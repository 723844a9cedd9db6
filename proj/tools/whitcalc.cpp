#include <cxxabi.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <typeinfo>

#include "CLI11.hpp"
#include "json.hpp"
#include "whitcalc/sweep.hpp"

using namespace wc;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- job

struct Job {
  std::string command;
  std::string algebra;
  std::string S, H, Z, phi, phi_prime;
  std::vector<std::string> ts;
  bool ws = false;
  std::string format;
  std::vector<std::string> filters;
  int n = 0;
  std::string type;
  SweepOptions sweep;
};

std::string strip(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<std::string> split(const std::string& s, char c) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, c)) out.push_back(strip(cur));
  return out;
}

Rat parse_rat(const std::string& s) {
  try {
    Rat r(strip(s));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: '" + s + "'");
  }
}

std::pair<std::string, int> parse_algebra(const std::string& a) {
  size_t k = a.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(a[k - 1]))) --k;
  if (k == 0 || k == a.size()) throw UsageError("algebra must look like sl4, sp4, gl3, so_split8, D4 or E8: '" + a + "'");
  std::string t = a.substr(0, k);
  if (t == "so") t = "so_split";
  return {t, std::stoi(a.substr(k))};
}

const LieAlgebra& algebra_of(const Job& j) {
  if (j.algebra.empty()) throw UsageError("--algebra is required");
  auto [t, n] = parse_algebra(j.algebra);
  return *algebra_from_descriptor(t, n);
}

std::string elem_str(const LieAlgebra& g, const Vec& v) {
  std::string s;
  for (int i = 0; i < g.dim(); ++i) {
    if (sgn(v[i]) == 0) continue;
    std::string c = to_string(v[i]);
    if (!s.empty() && c[0] != '-') s += "+";
    if (v[i] == 1)
      ;
    else if (v[i] == -1)
      s += "-";
    else
      s += c + "*";
    s += g.labels()[i];
  }
  return s.empty() ? "0" : s;
}

/// diag:a,b,..  roots:a,b,..  coweight:i  mat:r11,r12;r21,..  vec:..  labels:c*x,y,..  0
Elem parse_elem(const LieAlgebra& g, const std::string& spec) {
  std::string s = strip(spec);
  if (s == "0") return g.zero();
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("element spec needs a prefix (diag:, roots:, coweight:, mat:, vec:, labels:): '" + s + "'");
  std::string kind = s.substr(0, colon), body = s.substr(colon + 1);
  if (kind == "diag") {
    auto p = split(body, ',');
    if (!g.has_matrices() || static_cast<int>(p.size()) != g.matrix_size())
      throw UsageError("diag: needs " + std::to_string(g.matrix_size()) + " entries on a matrix build");
    QMat m(g.matrix_size(), g.matrix_size());
    for (int i = 0; i < g.matrix_size(); ++i) m.at(i, i) = parse_rat(p[i]);
    return g.elem_from_matrix(m);
  }
  if (kind == "roots") {
    std::vector<Rat> v;
    for (const auto& x : split(body, ',')) v.push_back(parse_rat(x));
    if (static_cast<int>(v.size()) != g.roots().rank()) throw UsageError("roots: needs one value per simple root");
    return g.cartan_with_values(v);
  }
  if (kind == "coweight") {
    int i = std::stoi(body);
    if (i < 1 || i > g.roots().rank()) throw UsageError("coweight: index out of range");
    return fundamental_coweight2(g, i - 1);
  }
  if (kind == "mat") {
    auto rows = split(body, ';');
    const int m = g.matrix_size();
    if (!g.has_matrices() || static_cast<int>(rows.size()) != m) throw UsageError("mat: needs " + std::to_string(m) + " rows");
    QMat M(m, m);
    for (int i = 0; i < m; ++i) {
      auto e = split(rows[i], ',');
      if (static_cast<int>(e.size()) != m) throw UsageError("mat: row length");
      for (int k = 0; k < m; ++k) M.at(i, k) = parse_rat(e[k]);
    }
    return g.elem_from_matrix(M);
  }
  if (kind == "vec") {
    auto p = split(body, ',');
    if (static_cast<int>(p.size()) != g.dim()) throw UsageError("vec: needs " + std::to_string(g.dim()) + " coordinates");
    Vec v;
    for (const auto& x : p) v.push_back(parse_rat(x));
    return v;
  }
  if (kind == "labels") {
    Elem v = g.zero();
    for (const auto& term : split(body, ',')) {
      Rat c = 1;
      std::string lab = term;
      auto star = term.find('*');
      if (star != std::string::npos) {
        c = parse_rat(term.substr(0, star));
        lab = strip(term.substr(star + 1));
      }
      auto find = [&](const std::string& x) {
        auto it = std::find(g.labels().begin(), g.labels().end(), x);
        return it == g.labels().end() ? -1 : static_cast<int>(it - g.labels().begin());
      };
      if (find(lab) < 0 && !lab.empty() && lab[0] == '-') {
        c = -c;
        lab = lab.substr(1);
      }
      int j = find(lab);
      if (j < 0) throw UsageError("unknown basis label '" + lab + "'");
      v[j] += c;
    }
    return v;
  }
  throw UsageError("unknown element spec prefix '" + kind + "'");
}

Covec parse_covec(const LieAlgebra& g, const std::string& spec) {
  if (spec.rfind("covec:", 0) == 0) return parse_elem(g, "vec:" + spec.substr(6));
  return g.covec_of(parse_elem(g, spec));
}

std::string need(const std::string& v, const char* what) {
  if (v.empty()) throw UsageError(std::string("--") + what + " is required");
  return v;
}

ojson rats(const std::vector<Rat>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson space(const LieAlgebra& g, const Subspace& s) {
  ojson b = ojson::array();
  for (const auto& v : s.basis()) b.push_back(elem_str(g, v));
  return {{"dim", s.dim()}, {"basis", b}};
}

ojson tree_json(const CoeffExpr& e) { return ojson::parse(emit_json(e)); }

// --- output

struct Out {
  std::string format;
  void emit(const ojson& j, const std::string& text) const {
    if (format == "text" && !text.empty())
      std::cout << text;
    else
      std::cout << j.dump(1) << "\n";
  }
};

std::string text_of(const ojson& j, const std::string& indent = "") {
  std::string s;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      s += indent + it.key() + ":\n" + text_of(*it, indent + "  ");
    } else if (it->is_array() && !it->empty() && (*it)[0].is_object()) {
      s += indent + it.key() + ":\n";
      for (const auto& x : *it) s += text_of(x, indent + "  ") + indent + "  --\n";
    } else {
      s += indent + it.key() + ": " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    }
  }
  return s;
}

// --- commands

int cmd_grade(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  Elem S = parse_elem(g, need(j.S, "S"));
  Grading gr = grading(g, S);
  ojson pieces = ojson::array();
  for (const auto& [l, p] : gr.pieces) {
    ojson x = space(g, p);
    x["eigenvalue"] = to_string(l);
    pieces.push_back(x);
  }
  ojson r{{"algebra", g.name()}, {"S", elem_str(g, S)}, {"pieces", pieces}};
  o.emit(r, text_of(r));
  return 0;
}

int cmd_pair_check(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  WhittakerPair p{parse_elem(g, need(j.S, "S")), parse_covec(g, need(j.phi, "phi"))};
  validate_pair(g, p);
  ojson r{{"algebra", g.name()}, {"S", elem_str(g, p.S)}, {"phi", elem_str(g, g.elem_of(p.phi))}, {"whittaker_pair", true}};
  if (!j.phi_prime.empty()) {
    WhittakerTriple t{p.S, p.phi, parse_covec(g, j.phi_prime)};
    try {
      validate_triple(g, t);
      r["triple"] = true;
    } catch (const std::invalid_argument& e) {
      r["triple"] = false;
      r["triple_error"] = e.what();
    }
  }
  r["n"] = space(g, nilpotent_datum(g, p));
  r["neutral"] = is_neutral(g, p);
  r["standard"] = is_standard(g, p);
  LeviReport lr = levi_distinguished_report(g, p);
  r["levi_distinguished"] = lr.ok;
  r["k_distinguished_in_levi"] = lr.distinguished;
  HZ hz = decompose_hZ(g, p);
  r["h"] = elem_str(g, hz.h);
  r["Z"] = elem_str(g, hz.Z);
  r["index"] = index_in(g, p.S, p.phi);
  r["orbit"] = orbit_label(g, g.elem_of(p.phi)).str();
  PLResult pl = is_PL(g, p.phi);
  r["pl"] = pl.status == PLResult::Yes ? "yes" : pl.status == PLResult::No ? "no" : "exhausted";
  o.emit(r, text_of(r));
  return 0;
}

int cmd_dominates(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  Covec phi = parse_covec(g, need(j.phi, "phi"));
  WhittakerPair a{parse_elem(g, need(j.H, "H")), phi}, b{parse_elem(g, need(j.S, "S")), phi};
  bool d = dominates(g, a, b);
  ojson r{{"dominates", d},
          {"dim_n_H", nilpotent_datum(g, a).dim()},
          {"dim_n_S", nilpotent_datum(g, b).dim()}};
  o.emit(r, text_of(r));
  return 0;
}

int cmd_deform(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  Deformation d(g, parse_elem(g, need(j.H, "H")), parse_elem(g, need(j.Z, "Z")), parse_covec(g, need(j.phi, "phi")));
  auto crit = critical_values(d), quasi = quasi_critical_values(d);
  std::set<Rat> at(crit.begin(), crit.end());
  for (const auto& t : j.ts) at.insert(parse_rat(t));
  ojson snaps = ojson::array();
  for (const Rat& t : at) {
    Snapshot s = snapshot(d, t);
    snaps.push_back({{"t", to_string(t)},
                     {"H_t", elem_str(g, d.at(t))},
                     {"u", space(g, s.u)},
                     {"v", space(g, s.v)},
                     {"w", space(g, s.w)},
                     {"n", space(g, s.n)},
                     {"l", space(g, s.l)},
                     {"r", space(g, s.r)}});
  }
  ojson r{{"critical", rats(crit)}, {"quasi_critical", rats(quasi)}, {"snapshots", snaps}};
  o.emit(r, text_of(r));
  return 0;
}

CoeffExpr wrap(const LieAlgebra& g, const Job& j, Expr e) {
  auto [t, n] = parse_algebra(j.algebra);
  (void)g;
  return CoeffExpr{t, n, normalize(e)};
}

int cmd_reduce(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  WhittakerTriple t{parse_elem(g, need(j.S, "S")), parse_covec(g, need(j.phi, "phi")),
                    j.phi_prime.empty() ? g.zero() : parse_covec(g, j.phi_prime)};
  Reduction red = reduce_to_levi_distinguished(g, t);
  if (!red.certificate.valid()) throw CertificateViolation("reduce: certificate is not lexicographically strict");
  for (const auto& l : leaves(red.tree))
    if (!is_levi_distinguished(g, {l->S, l->phi})) throw InternalFailure("reduce: output leaf is not Levi-distinguished");
  CoeffExpr e = wrap(g, j, red.tree);
  if (o.format == "latex") {
    std::cout << emit_latex(e);
    return 0;
  }
  ojson cert = ojson::array();
  for (const auto& s : red.certificate.steps)
    cert.push_back({{"t", to_string(s.t)},
                    {"rule", s.rule},
                    {"before", s.before.str()},
                    {"after", s.after.str()},
                    {"index_before", s.index_before},
                    {"index_after", s.index_after},
                    {"branch", s.branch}});
  ojson r{{"leaves", leaves(red.tree).size()}, {"certificate", cert}, {"tree", tree_json(e)}};
  o.emit(r, "");
  return 0;
}

int cmd_thmb(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  Covec phi = parse_covec(g, need(j.phi, "phi"));
  ThmB b = theorem_b_transform(g, {parse_elem(g, need(j.H, "H")), phi}, {parse_elem(g, need(j.S, "S")), phi}, j.ws);
  CoeffExpr e = wrap(g, j, b.tree);
  if (o.format == "latex") {
    std::cout << emit_latex(e);
    return 0;
  }
  ojson dropped = ojson::array();
  for (const auto& [t, s] : b.dropped) dropped.push_back({{"t", to_string(t)}, {"space", space(g, s)}});
  ojson r{{"part1", b.part1},
          {"v", space(g, b.v)},
          {"u_dim", b.u.dim()},
          {"w_dim", b.w.dim()},
          {"dropped", dropped},
          {"tree", tree_json(e)}};
  o.emit(r, "");
  return 0;
}

int cmd_heisenberg(const Job& j, const Out& o) {
  auto [t, n] = parse_algebra(need(j.type, "type"));
  const LieAlgebra& g = *algebra_from_descriptor(t, n);
  auto a = heisenberg_root(g);
  if (!a) {
    ojson r{{"type", g.roots().name()}, {"root", nullptr}};
    o.emit(r, g.roots().name() + ": no Heisenberg root\n");
    return 0;
  }
  CoeffExpr e{t, n, normalize(heisenberg_expansion(g))};
  if (o.format == "latex") {
    std::cout << emit_latex(e);
    return 0;
  }
  HeisenbergData d = heisenberg_data(g);
  ojson r{{"type", g.roots().name()},
          {"root", *a + 1},
          {"label", "alpha_" + std::to_string(*a + 1)},
          {"psi", d.Psi.size()},
          {"omega", d.Omega.size()},
          {"tree", tree_json(e)}};
  o.emit(r, "");
  return 0;
}

CoeffExpr filtered(CoeffExpr e, const std::vector<std::string>& filters) {
  for (const auto& f : filters) e = apply_filter(e, f);
  e.root = normalize(e.root);
  return e;
}

int emit_tree(const CoeffExpr& e, const Out& o) {
  std::cout << (o.format == "latex" ? emit_latex(e) : emit_json(e));
  return 0;
}

int cmd_gln(const Job& j, const Out& o) {
  if (j.n < 2) throw UsageError("--n must be at least 2");
  return emit_tree(filtered(gln_expansion(j.n), j.filters), o);
}

int cmd_sp4(const Job& j, const Out& o) { return emit_tree(filtered(sp4_expansion(), j.filters), o); }

int cmd_orbit(const Job& j, const Out& o) {
  const LieAlgebra& g = algebra_of(j);
  Covec phi = parse_covec(g, need(j.phi, "phi"));
  Elem f = g.elem_of(phi);
  OrbitLabel l = orbit_label(g, f);
  ojson r{{"label", l.str()}, {"partition", l.partition}};
  PLResult pl = is_PL(g, phi);
  r["pl"] = pl.status == PLResult::Yes ? "yes" : pl.status == PLResult::No ? "no" : "exhausted";
  r["k_distinguished"] = tri_name(is_k_distinguished(g, phi, Subspace::whole(g.dim())).verdict);
  if (!j.Z.empty()) {
    Elem Z = parse_elem(g, j.Z);
    Covec pp = j.phi_prime.empty() ? g.zero() : parse_covec(g, j.phi_prime);
    OrderWitness w{Z, phi, pp};
    r["perturbed_label"] = orbit_label(g, f + g.elem_of(pp)).str();
    r["order_related"] = order_related(g, l, w);
    auto tr = solve_transport(g, phi, pp, Z);
    r["transport"] = tr ? ojson(elem_str(g, tr->X)) : ojson(nullptr);
  }
  o.emit(r, text_of(r));
  return 0;
}

int cmd_verify(const Job& j, const Out& o) {
  std::vector<SweepReport> reps = verify_lemmas(j.sweep);
  size_t fails = 0;
  std::string text;
  ojson suites = ojson::array();
  for (const auto& r : reps) {
    fails += r.failures.size();
    text += r.text();
    ojson fl = ojson::array();
    for (const auto& f : r.failures) fl.push_back({{"algebra", f.algebra}, {"sample", f.sample}, {"detail", f.detail}});
    suites.push_back({{"suite", r.suite}, {"checks", r.checks}, {"counters", r.counters}, {"failures", fl}});
  }
  text += "failures: " + std::to_string(fails) + "\n";
  ojson r{{"seed", j.sweep.seed}, {"samples", j.sweep.samples}, {"max_rank", j.sweep.max_rank}, {"suites", suites},
          {"failures", fails}};
  Out t = o;
  if (t.format.empty()) t.format = "text";
  t.emit(r, text);
  return fails ? 3 : 0;
}

// --- config

void load_config(const std::string& path, Job& j, const std::set<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  ojson c;
  try {
    c = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!c.is_object()) throw UsageError("config: top level must be an object");
  auto str = [&](const char* k, std::string& dst) {
    if (!c.contains(k) || given.count(k)) return;
    if (!c[k].is_string()) throw UsageError(std::string("config: ") + k + " must be a string");
    dst = c[k].get<std::string>();
  };
  static const std::set<std::string> known{"command", "algebra", "S",       "H",    "Z",     "phi",   "phi_prime",
                                           "t",       "ws",      "format",  "filters", "n", "type", "sweep"};
  for (auto it = c.begin(); it != c.end(); ++it)
    if (!known.count(it.key())) throw UsageError("config: unknown field '" + it.key() + "'");
  str("command", j.command);
  str("algebra", j.algebra);
  str("S", j.S);
  str("H", j.H);
  str("Z", j.Z);
  str("phi", j.phi);
  str("phi_prime", j.phi_prime);
  str("format", j.format);
  str("type", j.type);
  try {
    if (c.contains("t") && !given.count("t")) j.ts = c["t"].get<std::vector<std::string>>();
    if (c.contains("filters") && !given.count("filters")) j.filters = c["filters"].get<std::vector<std::string>>();
    if (c.contains("ws") && !given.count("ws")) j.ws = c["ws"].get<bool>();
    if (c.contains("n") && !given.count("n")) j.n = c["n"].get<int>();
    if (c.contains("sweep")) {
      const ojson& s = c["sweep"];
      if (!s.is_object()) throw UsageError("config: sweep must be an object");
      static const std::set<std::string> sk{"seed", "samples", "max_rank", "chains", "index_trials", "transport_instances"};
      for (auto it = s.begin(); it != s.end(); ++it)
        if (!sk.count(it.key())) throw UsageError("config: unknown sweep field '" + it.key() + "'");
      auto num = [&](const char* k, const char* flag, auto& dst) {
        if (s.contains(k) && !given.count(flag)) dst = s[k].get<std::remove_reference_t<decltype(dst)>>();
      };
      num("seed", "seed", j.sweep.seed);
      num("samples", "samples", j.sweep.samples);
      num("max_rank", "max-rank", j.sweep.max_rank);
      num("chains", "chains", j.sweep.chains);
      num("index_trials", "index-trials", j.sweep.index_trials);
      num("transport_instances", "transport-instances", j.sweep.transport_instances);
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

std::string demangle(const char* n) {
  int st = 0;
  char* d = abi::__cxa_demangle(n, nullptr, nullptr, &st);
  std::string s = st == 0 && d ? d : n;
  std::free(d);
  return s;
}

int report(bool json_errors, int code, const std::string& cls, const std::string& type, const std::string& msg) {
  if (json_errors)
    std::cerr << ojson{{"error", {{"class", cls}, {"type", type}, {"message", msg}, {"exit", code}}}}.dump() << "\n";
  else
    std::cerr << "whitcalc: " << cls << " error (" << type << "): " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whittaker pair calculator"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Job j;
  std::string config;
  bool json_errors = false;
  app.add_option("--config", config, "JSON job file; flags override its values");
  app.add_flag("--json-errors", json_errors, "print errors as JSON on stderr");
  app.add_option("--format", j.format, "json, latex or text")->check(CLI::IsMember({"json", "latex", "text"}));

  std::map<std::string, std::vector<CLI::Option*>> opts;
  auto alg = [&](CLI::App* s) { opts["algebra"].push_back(s->add_option("--algebra,-g", j.algebra, "sl4, sp4, gl3, so_split8, D4, E8 ...")); };
  auto elem = [&](CLI::App* s, const char* name, std::string& dst, const char* help) {
    std::string flag = name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    opts[name].push_back(s->add_option("--" + flag, dst, help));
  };
  const char* espec = "element: diag:, roots:, coweight:, mat:, vec:, labels:";
  const char* cspec = "covector, given by its element under the form (same syntax), or covec:";

  auto* grade = app.add_subcommand("grade", "eigenspaces of ad(S)");
  alg(grade);
  elem(grade, "S", j.S, espec);
  auto* pc = app.add_subcommand("pair-check", "all predicates on a pair");
  alg(pc);
  elem(pc, "S", j.S, espec);
  elem(pc, "phi", j.phi, cspec);
  elem(pc, "phi_prime", j.phi_prime, cspec);
  auto* dom = app.add_subcommand("dominates", "does (H, phi) dominate (S, phi)");
  alg(dom);
  elem(dom, "H", j.H, espec);
  elem(dom, "S", j.S, espec);
  elem(dom, "phi", j.phi, cspec);
  auto* def = app.add_subcommand("deform", "critical values and snapshots of H + tZ");
  alg(def);
  elem(def, "H", j.H, espec);
  elem(def, "Z", j.Z, espec);
  elem(def, "phi", j.phi, cspec);
  opts["t"].push_back(def->add_option("--t", j.ts, "extra parameters to snapshot"));
  auto* red = app.add_subcommand("reduce", "reduction to Levi-distinguished coefficients");
  alg(red);
  elem(red, "S", j.S, espec);
  elem(red, "phi", j.phi, cspec);
  elem(red, "phi_prime", j.phi_prime, cspec);
  auto* thb = app.add_subcommand("thmB", "transform from (S, phi) to a dominating (H, phi)");
  alg(thb);
  elem(thb, "H", j.H, espec);
  elem(thb, "S", j.S, espec);
  elem(thb, "phi", j.phi, cspec);
  opts["ws"].push_back(thb->add_flag("--ws", j.ws, "declare the orbit of phi maximal in the Whittaker support"));
  auto* heis = app.add_subcommand("heisenberg", "Heisenberg root and expansion");
  opts["type"].push_back(heis->add_option("--type", j.type, "Cartan type, e.g. E8"));
  auto* gln = app.add_subcommand("gln", "GL_n expansion");
  opts["n"].push_back(gln->add_option("--n", j.n, "matrix size"));
  auto* sp4 = app.add_subcommand("sp4", "Sp_4 expansion");
  for (auto* s : {gln, sp4})
    opts["filters"].push_back(s->add_option("--filter", j.filters, "cuspidal, minimal, next-to-minimal, non-generic")
                          ->check(CLI::IsMember({"cuspidal", "minimal", "next-to-minimal", "non-generic"})));
  auto* orb = app.add_subcommand("orbit", "orbit label, PL status, order witness and transport");
  alg(orb);
  elem(orb, "phi", j.phi, cspec);
  elem(orb, "Z", j.Z, espec);
  elem(orb, "phi_prime", j.phi_prime, cspec);
  auto* ver = app.add_subcommand("verify-lemmas", "seeded property sweep");
  opts["seed"].push_back(ver->add_option("--seed", j.sweep.seed));
  opts["samples"].push_back(ver->add_option("--samples", j.sweep.samples, "samples per algebra"));
  opts["max-rank"].push_back(ver->add_option("--max-rank", j.sweep.max_rank));
  opts["chains"].push_back(ver->add_option("--chains", j.sweep.chains, "dominating chains per algebra"));
  opts["index-trials"].push_back(ver->add_option("--index-trials", j.sweep.index_trials));
  opts["transport-instances"].push_back(ver->add_option("--transport-instances", j.sweep.transport_instances));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(json_errors, 2, "usage", "ParseError", e.what());
  }

  try {
    CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (!config.empty()) {
      std::set<std::string> given;
      for (const auto& [k, ops] : opts)
        for (auto* op : ops)
          if (op->count()) given.insert(k);
      std::string fmt = j.format;
      load_config(config, j, given);
      if (!fmt.empty()) j.format = fmt;
    }
    std::string cmd = sub ? sub->get_name() : j.command;
    if (sub && !j.command.empty() && j.command != cmd)
      throw UsageError("config command '" + j.command + "' does not match '" + cmd + "'");
    if (cmd.empty()) throw UsageError("no command given");
    if (!j.format.empty() && j.format != "json" && j.format != "latex" && j.format != "text")
      throw UsageError("unknown format " + j.format);
    Out o{j.format};
    if (cmd == "grade") return cmd_grade(j, o);
    if (cmd == "pair-check") return cmd_pair_check(j, o);
    if (cmd == "dominates") return cmd_dominates(j, o);
    if (cmd == "deform") return cmd_deform(j, o);
    if (cmd == "reduce") return cmd_reduce(j, o);
    if (cmd == "thmB") return cmd_thmb(j, o);
    if (cmd == "heisenberg") return cmd_heisenberg(j, o);
    if (cmd == "gln") return cmd_gln(j, o);
    if (cmd == "sp4") return cmd_sp4(j, o);
    if (cmd == "orbit") return cmd_orbit(j, o);
    if (cmd == "verify-lemmas") return cmd_verify(j, o);
    throw UsageError("unknown command " + cmd);
  } catch (const UsageError& e) {
    return report(json_errors, 2, "usage", "UsageError", e.what());
  } catch (const InternalFailure& e) {
    return report(json_errors, 3, "internal", demangle(typeid(e).name()), e.what());
  } catch (const std::invalid_argument& e) {
    return report(json_errors, 1, "domain", demangle(typeid(e).name()), e.what());
  } catch (const std::domain_error& e) {
    return report(json_errors, 1, "domain", demangle(typeid(e).name()), e.what());
  } catch (const std::exception& e) {
    return report(json_errors, 3, "internal", demangle(typeid(e).name()), e.what());
  }
}
