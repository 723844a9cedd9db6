// One line per acceptance criterion: "criterion N PASS|FAIL  summary  (seconds / budget)".
// --only N runs a single criterion. --known-deviation N marks a criterion whose failure is
// recorded and expected; the exit status is 0 when every other criterion passes and every
// known deviation still fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "whitcalc/sweep.hpp"

using namespace wc;

namespace {

struct Result {
  bool ok = false;
  std::string summary;
};

QMat unit(int n, int i, int j) {
  QMat m(n, n);
  m.at(i - 1, j - 1) = 1;
  return m;
}

QMat diag(const std::vector<Rat>& d) {
  QMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(WC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  int st = pclose(p);
  return {WEXITSTATUS(st), out};
}

std::string golden(const std::string& f) { return slurp(std::string(WC_GOLDEN_DIR) + "/" + f); }

// --- 1
Result sl4_example() {
  const LieAlgebra& g = *algebra_from_descriptor("sl", 4);
  std::vector<Rat> s{1, qr(1, 3), qr(-1, 3), -1};
  Elem S = g.elem_from_matrix(diag(s));
  // the displayed matrix, entry (i,j) = eigenvalue of e_ij
  const Rat M[4][4] = {{0, qr(2, 3), qr(4, 3), 2},
                       {qr(-2, 3), 0, qr(2, 3), qr(4, 3)},
                       {qr(-4, 3), qr(-2, 3), 0, qr(2, 3)},
                       {-2, qr(-4, 3), qr(-2, 3), 0}};
  QMat ad = g.ad(S);
  bool mat = true;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      Elem e = g.elem_from_matrix(unit(4, i, j));
      mat = mat && ad.apply(e) == M[i - 1][j - 1] * e;
    }
  const Subspace cartan = g.cartan();
  for (const auto& h : cartan.basis()) mat = mat && is_zero(ad.apply(h)) && M[0][0] == 0;
  Covec phi = g.covec_of(g.elem_from_matrix(unit(4, 4, 1)));
  Subspace n = nilpotent_datum(g, {S, phi});
  Subspace expect = Subspace::span(g.dim(), {g.elem_from_matrix(unit(4, 1, 3)), g.elem_from_matrix(unit(4, 2, 4)),
                                             g.elem_from_matrix(unit(4, 1, 4))});
  bool triple = true;
  for (auto [m, k] : std::vector<std::pair<Rat, Rat>>{{1, 0}, {0, 1}, {2, -3}, {qr(1, 2), 5}}) {
    QMat a = unit(4, 3, 1), b = unit(4, 4, 2);
    a.at(2, 0) = m;
    b.at(3, 1) = k;
    Covec psi = g.covec_of(g.elem_from_matrix(a + b));
    try {
      validate_triple(g, {S, phi, psi});
    } catch (const std::exception&) {
      triple = false;
    }
    triple = triple && covec_eigenvalue(g, S, psi) == Rat(qr(-4, 3));
  }
  bool ok = mat && n == expect && triple;
  return {ok, std::string("eigenvalue matrix ") + (mat ? "ok" : "MISMATCH") + ", n=span{e13,e24,e14} " +
                  (n == expect ? "ok" : "MISMATCH") + ", psi triple at -4/3 " + (triple ? "ok" : "MISMATCH")};
}

// --- 2
Result heisenberg_roots() {
  std::string bad;
  for (int n = 2; n <= 7; ++n)
    if (heisenberg_root(*algebra_from_descriptor("A", n))) bad += " A" + std::to_string(n);
  const std::vector<std::tuple<char, int, int>> want{{'D', 4, 2}, {'D', 5, 2}, {'D', 6, 2}, {'E', 6, 2}, {'E', 7, 1}, {'E', 8, 8}};
  for (auto [t, n, a] : want) {
    auto r = heisenberg_root(*algebra_from_descriptor(std::string(1, t), n));
    if (!r || *r + 1 != a) bad += " " + std::string(1, t) + std::to_string(n);
  }
  return {bad.empty(), bad.empty() ? "A2..A7 none; D4,D5,D6,E6 alpha_2; E7 alpha_1; E8 alpha_8" : "mismatch:" + bad};
}

// --- 3
Result heisenberg_deformation() {
  std::string out;
  bool ok = true;
  for (auto [t, n] : std::vector<std::pair<std::string, int>>{{"D", 4}, {"E", 6}}) {
    const LieAlgebra& g = *algebra_from_descriptor(t, n);
    HeisenbergData d = heisenberg_data(g);
    Covec phi = g.covec_of(g.root_vector(g.roots().neg(g.roots().simple(d.alpha))));
    Deformation def(g, d.h, d.S - d.h, phi);
    std::vector<Rat> crit, extra;
    for (const Rat& x : critical_values(def))
      if (sgn(x) > 0 && x <= 1) crit.push_back(x);
    for (const Rat& x : quasi_critical_values(def))
      if (sgn(x) > 0 && x <= 1 && std::find(crit.begin(), crit.end(), x) == crit.end()) extra.push_back(x);
    bool here = crit == std::vector<Rat>{qr(1, 2), qr(2, 3)} && extra == std::vector<Rat>{qr(1, 3), 1};
    ok = ok && here;
    out += t + std::to_string(n) + (here ? " ok " : " MISMATCH ");
  }
  return {ok, out + "(critical {1/2,2/3}, further quasi-critical {1/3,1})"};
}

std::string first_failures(const SweepReport& r) {
  std::string s;
  for (size_t i = 0; i < r.failures.size() && i < 3; ++i)
    s += "; " + r.failures[i].algebra + "#" + std::to_string(r.failures[i].sample) + " " + r.failures[i].detail;
  return s;
}

Result from_sweep(const SweepReport& r, const std::string& what) {
  std::string s = what + ": " + std::to_string(r.total_checks()) + " checks, " + std::to_string(r.failures.size()) +
                  " failures";
  for (const auto& [k, v] : r.counters) s += ", " + k + "=" + std::to_string(v);
  return {r.ok(), s + first_failures(r)};
}

// --- 4, 5, 9, 10
Result lemma_suites() {
  SweepOptions o;
  return from_sweep(sweep_lemmas(o), "100 samples x {sl2,sl3,sl4,sp4,so44,D4}");
}
Result domination() {
  SweepOptions o;
  return from_sweep(sweep_domination(o), "20 chains x 6 algebras");
}
Result index_invariance() {
  SweepOptions o;
  return from_sweep(sweep_index(o), "50 recombinations per pair");
}
Result transport() {
  SweepOptions o;
  return from_sweep(sweep_transport(o), "200 instances, rank <= 3");
}

// --- 6
Result theorem_a() {
  struct Job {
    std::string name, type;
    int n;
    std::function<WhittakerTriple(const LieAlgebra&)> make;
  };
  auto zero = [](const LieAlgebra& g) { return WhittakerTriple{g.zero(), g.zero(), g.zero()}; };
  std::vector<Job> jobs{{"gl3 (0,0,0)", "gl", 3, zero}, {"gl4 (0,0,0)", "gl", 4, zero}, {"sp4 (0,0,0)", "sp", 4, zero}};
  jobs.push_back({"sl4 triple", "sl", 4, [](const LieAlgebra& g) {
                    return WhittakerTriple{g.elem_from_matrix(diag({1, qr(1, 3), qr(-1, 3), -1})),
                                           g.covec_of(g.elem_from_matrix(unit(4, 4, 1))),
                                           g.covec_of(g.elem_from_matrix(unit(4, 3, 1) + unit(4, 4, 2)))};
                  }});
  auto heis = [](int which) {
    return [which](const LieAlgebra& g) {
      HeisenbergData d = heisenberg_data(g);
      Covec phi = g.covec_of(g.root_vector(g.roots().neg(g.roots().simple(d.alpha))));
      Covec psi = g.covec_of(g.root_vector(g.roots().neg(d.Psi.front())));
      Covec c = which == 0 ? g.zero() : which == 1 ? phi : phi + psi;
      return WhittakerTriple{d.S, c, g.zero()};
    };
  };
  jobs.push_back({"D4 (S_a,0)", "D", 4, heis(0)});
  jobs.push_back({"D4 (S_a,phi)", "D", 4, heis(1)});
  jobs.push_back({"D4 (S_a,phi+psi)", "D", 4, heis(2)});
  std::string bad;
  size_t leaves_total = 0;
  for (const auto& j : jobs) {
    const LieAlgebra& g = *algebra_from_descriptor(j.type, j.n);
    try {
      Reduction r = reduce_to_levi_distinguished(g, j.make(g));
      bool ok = r.certificate.valid();
      for (const auto& l : leaves(r.tree)) {
        ok = ok && is_levi_distinguished(g, {l->S, l->phi});
        ++leaves_total;
      }
      if (!ok) bad += " " + j.name;
    } catch (const std::exception& e) {
      bad += " " + j.name + " (" + e.what() + ")";
    }
  }
  return {bad.empty(), std::to_string(jobs.size()) + " inputs, " + std::to_string(leaves_total) +
                           " leaves, certificates valid and leaves Levi-distinguished" +
                           (bad.empty() ? "" : "; failed:" + bad)};
}

// --- 7
Result gln_shape() {
  std::string bad;
  for (int n : {3, 4}) {
    for (std::string f : {"", "cuspidal", "minimal", "next-to-minimal"}) {
      std::string file = "gln" + std::to_string(n) + (f.empty() ? "" : "_" + f) + ".json";
      auto [st, out] = run_cli("gln --n " + std::to_string(n) + (f.empty() ? "" : " --filter " + f));
      if (st != 0 || out != golden(file)) {
        bad += " " + file + "(golden)";
        continue;
      }
      // leaves against the subset description
      CoeffExpr e = parse_json(out);
      const LieAlgebra& g = e.algebra();
      std::multiset<Covec> got, want;
      for (const auto& l : leaves(e.root)) got.insert(l->phi);
      for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        int size = __builtin_popcount(mask);
        if (f == "cuspidal" && size != n - 1) continue;
        if (f == "minimal" && size > 1) continue;
        if (f == "next-to-minimal" && size > 2) continue;
        QMat m(n, n);
        for (int i = 1; i < n; ++i)
          if (mask >> (i - 1) & 1) m = m + unit(n, i + 1, i);
        want.insert(g.covec_of(g.elem_from_matrix(m)));
      }
      if (got != want) bad += " " + file + "(shape)";
    }
  }
  return {bad.empty(), bad.empty() ? "gln --n 3,4 and cuspidal/minimal/next-to-minimal match goldens and subset shape"
                                   : "mismatch:" + bad};
}

// --- 8
void paths(const Expr& e, std::vector<std::string>& up, std::map<std::string, std::vector<std::string>>& out) {
  if (e->kind == NodeKind::Leaf) {
    out[e->display] = up;
    return;
  }
  up.push_back(kind_str(e->kind) + ":" + (e->word.empty() ? e->descriptor : e->word));
  for (const auto& c : e->children) paths(c, up, out);
  up.pop_back();
}

Result sp4_families() {
  std::string bad;
  const std::vector<std::pair<std::string, std::string>> runs{{"", "sp4.json"},
                                                              {"--filter cuspidal", "sp4_cuspidal.json"},
                                                              {"--filter non-generic", "sp4_non-generic.json"},
                                                              {"--filter cuspidal --filter non-generic", "sp4_cuspidal_non-generic.json"},
                                                              {"--format latex", "sp4.tex"}};
  for (const auto& [args, file] : runs) {
    auto [st, out] = run_cli("sp4 " + args);
    if (st != 0 || out != golden(file)) bad += " " + file;
  }
  auto [st, out] = run_cli("sp4");
  std::map<std::string, std::vector<std::string>> where;
  if (st == 0) {
    std::vector<std::string> up;
    paths(parse_json(out).root, up, where);
  }
  auto has = [&](const std::string& leaf, const std::string& anc) {
    auto it = where.find(leaf);
    if (it == where.end()) return false;
    for (const auto& a : it->second)
      if (a.find(anc) != std::string::npos) return true;
    return anc.empty();
  };
  bool fam = where.size() == 4 && has("\\mathcal{F}_{\\mathfrak{u},\\varphi}", "SumRational") &&
             has("\\mathcal{W}_{1,$a}", "IntAdelic:v_x") && has("\\mathcal{W}_{1,$a}", "Translate:w") &&
             has("\\mathcal{W}_{$a,1}", "SumRational:\\gamma") && has("\\mathcal{W}_{$a,0}", "SumRational:\\mathbb{K}");
  if (!fam) bad += " families";
  return {bad.empty(), bad.empty() ? "four leaf families; sp4, cuspidal, non-generic, cuspidal+non-generic and LaTeX match goldens"
                                   : "mismatch:" + bad};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = std::stoi(argv[++i]);
    else if (a == "--known-deviation" && i + 1 < argc) known.insert(std::stoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--only N] [--known-deviation N]...\n";
      return 2;
    }
  }
  struct Crit {
    int id;
    double budget;
    std::function<Result()> run;
  };
  const std::vector<Crit> all{{1, 1, sl4_example},     {2, 60, heisenberg_roots}, {3, 5, heisenberg_deformation},
                              {4, 300, lemma_suites},  {5, 60, domination},       {6, 120, theorem_a},
                              {7, 10, gln_shape},      {8, 10, sp4_families},     {9, 60, index_invariance},
                              {10, 120, transport}};
  int status = 0;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.budget;
    bool pass = r.ok && in_time;
    char tbuf[64];
    std::snprintf(tbuf, sizeof tbuf, "%.1fs / %.0fs", secs, c.budget);
    std::string tag = pass ? "PASS" : "FAIL";
    if (!pass && known.count(c.id)) tag += " (known deviation)";
    std::cout << "criterion " << c.id << " " << tag << "  " << r.summary << (in_time ? "" : "  [over budget]") << "  ("
              << tbuf << ")\n"
              << std::flush;
    if (pass == static_cast<bool>(known.count(c.id))) status = 1;
  }
  return status;
}
