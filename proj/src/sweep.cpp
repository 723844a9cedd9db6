#include "whitcalc/sweep.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace wc {

namespace {

struct Rng {
  std::mt19937 m;
  explicit Rng(unsigned s) : m(s) {}
  int uni(int lo, int hi) { return lo + static_cast<int>(m() % static_cast<unsigned>(hi - lo + 1)); }
  bool coin() { return m() & 1u; }
  int sign() { return coin() ? 1 : -1; }
};

Elem random_cartan(const LieAlgebra& g, Rng& r, int lo, int hi, int den) {
  std::vector<Rat> v;
  for (int i = 0; i < g.roots().rank(); ++i) v.push_back(qr(r.uni(lo, hi), den));
  return g.cartan_with_values(v);
}

template <class P>
Covec random_root_covec(const LieAlgebra& g, Rng& r, P pred) {
  Covec phi = g.zero();
  for (int k = 0; k < g.roots().num_roots(); ++k)
    if (pred(k) && r.coin()) axpy(phi, Rat(r.sign() * r.uni(1, 2)), g.covec_of(g.root_vector(k)));
  return phi;
}

Vec random_in(const Subspace& s, Rng& r, int amp) {
  Vec x = zero_vec(s.ambient());
  for (const auto& b : s.basis()) axpy(x, Rat(r.uni(-amp, amp)), b);
  return x;
}

// nilpotent element of the positive Borel part
Elem random_upper(const LieAlgebra& g, Rng& r) {
  Elem X = g.zero();
  for (int k = 0; k < g.roots().num_positive(); ++k) axpy(X, Rat(r.uni(-1, 1)), g.root_vector(k));
  return X;
}

Covec move_covec(const LieAlgebra& g, const QMat& A, const Covec& phi) { return g.covec_of(A.apply(g.elem_of(phi))); }

struct Sample {
  Elem H, Z;
  Covec phi;
  bool conjugated = false;
  bool neutral_start = false;
};

Sample make_sample(const LieAlgebra& g, Rng& r) {
  Sample s;
  s.H = random_cartan(g, r, 0, 4, 2);
  s.phi = random_root_covec(g, r, [&](int k) { return g.root_value(k, s.H) == -2; });
  Subspace C = intersect(g.cartan(), stab_covec(g, s.phi));
  s.Z = random_in(C, r, 3);
  if (!dominates(g, {s.H, s.phi}, {s.H + s.Z, s.phi})) {
    if (dominates(g, {s.H, s.phi}, {s.H - s.Z, s.phi})) {
      s.Z = -s.Z;
    } else {
      HZ hz = decompose_hZ(g, {s.H, s.phi});
      s.H = hz.h;
      s.Z = hz.Z;
      s.neutral_start = true;
    }
  }
  if (r.uni(0, 2) == 0) {
    QMat A = g.exp_ad(random_upper(g, r));
    s.H = A.apply(s.H);
    s.Z = A.apply(s.Z);
    s.phi = move_covec(g, A, s.phi);
    s.conjugated = true;
  }
  return s;
}

struct Sink {
  SweepReport& rep;
  std::string alg;
  int sample = 0;
  void check(bool ok, const std::string& what) {
    ++rep.checks[alg];
    if (!ok) rep.failures.push_back({alg, sample, what});
  }
  template <class F>
  void guarded(const std::string& what, F f) {
    try {
      f();
    } catch (const std::exception& e) {
      ++rep.checks[alg];
      rep.failures.push_back({alg, sample, what + ": " + e.what()});
    }
  }
};

std::vector<Rat> window(const std::vector<Rat>& crit, const Rat& hi) {
  std::set<Rat> p{Rat(0), hi};
  for (const Rat& c : crit)
    if (sgn(c) >= 0 && c <= hi) p.insert(c);
  return {p.begin(), p.end()};
}

void unquasy(Sink& k, const LieAlgebra& g, const Elem& H, const Covec& phi, Rng& r, const std::string& tag) {
  Grading gr = grading(g, H);
  Subspace n = nilpotent_datum(g, {H, phi});
  k.check(n == gr.ge(2), "UnQuasy(" + tag + "): n != g_{>=2}");
  Covec pp = g.covec_of(random_in(gr.gt(-2), r, 2));
  bool vanish = true;
  for (const auto& x : n.basis()) vanish = vanish && sgn(dot(pp, x)) == 0;
  k.check(vanish, "UnQuasy(" + tag + "): phi' does not vanish on n");
}

unsigned mix(unsigned seed, const std::string& name, unsigned salt) {
  unsigned h = seed * 2654435761u + salt;
  for (char c : name) h = h * 31u + static_cast<unsigned char>(c);
  return h;
}

}  // namespace

long SweepReport::total_checks() const {
  long s = 0;
  for (const auto& [a, c] : checks) s += c;
  return s;
}

std::string SweepReport::text() const {
  std::ostringstream o;
  o << "[" << suite << "] checks=" << total_checks() << " failures=" << failures.size() << "\n";
  for (const auto& [a, c] : checks) o << "  " << a << " checks=" << c << "\n";
  for (const auto& [n, c] : counters) o << "  # " << n << "=" << c << "\n";
  for (const auto& f : failures) o << "  FAIL " << f.algebra << " sample " << f.sample << ": " << f.detail << "\n";
  return o.str();
}

std::vector<SweepAlgebra> sweep_algebras(int max_rank) {
  std::vector<SweepAlgebra> all{{"sl", 2, "sl2", 1},      {"sl", 3, "sl3", 2}, {"sl", 4, "sl4", 3},
                                {"sp", 4, "sp4", 2},      {"so_split", 8, "so44", 4},
                                {"D", 4, "D4", 4}};
  std::vector<SweepAlgebra> out;
  for (const auto& a : all)
    if (a.rank <= max_rank) out.push_back(a);
  return out;
}

SweepReport sweep_lemmas(const SweepOptions& o) {
  SweepReport rep;
  rep.suite = "lemmas";
  for (const auto& a : sweep_algebras(o.max_rank)) {
    const LieAlgebra& g = *algebra_from_descriptor(a.type, a.n);
    Rng r(mix(o.seed, a.name, 4));
    for (int i = 0; i < o.samples; ++i) {
      Sink k{rep, a.name, i};
      k.guarded("sample", [&] {
        Sample s = make_sample(g, r);
        rep.counters["conjugated"] += s.conjugated;
        rep.counters["neutral_start"] += s.neutral_start;
        Deformation d(g, s.H, s.Z, s.phi);
        std::vector<Rat> pts = window(critical_values(d), 1);
        std::vector<Rat> grid = pts;
        for (size_t j = 0; j + 1 < pts.size(); ++j) grid.push_back((pts[j] + pts[j + 1]) / 2);
        std::sort(grid.begin(), grid.end());
        for (const Rat& t : grid) {
          Snapshot sn = snapshot(d, t);
          k.check(nilpotent_datum(g, {d.at(t), s.phi}) == sn.n, "n formulas at t=" + to_string(t));
        }
        for (size_t j = 0; j + 1 < grid.size(); ++j) {
          const Rat &x = grid[j], &y = grid[j + 1];
          LemmaReport h = check_help_lemma(d, x, y);
          k.check(h.ok(), "help " + to_string(x) + "," + to_string(y) + ": " + h.failures());
          LemmaReport kl = verify_key_lemma(d, x, y);
          k.check(kl.ok(), "key " + to_string(x) + "," + to_string(y) + ": " + kl.failures());
        }
        HZ hz = decompose_hZ(g, {s.H, s.phi});
        k.check(is_neutral(g, {hz.h, s.phi}), "decompose_hZ: h not neutral");
        unquasy(k, g, hz.h, s.phi, r, "neutral");
        if (i % 4 == 0) {
          ZPrime zp = build_zprime(g, {s.H, s.phi});
          Elem HT = s.H + zp.T * zp.Zp;
          k.check(is_levi_distinguished(g, {HT, s.phi}), "H + TZ' not Levi-distinguished");
          unquasy(k, g, HT, s.phi, r, "levi");
          ++rep.counters["levi_distinguished_cases"];
        }
      });
    }
  }
  return rep;
}

SweepReport sweep_domination(const SweepOptions& o) {
  SweepReport rep;
  rep.suite = "domination";
  const std::vector<Rat> steps{qr(1, 3), qr(1, 2), 1, qr(3, 2), 2, 3};
  for (const auto& a : sweep_algebras(o.max_rank)) {
    const LieAlgebra& g = *algebra_from_descriptor(a.type, a.n);
    Rng r(mix(o.seed, a.name, 5));
    for (int i = 0; i < o.chains; ++i) {
      Sink k{rep, a.name, i};
      k.guarded("chain", [&] {
        Elem H = random_cartan(g, r, 0, 4, 2);
        Covec phi = random_root_covec(g, r, [&](int q) { return g.root_value(q, H) == -2; });
        HZ hz = decompose_hZ(g, {H, phi});
        std::set<Rat> cs{0};
        while (cs.size() < 4) cs.insert(steps[r.uni(0, static_cast<int>(steps.size()) - 1)]);
        std::vector<Rat> c(cs.begin(), cs.end());
        std::vector<Elem> chain;
        for (const Rat& x : c) chain.push_back(hz.h + x * hz.Z);
        // one more step in an independent direction
        Subspace C = intersect(intersect(g.cartan(), stab_covec(g, phi)), centralizer(g, chain.back()));
        Elem Z2 = random_in(C, r, 2);
        if (!is_zero(Z2) && dominates(g, {chain.back(), phi}, {chain.back() + Z2, phi})) {
          chain.push_back(chain.back() + Z2);
          ++rep.counters["extended"];
        }
        Elem h = hz.h, Z = hz.Z;
        if (r.uni(0, 2) == 0) {
          QMat A = g.exp_ad(random_upper(g, r));
          for (auto& x : chain) x = A.apply(x);
          h = A.apply(h);
          Z = A.apply(Z);
          phi = move_covec(g, A, phi);
          ++rep.counters["conjugated"];
        }
        std::vector<int> dims;
        for (const auto& x : chain) dims.push_back(nilpotent_datum(g, {x, phi}).dim());
        for (size_t j = 0; j + 1 < chain.size(); ++j) {
          k.check(dominates(g, {chain[j], phi}, {chain[j + 1], phi}), "link " + std::to_string(j) + " not dominating");
          bool critical_target = false;
          {
            Deformation link(g, chain[j], chain[j + 1] - chain[j], phi);
            for (const Rat& t : critical_values(link)) critical_target = critical_target || t == 1;
          }
          if (dims[j] > dims[j + 1]) ++rep.counters[critical_target ? "drops_at_critical_target" : "drops_at_regular_target"];
          k.check(dims[j] <= dims[j + 1], "dim n decreases at link " + std::to_string(j) + " (" +
                                               std::to_string(dims[j]) + " > " + std::to_string(dims[j + 1]) + ")" +
                                               (critical_target ? ", target critical" : ", target regular"));
        }
        // collinear part h + c Z: all pairs dominate, critical values compose
        for (size_t x = 0; x < c.size(); ++x)
          for (size_t y = x + 1; y < c.size(); ++y)
            k.check(dominates(g, {chain[x], phi}, {chain[y], phi}), "collinear pair not dominating");
        Deformation whole(g, h, Z, phi);
        std::set<Rat> global;
        for (const Rat& t : critical_values(whole))
          if (sgn(t) > 0 && t < c.back()) global.insert(t);
        std::set<Rat> pieced;
        for (size_t j = 0; j + 1 < c.size(); ++j) {
          Rat len = c[j + 1] - c[j];
          Deformation seg(g, chain[j], len * Z, phi);
          for (const Rat& t : critical_values(seg)) {
            if (sgn(t) > 0 && t < 1) pieced.insert(c[j] + t * len);
            if (t == 1 && j + 2 < c.size()) pieced.insert(c[j + 1]);
          }
        }
        k.check(global == pieced, "critical values do not compose");
      });
    }
  }
  return rep;
}

namespace {

std::vector<std::pair<std::string, WhittakerPair>> leaf_pairs(const CoeffExpr& e, const std::string& tag) {
  std::vector<std::pair<std::string, WhittakerPair>> out;
  int j = 0;
  for (const auto& l : leaves(e.root)) {
    Covec phi = l->phi;
    for (const auto& s : l->phi_sym)
      if (!s.dir.empty()) phi = phi + s.dir;
    out.push_back({tag + "#" + std::to_string(j++), {l->S, phi}});
  }
  return out;
}

}  // namespace

SweepReport sweep_index(const SweepOptions& o) {
  SweepReport rep;
  rep.suite = "index";
  struct Item {
    std::string type;
    int n;
    std::string name;
    WhittakerPair p;
  };
  std::vector<Item> items;
  for (int n : {3, 4})
    for (auto& [nm, p] : leaf_pairs(gln_expansion(n), "gl" + std::to_string(n))) items.push_back({"gl", n, nm, p});
  for (auto& [nm, p] : leaf_pairs(sp4_expansion(), "sp4")) items.push_back({"sp", 4, nm, p});
  {
    const LieAlgebra& g = *algebra_from_descriptor("sl", 4);
    QMat S(4, 4), f(4, 4);
    S.at(0, 0) = 1, S.at(1, 1) = qr(1, 3), S.at(2, 2) = qr(-1, 3), S.at(3, 3) = -1;
    f.at(3, 0) = 1;
    items.push_back({"sl", 4, "sl4", {g.elem_from_matrix(S), g.covec_of(g.elem_from_matrix(f))}});
  }
  {
    const LieAlgebra& g = *algebra_from_descriptor("D", 4);
    HeisenbergData hd = heisenberg_data(g);
    Covec phi = g.covec_of(g.root_vector(g.roots().neg(g.roots().simple(hd.alpha))));
    Covec psi = g.covec_of(g.root_vector(g.roots().neg(hd.Psi.front())));
    items.push_back({"D", 4, "D4:S", {hd.S, phi}});
    items.push_back({"D", 4, "D4:h", {hd.h, phi}});
    items.push_back({"D", 4, "D4:S+psi", {hd.S, phi + psi}});
  }
  for (const auto& a : sweep_algebras(o.max_rank)) {
    const LieAlgebra& g = *algebra_from_descriptor(a.type, a.n);
    Rng r(mix(o.seed, a.name, 9));
    // S = h + Z with Z chosen so that a root vector of g_phi ∩ g^h_{<0} has S-eigenvalue 0
    int made = 0;
    for (int tries = 0; made < 4 && tries < 40; ++tries) {
      Elem H = random_cartan(g, r, 0, 4, 2);
      Covec phi = random_root_covec(g, r, [&](int q) { return g.root_value(q, H) == -2; });
      HZ hz = decompose_hZ(g, {H, phi});
      if (!g.in_cartan(hz.h)) continue;
      Subspace gphi = stab_covec(g, phi);
      Subspace C = intersect(intersect(g.cartan(), gphi), centralizer(g, hz.h));
      std::vector<int> cand;
      for (int q = 0; q < g.roots().num_roots(); ++q)
        if (sgn(g.root_value(q, hz.h)) < 0 && gphi.contains(g.root_vector(q))) cand.push_back(q);
      if (cand.empty()) continue;
      int q = cand[r.uni(0, static_cast<int>(cand.size()) - 1)];
      for (const auto& c : C.basis()) {
        Rat v = g.root_value(q, c);
        if (sgn(v) == 0) continue;
        Elem S = hz.h + (-g.root_value(q, hz.h) / v) * c;
        items.push_back({a.type, a.n, a.name + ":shifted" + std::to_string(made++), {S, phi}});
        break;
      }
    }
  }
  int idx = 0;
  for (const auto& it : items) {
    const LieAlgebra& g = *algebra_from_descriptor(it.type, it.n);
    Rng r(mix(o.seed, it.name, 11));
    Sink k{rep, it.name.substr(0, it.name.find_first_of(":#")), idx++};
    k.guarded(it.name, [&] {
      HZ hz = decompose_hZ(g, it.p);
      const int base = index_in(g, it.p.S, it.p.phi);
      k.check(index_from(g, it.p.S, hz.h) == base, it.name + ": index_from(h) != index_in");
      Subspace V = intersect(intersect(centralizer(g, it.p.S), stab_covec(g, it.p.phi)), grading(g, hz.h).lt(0));
      if (!V.is_zero()) ++rep.counters["pairs_with_moves"];
      for (int j = 0; j < o.index_trials; ++j) {
        Elem h2 = g.exp_ad(random_in(V, r, 2)).apply(hz.h);
        if (h2 != hz.h) ++rep.counters["moved"];
        bool valid = is_zero(g.bracket(h2, it.p.S)) && is_neutral(g, {h2, it.p.phi});
        k.check(valid, it.name + ": recombined h is not neutral or does not commute");
        k.check(index_from(g, it.p.S, h2) == base, it.name + ": index changed under recombination");
      }
    });
  }
  rep.counters["pairs"] = static_cast<long>(items.size());
  return rep;
}

SweepReport sweep_transport(const SweepOptions& o) {
  SweepReport rep;
  rep.suite = "transport";
  std::vector<SweepAlgebra> algs;
  for (const auto& a : sweep_algebras(std::min(3, o.max_rank))) algs.push_back(a);
  if (o.max_rank >= 3) algs.push_back({"so_split", 6, "so33", 3});
  if (algs.empty()) return rep;
  Rng r(mix(o.seed, "transport", 13));
  std::map<std::string, std::set<std::pair<std::string, std::string>>> edges;
  for (int i = 0; i < o.transport_instances; ++i) {
    const SweepAlgebra& a = algs[i % algs.size()];
    const LieAlgebra& g = *algebra_from_descriptor(a.type, a.n);
    Sink k{rep, a.name, i};
    k.guarded("instance", [&] {
      Elem Z = random_cartan(g, r, -2, 2, 1);
      Covec phi = random_root_covec(g, r, [&](int q) { return !g.roots().positive(q) && sgn(g.root_value(q, Z)) == 0; });
      Covec pp = random_root_covec(g, r, [&](int q) { return !g.roots().positive(q) && sgn(g.root_value(q, Z)) > 0; });
      Elem f = g.elem_of(phi), F = f + g.elem_of(pp);
      OrbitLabel la = jordan_partition(g, f), lb = jordan_partition(g, F);
      bool same = la == lb;
      bool solved = solve_transport(g, phi, pp, Z).has_value();
      rep.counters[same ? "same_orbit" : "orbit_grows"]++;
      k.check(solved == same, "transport " + std::string(solved ? "succeeded" : "failed") + " for " + la.str() +
                                  " -> " + lb.str());
      if (order_related(g, orbit_label(g, f), {Z, phi, pp})) {
        edges[a.name].insert({orbit_label(g, f).str(), orbit_label(g, F).str()});
      }
    });
  }
  for (const auto& [alg, es] : edges) {
    Sink k{rep, alg, -1};
    for (const auto& [x, y] : es) {
      k.check(!es.count({y, x}), "order_related both ways: " + x + " / " + y);
      ++rep.counters["order_edges"];
    }
  }
  return rep;
}

std::vector<SweepReport> verify_lemmas(const SweepOptions& o) {
  return {sweep_lemmas(o), sweep_domination(o), sweep_index(o), sweep_transport(o)};
}

}  // namespace wc
