#include "whitcalc/orbits.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace wc {

int OrbitLabel::size() const {
  int s = 0;
  for (int p : partition) s += p;
  return s;
}

std::string OrbitLabel::str() const {
  std::ostringstream o;
  o << (adjoint ? "ad" : kind_name(kind)) << "[";
  for (size_t i = 0; i < partition.size(); ++i) o << (i ? "," : "") << partition[i];
  o << "]";
  return o.str();
}

std::vector<int> nilpotent_partition(const QMat& m) {
  const int n = m.rows();
  std::vector<int> r{n};
  QMat P = QMat::identity(n);
  while (r.back() > 0) {
    P = P * m;
    int k = rank(P);
    if (k == r.back()) throw NotNilpotent("matrix is not nilpotent");
    r.push_back(k);
  }
  // blocks of size >= k: r[k-1] - r[k]
  std::vector<int> ge;
  for (size_t k = 1; k < r.size(); ++k) ge.push_back(r[k - 1] - r[k]);
  std::vector<int> part;
  for (size_t k = 0; k < ge.size(); ++k) {
    int exact = ge[k] - (k + 1 < ge.size() ? ge[k + 1] : 0);
    for (int c = 0; c < exact; ++c) part.push_back(static_cast<int>(k) + 1);
  }
  std::sort(part.rbegin(), part.rend());
  return part;
}

OrbitLabel jordan_partition(const LieAlgebra& g, const Elem& f) {
  if (!g.has_matrices()) throw NoMatrixRealization("jordan_partition needs a matrix build");
  OrbitLabel l;
  l.kind = g.kind();
  l.partition = nilpotent_partition(g.matrix_of(f));
  return l;
}

OrbitLabel orbit_label(const LieAlgebra& g, const Elem& f) {
  if (g.has_matrices()) return jordan_partition(g, f);
  OrbitLabel l;
  l.kind = g.kind();
  l.adjoint = true;
  l.partition = nilpotent_partition(g.ad(f));
  return l;
}

bool closure_leq(const OrbitLabel& a, const OrbitLabel& b) {
  if (a.kind != b.kind || a.adjoint != b.adjoint || a.size() != b.size())
    throw DimensionMismatch("closure_leq: labels of different algebras");
  int sa = 0, sb = 0;
  for (size_t i = 0; i < std::max(a.partition.size(), b.partition.size()); ++i) {
    sa += i < a.partition.size() ? a.partition[i] : 0;
    sb += i < b.partition.size() ? b.partition[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

Elem fundamental_coweight2(const LieAlgebra& g, int i) {
  std::vector<Rat> v(g.semisimple_rank(), Rat(0));
  v[i] = 2;
  return g.cartan_with_values(v);
}

// ---------------------------------------------------------------------------

PLResult is_PL(const LieAlgebra& g, const Covec& phi) {
  PLResult r;
  const RootSystem& rs = g.roots();
  Elem f = g.elem_of(phi);
  if (is_zero(f)) {
    r.status = PLResult::Yes;
    return r;
  }
  std::vector<int> supp;
  for (int j = 0; j < g.dim(); ++j) {
    if (!sgn(f[j])) continue;
    if (g.root_of_basis(j) < 0) {
      r.note = "phi is not supported on root covectors";
      return r;
    }
    supp.push_back(g.root_of_basis(j));
  }
  std::sort(supp.begin(), supp.end());
  auto simple_set = [&](const std::vector<int>& s, bool neg) {
    for (int k : s) {
      int b = neg ? rs.neg(k) : k;
      if (b >= rs.rank()) return false;
    }
    return true;
  };
  const size_t cap = rs.rank() <= 6 ? 60000 : 20000;
  std::map<std::vector<int>, std::pair<std::vector<int>, int>> parent;
  std::deque<std::vector<int>> q{supp};
  parent[supp] = {{}, -1};
  while (!q.empty()) {
    auto s = q.front();
    q.pop_front();
    for (bool neg : {true, false})
      if (simple_set(s, neg)) {
        r.status = PLResult::Yes;
        for (int k : s) r.levi.push_back(neg ? rs.neg(k) : k);
        std::sort(r.levi.begin(), r.levi.end());
        for (auto x = s; parent[x].second >= 0; x = parent[x].first) r.word.push_back(parent[x].second);
        return r;
      }
    for (int i = 0; i < rs.rank(); ++i) {
      std::vector<int> t;
      for (int k : s) t.push_back(rs.find(rs.reflect(i, rs.root(k))));
      std::sort(t.begin(), t.end());
      if (!parent.count(t)) {
        parent[t] = {s, i};
        q.push_back(t);
      }
    }
    if (parent.size() > cap) {
      r.note = "Weyl search bound reached";
      return r;
    }
  }
  // Definite no: the complex orbit is not principal in any standard Levi.
  if (g.dim() <= 80) {
    OrbitLabel me = orbit_label(g, f);
    const int n = rs.rank();
    for (int mask = 0; mask < (1 << n); ++mask) {
      Elem p = g.zero();
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) p = p + g.root_vector(rs.neg(i));
      if (orbit_label(g, p) == me) {
        r.note = "orbit is PL over C but no Weyl move reaches simple roots";
        return r;
      }
    }
    r.status = PLResult::No;
    r.note = "complex orbit is not principal in any standard Levi";
    return r;
  }
  r.note = "Weyl orbit of the support exhausted";
  return r;
}

// ---------------------------------------------------------------------------

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

namespace {

bool rational_semisimple(const LieAlgebra& g, const Elem& x) {
  try {
    grading(g, x);
    return true;
  } catch (const NotRationalSemisimple&) {
    return false;
  }
}

}  // namespace

DistResult is_k_distinguished(const LieAlgebra& g, const Covec& phi, const Subspace& within,
                              const std::optional<Elem>& h_in) {
  DistResult r;
  Elem f = g.elem_of(phi);
  if (!within.contains(f)) throw std::invalid_argument("is_k_distinguished: phi not in the Levi");
  Elem h;
  if (h_in) {
    h = *h_in;
  } else {
    auto t = graded_jm(g, f, within);
    if (!t) throw InternalFailure("is_k_distinguished: no sl2-triple inside the Levi");
    h = t->h;
  }
  Subspace ctr = intersect(within, centralizer(g, within));
  Subspace c = intersect(intersect(within, centralizer(g, h)), stab_covec(g, phi));
  if (ctr.contains(c)) {
    r.verdict = Tri::Yes;
    r.certificate = "centralizer of the sl2-triple is central in the Levi";
    return r;
  }
  // NO: a rational semisimple element of c outside the center.
  Subspace ct = intersect(c, g.cartan());
  for (const auto& x : ct.basis())
    if (!ctr.contains(x)) {
      r.verdict = Tri::No;
      r.certificate = "split torus in the centralizer of the triple";
      r.witness = x;
      return r;
    }
  Subspace rest = complement_in(c, intersect(c, ctr));
  for (const auto& x : rest.basis()) {
    if (g.is_ad_nilpotent(x)) {
      // isotropic semisimple part: the JM h of x inside c is a split torus element
      auto t = graded_jm(g, x, c);
      if (t && !ctr.contains(t->h)) {
        r.verdict = Tri::No;
        r.certificate = "centralizer of the triple is isotropic";
        r.witness = t->h;
        return r;
      }
    } else if (rational_semisimple(g, x)) {
      r.verdict = Tri::No;
      r.certificate = "split torus in the centralizer of the triple";
      r.witness = x;
      return r;
    }
  }
  if (rest.dim() == 1 && bracket_space(g, c, c).is_zero()) {
    r.verdict = Tri::Yes;
    r.certificate = "centralizer of the triple is an anisotropic torus modulo the center";
    return r;
  }
  if (g.kind() == Kind::sp && within == Subspace::whole(g.dim())) {
    auto p = jordan_partition(g, f).partition;
    bool even = std::all_of(p.begin(), p.end(), [](int x) { return x % 2 == 0; });
    bool free = std::adjacent_find(p.begin(), p.end()) == p.end();
    if (even && free) {
      r.verdict = Tri::Yes;
      r.certificate = "totally even multiplicity-free partition";
      return r;
    }
    if (!even) {
      r.verdict = Tri::No;
      r.certificate = "partition is not totally even";
      return r;
    }
  }
  r.certificate = "no certificate either way";
  return r;
}

// ---------------------------------------------------------------------------

void validate_witness(const LieAlgebra& g, const OrderWitness& w) {
  Grading gz = grading(g, w.Z);
  if (!covec_in(g, w.phi, gz.eq(0))) throw std::invalid_argument("witness: phi not in (g*)^Z_0");
  if (!covec_in(g, w.phi_prime, gz.gt(0))) throw std::invalid_argument("witness: phi' not in (g*)^Z_{>0}");
  if (!g.is_ad_nilpotent(g.elem_of(w.phi))) throw std::invalid_argument("witness: phi is not nilpotent");
}

std::optional<Transport> solve_transport(const LieAlgebra& g, const Covec& phi, const Covec& phi_prime,
                                         const Elem& Z, const std::optional<Elem>& S, const std::optional<Rat>& q) {
  validate_witness(g, {Z, phi, phi_prime});
  Grading gz = grading(g, Z);
  Subspace V = gz.gt(0);
  if (S) {
    if (!is_zero(g.bracket(*S, Z))) throw NonCommuting("solve_transport: [S, Z] != 0");
    Grading gs = grading(g, *S);
    if (q) {
      if (!covec_in(g, phi, gs.eq(*q)) || !covec_in(g, phi_prime, gs.eq(*q)))
        throw std::invalid_argument("solve_transport: phi, phi' not in the S-eigenspace");
    }
    V = intersect(V, gs.eq(0));
  }
  const Elem f = g.elem_of(phi);
  const QMat B = V.as_matrix().transpose();
  const QMat AB = g.ad(f) * B;  // X -> [f, X]
  Transport tr;
  tr.X = g.zero();
  Elem F = f + g.elem_of(phi_prime);
  const int bound = static_cast<int>(gz.pieces.size()) + 2;
  for (int it = 0; F != f; ++it) {
    if (it > bound) throw InternalFailure("solve_transport: degrees did not increase");
    Elem psi = F - f;
    if (V.is_zero()) return std::nullopt;
    auto c = solve_affine(AB, -psi);  // [X, f] = psi
    if (!c) return std::nullopt;
    Elem X = B.apply(*c);
    if (it == 0) tr.X = X;
    tr.word.push_back(-X);
    F = g.exp_ad(-X).apply(F);
  }
  // verify the word
  Elem G = f + g.elem_of(phi_prime);
  for (const auto& w : tr.word) G = g.exp_ad(w).apply(G);
  if (G != f) throw InternalFailure("solve_transport: word does not transport");
  if (!is_zero(phi_prime) && g.coadjoint(tr.X, phi) != phi_prime)
    throw InternalFailure("solve_transport: ad*(X) phi != phi'");
  return tr;
}

bool order_related(const LieAlgebra& g, const OrbitLabel& a, const OrderWitness& w) {
  validate_witness(g, w);
  Elem f = g.elem_of(w.phi);
  if (orbit_label(g, f) != a) return false;
  OrbitLabel b = orbit_label(g, f + g.elem_of(w.phi_prime));
  if (b == a) return false;
  if (!closure_leq(a, b)) throw InternalFailure("order_related: perturbed orbit is not above phi");
  return true;
}

}  // namespace wc
