#include "whitcalc/liealg.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <set>

namespace wc {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Abstract: return "abstract";
    case Kind::gl: return "gl";
    case Kind::sl: return "sl";
    case Kind::sp: return "sp";
    case Kind::so_split: return "so_split";
    case Kind::so_odd: return "so_odd";
  }
  return "?";
}

namespace {



std::string root_label(const Root& r) {
  bool neg = false;
  std::string s;
  bool wide = std::any_of(r.begin(), r.end(), [](int x) { return std::abs(x) > 9; });
  for (size_t i = 0; i < r.size(); ++i) {
    int x = r[i];
    if (x < 0) neg = true;
    if (wide && i) s += '.';
    s += std::to_string(std::abs(x));
  }
  return std::string("e") + (neg ? "-" : "+") + s;
}

// Structure constants N_{a,b} of a Chevalley basis, extraspecial signs +.
struct Carter {
  const RootSystem& rs;
  int P;
  std::vector<Rat> len;
  std::vector<int> es;  // extraspecial first root per positive root (-1 for simple)
  std::map<std::pair<int, int>, Rat> memo;

  explicit Carter(const RootSystem& r) : rs(r), P(r.num_positive()) {
    for (int k = 0; k < rs.num_roots(); ++k) len.push_back(rs.ip(rs.root(k), rs.root(k)));
    es.assign(P, -1);
    for (int c = 0; c < P; ++c)
      for (int a = 0; a < P; ++a) {
        int b = diff(c, a);
        if (b >= 0 && b < P) {
          es[c] = a;
          break;
        }
      }
  }

  int add(int a, int b) const {
    Root r = rs.root(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += rs.root(b)[i];
    return rs.find(r);
  }
  int diff(int a, int b) const { return add(a, rs.neg(b)); }

  Rat N(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int c = add(a, b);
    if (c < 0) throw std::logic_error("N of non-root sum");
    Rat r;
    bool pa = rs.positive(a), pb = rs.positive(b);
    if (pa && pb) {
      if (a > b) {
        r = -N(b, a);
      } else {
        int a1 = es[c];
        int b1 = diff(c, a1);
        if (a == a1) {
          int p = 0;
          for (int x = diff(b, a); x >= 0; x = diff(x, a)) ++p;
          r = p + 1;
        } else {
          Rat t = 0;
          int d1 = diff(b, a1);
          if (d1 >= 0) t += N(b, rs.neg(a1)) * N(a, rs.neg(b1)) / len[d1];
          int d2 = diff(a, a1);
          if (d2 >= 0) t += N(rs.neg(a1), a) * N(b, rs.neg(b1)) / len[d2];
          r = len[c] / N(a1, b1) * t;
        }
      }
    } else if (!pa && !pb) {
      r = -N(rs.neg(a), rs.neg(b));
    } else {
      int g = rs.neg(c);
      if (rs.positive(g) == pb)
        r = len[g] / len[a] * N(b, g);
      else
        r = len[g] / len[b] * N(g, a);
    }
    memo[key] = r;
    return r;
  }
};

std::mutex g_cache_mu;
std::map<std::pair<std::string, int>, std::shared_ptr<const LieAlgebra>> g_cache;

}  // namespace

// ---------------------------------------------------------------------------
// Abstract Chevalley build.

LieAlgebra LieAlgebra::build_split(char type, int rank) {
  LieAlgebra g;
  g.rs_ = RootSystem(type, rank);
  const RootSystem& rs = g.rs_;
  const int r = rank, P = rs.num_positive();
  g.kind_ = Kind::Abstract;
  g.name_ = rs.name();
  g.dim_ = r + 2 * P;
  const int D = g.dim_;
  for (int i = 0; i < r; ++i) {
    g.cartan_idx_.push_back(i);
    g.labels_.push_back("h" + std::to_string(i + 1));
  }
  for (int k = 0; k < 2 * P; ++k) {
    g.basis_of_root_.push_back(r + k);
    g.labels_.push_back(root_label(rs.root(k)));
  }
  g.root_of_basis_.assign(D, -1);
  for (int k = 0; k < 2 * P; ++k) g.root_of_basis_[r + k] = k;

  g.weights_.assign(D, zero_vec(r));
  for (int k = 0; k < 2 * P; ++k)
    for (int i = 0; i < r; ++i) {
      int v = 0;
      for (int j = 0; j < r; ++j) v += rs.root(k)[j] * rs.cartan(i, j);
      g.weights_[r + k][i] = v;
    }

  Carter car(rs);
  g.br_.assign(static_cast<size_t>(D) * D, {});
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < 2 * P; ++k) {
      const Rat& w = g.weights_[r + k][i];
      if (!sgn(w)) continue;
      g.br_[static_cast<size_t>(i) * D + r + k] = {{r + k, w}};
      g.br_[static_cast<size_t>(r + k) * D + i] = {{r + k, -w}};
    }
  for (int a = 0; a < 2 * P; ++a)
    for (int b = 0; b < 2 * P; ++b) {
      SparseVec s;
      if (b == rs.neg(a)) {
        // h_a = sum_i c_i (alpha_i,alpha_i)/(a,a) h_i
        Rat la = car.len[a];
        for (int i = 0; i < r; ++i)
          if (rs.root(a)[i]) s.emplace_back(i, rs.root(a)[i] * rs.gram().at(i, i) / la);
      } else {
        int c = car.add(a, b);
        if (c >= 0) s.emplace_back(r + c, car.N(a, b));
      }
      g.br_[static_cast<size_t>(r + a) * D + r + b] = s;
    }

  g.form_ = QMat(D, D);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      g.form_.at(i, j) = 4 * rs.gram().at(i, j) / (rs.gram().at(i, i) * rs.gram().at(j, j));
  for (int k = 0; k < 2 * P; ++k) g.form_.at(r + k, r + rs.neg(k)) = 2 / car.len[k];
  g.compute_form_inverse();
  return g;
}

// ---------------------------------------------------------------------------
// Matrix builds.

LieAlgebra LieAlgebra::build_matrix(Kind kind, int n) {
  if (n < 2 || n > 12) throw Unsupported("matrix size must be in [2, 12]");
  LieAlgebra g;
  g.kind_ = kind;
  g.msize_ = n;
  using Entries = std::vector<std::pair<int, Rat>>;
  std::vector<Entries> mats;
  std::vector<std::string> labels;
  std::vector<bool> is_cartan;
  auto E = [&](int i, int j) { return i * n + j; };
  auto nm = [&](int i, int j) {
    if (n <= 9) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
    return "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  auto push = [&](Entries e, const std::string& l, bool c) {
    mats.push_back(std::move(e));
    labels.push_back(l);
    is_cartan.push_back(c);
  };
  char type = 'A';
  int rank = 0;
  std::vector<std::pair<int, int>> simple_lead;
  switch (kind) {
    case Kind::gl:
    case Kind::sl: {
      type = 'A';
      rank = n - 1;
      if (kind == Kind::gl)
        for (int i = 0; i < n; ++i) push({{E(i, i), Rat(1)}}, "h" + std::to_string(i + 1), true);
      else
        for (int i = 0; i + 1 < n; ++i)
          push({{E(i, i), Rat(1)}, {E(i + 1, i + 1), Rat(-1)}}, "h" + std::to_string(i + 1), true);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) push({{E(i, j), Rat(1)}}, nm(i, j), false);
      for (int i = 0; i + 1 < n; ++i) simple_lead.emplace_back(i, i + 1);
      g.name_ = kind_name(kind) + std::to_string(n);
      break;
    }
    case Kind::sp:
    case Kind::so_split:
    case Kind::so_odd: {
      const bool odd = kind == Kind::so_odd;
      if (odd ? n % 2 == 0 : n % 2 == 1) throw Unsupported("matrix size parity does not match kind");
      const int m = n / 2;
      const int sg = kind == Kind::sp ? 1 : -1;
      type = kind == Kind::sp ? 'C' : (odd ? 'B' : 'D');
      rank = m;
      if (kind == Kind::so_split && m < 3) throw Unsupported("so_split needs n >= 6");
      if (kind != Kind::so_split && m < 2) throw Unsupported("need rank >= 2");
      for (int i = 0; i < m; ++i)
        push({{E(i, i), Rat(1)}, {E(m + i, m + i), Rat(-1)}}, "h" + std::to_string(i + 1), true);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (i != j) push({{E(i, j), Rat(1)}, {E(m + j, m + i), Rat(-1)}}, nm(i, j), false);
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          if (i == j) {
            if (sg == 1) push({{E(i, m + i), Rat(1)}}, nm(i, m + i), false);
            continue;
          }
          push({{E(i, m + j), Rat(1)}, {E(j, m + i), Rat(sg)}}, nm(i, m + j), false);
        }
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          if (i == j) {
            if (sg == 1) push({{E(m + i, i), Rat(1)}}, nm(m + i, i), false);
            continue;
          }
          push({{E(m + i, j), Rat(1)}, {E(m + j, i), Rat(sg)}}, nm(m + i, j), false);
        }
      if (odd) {
        const int z = 2 * m;
        for (int i = 0; i < m; ++i) {
          push({{E(i, z), Rat(1)}, {E(z, m + i), Rat(-1)}}, nm(i, z), false);
          push({{E(m + i, z), Rat(1)}, {E(z, i), Rat(-1)}}, nm(m + i, z), false);
        }
      }
      for (int i = 0; i + 1 < m; ++i) simple_lead.emplace_back(i, i + 1);
      if (kind == Kind::sp) simple_lead.emplace_back(m - 1, 2 * m - 1);
      if (kind == Kind::so_split) simple_lead.emplace_back(m - 2, 2 * m - 1);
      if (odd) simple_lead.emplace_back(m - 1, 2 * m);
      g.name_ = (kind == Kind::sp ? "sp" : kind == Kind::so_split ? "so_split" : "so_odd") + std::to_string(n);
      break;
    }
    default:
      throw Unsupported("not a matrix kind");
  }

  const int D = static_cast<int>(mats.size());
  g.dim_ = D;
  g.labels_ = labels;
  g.mats_ = mats;
  for (int j = 0; j < D; ++j)
    if (is_cartan[j]) g.cartan_idx_.push_back(j);

  // Coordinate solve: rref of [A | I] with A rows = vec(b_j).
  {
    QMat aug(D, n * n + D);
    for (int j = 0; j < D; ++j) {
      for (const auto& [e, c] : mats[j]) aug.at(j, e) = c;
      aug.at(j, n * n + j) = 1;
    }
    auto piv = rref(aug);
    for (size_t k = 0; k < piv.size(); ++k) {
      if (piv[k] >= n * n) throw std::logic_error("dependent matrix basis");
      SparseVec t;
      for (int j = 0; j < D; ++j)
        if (sgn(aug.at(static_cast<int>(k), n * n + j))) t.emplace_back(j, aug.at(static_cast<int>(k), n * n + j));
      g.pivot_row_[piv[k]] = static_cast<int>(g.coord_rows_.size());
      g.coord_rows_.push_back(std::move(t));
    }
  }

  auto coords_of = [&g, D](const std::map<int, Rat>& ent) {
    SparseVec out;
    Vec c = zero_vec(D);
    for (const auto& [e, v] : ent) {
      auto it = g.pivot_row_.find(e);
      if (it == g.pivot_row_.end()) continue;
      for (const auto& [j, t] : g.coord_rows_[it->second]) c[j] += v * t;
    }
    // verify
    std::map<int, Rat> back;
    for (int j = 0; j < D; ++j)
      if (sgn(c[j]))
        for (const auto& [e, x] : g.mats_[j]) back[e] += c[j] * x;
    for (auto it = back.begin(); it != back.end();)
      it = sgn(it->second) ? std::next(it) : back.erase(it);
    if (back != ent) throw std::logic_error("matrix not in the span of the basis");
    return to_sparse(c);
  };

  g.br_.assign(static_cast<size_t>(D) * D, {});
  for (int a = 0; a < D; ++a)
    for (int b = a + 1; b < D; ++b) {
      std::map<int, Rat> ent;
      for (const auto& [e1, x] : mats[a])
        for (const auto& [e2, y] : mats[b]) {
          if (e1 % n == e2 / n) ent[(e1 / n) * n + e2 % n] += x * y;
          if (e2 % n == e1 / n) ent[(e2 / n) * n + e1 % n] -= x * y;
        }
      for (auto it = ent.begin(); it != ent.end();)
        it = sgn(it->second) ? std::next(it) : ent.erase(it);
      SparseVec s = coords_of(ent);
      g.br_[static_cast<size_t>(a) * D + b] = s;
      for (auto& p : s) p.second = -p.second;
      g.br_[static_cast<size_t>(b) * D + a] = s;
    }

  // Weights of the Cartan basis on every basis vector.
  const int C = static_cast<int>(g.cartan_idx_.size());
  g.weights_.assign(D, zero_vec(C));
  for (int j = 0; j < D; ++j)
    for (int k = 0; k < C; ++k) {
      const SparseVec& s = g.bracket_basis(g.cartan_idx_[k], j);
      if (s.empty()) continue;
      if (s.size() != 1 || s[0].first != j) throw std::logic_error("basis vector is not a weight vector");
      g.weights_[j][k] = s[0].second;
    }

  // Trace form.
  g.form_ = QMat(D, D);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      Rat t = 0;
      for (const auto& [e1, x] : mats[a])
        for (const auto& [e2, y] : mats[b])
          if (e1 % n == e2 / n && e2 % n == e1 / n) t += x * y;
      g.form_.at(a, b) = t;
    }
  g.compute_form_inverse();

  // Root datum.
  g.rs_ = RootSystem(type, rank);
  const RootSystem& rs = g.rs_;
  std::vector<int> simple_basis;
  for (auto [i, j] : simple_lead) {
    int found = -1;
    for (int b = 0; b < D; ++b)
      if (!is_cartan[b] && mats[b][0].first == E(i, j)) found = b;
    if (found < 0) throw std::logic_error("simple root vector not found");
    simple_basis.push_back(found);
  }
  QMat S(C, rank);
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < C; ++k) S.at(k, i) = g.weights_[simple_basis[i]][k];
  g.root_of_basis_.assign(D, -1);
  g.basis_of_root_.assign(rs.num_roots(), -1);
  for (int b = 0; b < D; ++b) {
    if (is_cartan[b]) continue;
    auto c = solve_affine(S, g.weights_[b]);
    if (!c) throw std::logic_error("weight outside root lattice");
    Root r(rank);
    for (int i = 0; i < rank; ++i) {
      if ((*c)[i].get_den() != 1) throw std::logic_error("non-integral root");
      r[i] = static_cast<int>((*c)[i].get_num().get_si());
    }
    int k = rs.find(r);
    if (k < 0 || g.basis_of_root_[k] >= 0) throw std::logic_error("root datum mismatch");
    g.root_of_basis_[b] = k;
    g.basis_of_root_[k] = b;
  }
  if (std::count(g.basis_of_root_.begin(), g.basis_of_root_.end(), -1))
    throw std::logic_error("missing root vectors");
  return g;
}

void LieAlgebra::compute_form_inverse() {
  const int D = dim_;
  // Connected components of the nonzero pattern; invert blockwise.
  std::vector<int> comp(D, -1);
  int nc = 0;
  for (int s = 0; s < D; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> st{s};
    comp[s] = nc;
    while (!st.empty()) {
      int a = st.back();
      st.pop_back();
      for (int b = 0; b < D; ++b)
        if (comp[b] < 0 && (sgn(form_.at(a, b)) || sgn(form_.at(b, a)))) {
          comp[b] = nc;
          st.push_back(b);
        }
    }
    ++nc;
  }
  form_inv_ = QMat(D, D);
  for (int c = 0; c < nc; ++c) {
    std::vector<int> idx;
    for (int a = 0; a < D; ++a)
      if (comp[a] == c) idx.push_back(a);
    const int k = static_cast<int>(idx.size());
    QMat blk(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) blk.at(i, j) = form_.at(idx[i], idx[j]);
    auto inv = inverse(blk);
    if (!inv) throw std::domain_error("degenerate invariant form");
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) form_inv_.at(idx[i], idx[j]) = inv->at(i, j);
  }
}

int LieAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("no basis vector labelled " + label);
  return static_cast<int>(it - labels_.begin());
}

Elem LieAlgebra::bracket(const Elem& x, const Elem& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_) throw DimensionMismatch("bracket");
  Elem r = zero();
  for (int i = 0; i < dim_; ++i) {
    if (!sgn(x[i])) continue;
    for (int j = 0; j < dim_; ++j) {
      if (!sgn(y[j])) continue;
      const SparseVec& s = bracket_basis(i, j);
      if (s.empty()) continue;
      Rat c = x[i] * y[j];
      for (const auto& [k, v] : s) r[k] += c * v;
    }
  }
  return r;
}

QMat LieAlgebra::ad(const Elem& x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("ad");
  QMat m(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (!sgn(x[i])) continue;
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, v] : bracket_basis(i, j)) m.at(k, j) += x[i] * v;
  }
  return m;
}

Rat LieAlgebra::pair(const Elem& x, const Elem& y) const { return dot(x, form_.apply(y)); }

Covec LieAlgebra::coadjoint(const Elem& X, const Covec& phi) const {
  // (ad*(X)phi)(b_j) = -phi([X, b_j])
  Covec r = zero();
  for (int i = 0; i < dim_; ++i) {
    if (!sgn(X[i])) continue;
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, v] : bracket_basis(i, j))
        if (sgn(phi[k])) r[j] -= X[i] * v * phi[k];
  }
  return r;
}

Elem LieAlgebra::root_vector(const Root& r) const {
  int k = rs_.find(r);
  if (k < 0) throw std::invalid_argument("not a root");
  return root_vector(k);
}

Elem LieAlgebra::coroot(int k) const {
  Elem h = bracket(root_vector(k), root_vector(rs_.neg(k)));
  Rat v = root_value(k, h);
  return (2 / v) * h;
}

bool LieAlgebra::in_cartan(const Elem& x) const {
  std::vector<bool> c(dim_, false);
  for (int i : cartan_idx_) c[i] = true;
  for (int j = 0; j < dim_; ++j)
    if (!c[j] && sgn(x[j])) return false;
  return true;
}

Rat LieAlgebra::root_value(int k, const Elem& h) const {
  const int b = basis_of_root_[k];
  Rat s = 0;
  for (size_t c = 0; c < cartan_idx_.size(); ++c)
    if (sgn(h[cartan_idx_[c]])) s += h[cartan_idx_[c]] * weights_[b][c];
  return s;
}

Elem LieAlgebra::cartan_with_values(const std::vector<Rat>& vals) const {
  const int r = rs_.rank(), C = static_cast<int>(cartan_idx_.size());
  if (static_cast<int>(vals.size()) != r) throw DimensionMismatch("cartan_with_values");
  Subspace z = center();
  QMat M(r + z.dim(), C);
  Vec rhs = zero_vec(r + z.dim());
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < C; ++k) M.at(i, k) = weights_[basis_of_root_[i]][k];
    rhs[i] = vals[i];
  }
  for (int q = 0; q < z.dim(); ++q) {
    Covec w = covec_of(z.basis()[q]);
    for (int k = 0; k < C; ++k) M.at(r + q, k) = w[cartan_idx_[k]];
  }
  auto x = solve_affine(M, rhs);
  if (!x) throw std::logic_error("cartan_with_values: inconsistent");
  Elem h = zero();
  for (int k = 0; k < C; ++k) h[cartan_idx_[k]] = (*x)[k];
  return h;
}

Subspace LieAlgebra::center() const {
  const int r = rs_.rank(), C = static_cast<int>(cartan_idx_.size());
  QMat M(r, C);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < C; ++k) M.at(i, k) = weights_[basis_of_root_[i]][k];
  Subspace ns = nullspace(M);
  std::vector<Vec> vs;
  for (const auto& v : ns.basis()) {
    Elem e = zero();
    for (int k = 0; k < C; ++k) e[cartan_idx_[k]] = v[k];
    vs.push_back(e);
  }
  return Subspace::span(dim_, vs);
}

QMat LieAlgebra::matrix_of(const Elem& x) const {
  if (!has_matrices()) throw Unsupported("no matrix realisation");
  QMat m(msize_, msize_);
  for (int j = 0; j < dim_; ++j)
    if (sgn(x[j]))
      for (const auto& [e, c] : mats_[j]) m.at(e / msize_, e % msize_) += x[j] * c;
  return m;
}

Elem LieAlgebra::elem_from_matrix(const QMat& m) const {
  if (!has_matrices()) throw Unsupported("no matrix realisation");
  if (m.rows() != msize_ || m.cols() != msize_) throw DimensionMismatch("matrix size");
  Elem c = zero();
  for (const auto& [e, k] : pivot_row_) {
    const Rat& v = m.at(e / msize_, e % msize_);
    if (!sgn(v)) continue;
    for (const auto& [j, t] : coord_rows_[k]) c[j] += v * t;
  }
  if (!(matrix_of(c) == m)) throw std::invalid_argument("matrix does not lie in " + name_);
  return c;
}

bool LieAlgebra::is_ad_nilpotent(const Elem& x) const {
  QMat A = ad(x);
  QMat P = A;
  const int bound = 2 * (rs_.height(rs_.highest()) + 1) + 1;
  for (int k = 1; k <= bound; ++k) {
    if (P.is_zero()) return true;
    P = P * A;
  }
  return P.is_zero();
}

QMat LieAlgebra::exp_ad(const Elem& X) const {
  QMat A = ad(X);
  QMat R = QMat::identity(dim_);
  QMat P = QMat::identity(dim_);
  const int bound = 2 * (rs_.height(rs_.highest()) + 1) + 2;
  for (int k = 1;; ++k) {
    P = (P * A).scaled(qr(1, k));
    if (P.is_zero()) break;
    if (k > bound) throw NotNilpotent("exp_ad: ad(X) is not nilpotent");
    R = R + P;
  }
  return R;
}

long LieAlgebra::jacobi_failures(long samples, unsigned seed) const {
  long bad = 0;
  auto check = [&](int a, int b, int c) {
    Elem x = basis(a), y = basis(b), z = basis(c);
    Elem s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    if (!is_zero(s)) ++bad;
  };
  if (samples <= 0) {
    for (int a = 0; a < dim_; ++a)
      for (int b = a + 1; b < dim_; ++b)
        for (int c = b + 1; c < dim_; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(0, dim_ - 1);
    for (long s = 0; s < samples; ++s) check(d(rng), d(rng), d(rng));
  }
  return bad;
}

long LieAlgebra::form_invariance_failures(long samples, unsigned seed) const {
  long bad = 0;
  auto check = [&](int a, int b, int c) {
    Elem x = basis(a), y = basis(b), z = basis(c);
    if (pair(bracket(x, y), z) + pair(y, bracket(x, z)) != 0) ++bad;
  };
  if (samples <= 0) {
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(0, dim_ - 1);
    for (long s = 0; s < samples; ++s) check(d(rng), d(rng), d(rng));
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Gradings.

Subspace Grading::eq(const Rat& l) const {
  auto it = pieces.find(l);
  return it == pieces.end() ? Subspace(dim) : it->second;
}

namespace {
template <class Pred>
Subspace collect(const Grading& g, Pred p) {
  std::vector<Vec> vs;
  for (const auto& [l, s] : g.pieces)
    if (p(l)) vs.insert(vs.end(), s.basis().begin(), s.basis().end());
  return Subspace::span(g.dim, vs);
}
}  // namespace

Subspace Grading::ge(const Rat& l) const { return collect(*this, [&](const Rat& x) { return x >= l; }); }
Subspace Grading::gt(const Rat& l) const { return collect(*this, [&](const Rat& x) { return x > l; }); }
Subspace Grading::le(const Rat& l) const { return collect(*this, [&](const Rat& x) { return x <= l; }); }
Subspace Grading::lt(const Rat& l) const { return collect(*this, [&](const Rat& x) { return x < l; }); }

std::vector<Rat> Grading::eigenvalues() const {
  std::vector<Rat> v;
  for (const auto& [l, s] : pieces) v.push_back(l);
  return v;
}

std::optional<Vec> diagonal_eigenvalues(const LieAlgebra& g, const Elem& S) {
  const int D = g.dim();
  Vec ev = zero_vec(D);
  if (g.in_cartan(S)) {
    const auto& ci = g.cartan_indices();
    for (int j = 0; j < D; ++j)
      for (size_t k = 0; k < ci.size(); ++k)
        if (sgn(S[ci[k]])) ev[j] += S[ci[k]] * g.weight(j, static_cast<int>(k));
    return ev;
  }
  for (int i = 0; i < D; ++i) {
    if (!sgn(S[i])) continue;
    for (int j = 0; j < D; ++j)
      for (const auto& [k, v] : g.bracket_basis(i, j)) {
        if (k != j) return std::nullopt;
        ev[j] += S[i] * v;
      }
  }
  // Off-diagonal contributions may cancel; the loop above is conservative.
  return ev;
}

Grading grading(const LieAlgebra& g, const Elem& S) {
  Grading gr;
  gr.dim = g.dim();
  if (auto ev = diagonal_eigenvalues(g, S)) {
    std::map<Rat, std::vector<int>> idx;
    for (int j = 0; j < g.dim(); ++j) idx[(*ev)[j]].push_back(j);
    for (const auto& [l, v] : idx) gr.pieces[l] = Subspace::coordinate(g.dim(), v);
    return gr;
  }
  QMat A = g.ad(S);
  auto spec = rational_spectrum(A);
  if (!spec) throw NotRationalSemisimple("ad(S) has non-rational eigenvalues");
  int total = 0;
  for (const auto& [l, m] : *spec) {
    QMat B = A - QMat::identity(g.dim()).scaled(l);
    Subspace ns = nullspace(B);
    total += ns.dim();
    gr.pieces[l] = ns;
  }
  if (total != g.dim()) throw NotRationalSemisimple("ad(S) is not diagonalisable");
  return gr;
}

std::map<std::pair<Rat, Rat>, Subspace> bigrading(const LieAlgebra& g, const Elem& S, const Elem& Z) {
  if (!is_zero(g.bracket(S, Z))) throw NonCommuting("bigrading: [S, Z] != 0");
  std::map<std::pair<Rat, Rat>, Subspace> out;
  auto es = diagonal_eigenvalues(g, S), ez = diagonal_eigenvalues(g, Z);
  if (es && ez) {
    std::map<std::pair<Rat, Rat>, std::vector<int>> idx;
    for (int j = 0; j < g.dim(); ++j) idx[{(*es)[j], (*ez)[j]}].push_back(j);
    for (const auto& [k, v] : idx) out[k] = Subspace::coordinate(g.dim(), v);
    return out;
  }
  Grading a = grading(g, S), b = grading(g, Z);
  int total = 0;
  for (const auto& [la, sa] : a.pieces)
    for (const auto& [lb, sb] : b.pieces) {
      Subspace c = intersect(sa, sb);
      if (c.dim()) {
        out[{la, lb}] = c;
        total += c.dim();
      }
    }
  if (total != g.dim()) throw std::logic_error("bigrading does not exhaust the algebra");
  return out;
}

Subspace centralizer(const LieAlgebra& g, const Elem& x) {
  if (is_zero(x)) return Subspace::whole(g.dim());
  return nullspace(g.ad(x));
}

Subspace centralizer(const LieAlgebra& g, const Subspace& s) {
  Subspace c = Subspace::whole(g.dim());
  for (const auto& v : s.basis()) c = intersect(c, centralizer(g, v));
  return c;
}

Subspace stab_covec(const LieAlgebra& g, const Covec& phi) {
  const int D = g.dim();
  if (is_zero(phi)) return Subspace::whole(D);
  QMat w(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (const auto& [k, v] : g.bracket_basis(i, j))
        if (sgn(phi[k])) w.at(i, j) += v * phi[k];
  return nullspace(w);
}

Subspace covec_space(const LieAlgebra& g, const Subspace& s) { return image(g.form(), s); }

Subspace elem_space(const LieAlgebra& g, const Subspace& covecs) {
  std::vector<Vec> vs;
  for (const auto& v : covecs.basis()) vs.push_back(g.elem_of(v));
  return Subspace::span(g.dim(), vs);
}

Subspace bracket_space(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Vec> vs;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      Elem z = g.bracket(x, y);
      if (!is_zero(z)) vs.push_back(std::move(z));
    }
  return Subspace::span(g.dim(), vs);
}

Subspace subalgebra_generated(const LieAlgebra& g, const Subspace& s) {
  Subspace cur = s;
  while (true) {
    Subspace nxt = sum(cur, bracket_space(g, cur, cur));
    if (nxt == cur) return cur;
    cur = nxt;
  }
}

QMat weyl_rep(const LieAlgebra& g, int i) {
  const RootSystem& rs = g.roots();
  Elem e = g.root_vector(rs.simple(i));
  Elem f0 = g.root_vector(rs.neg(rs.simple(i)));
  Rat v = g.root_value(rs.simple(i), g.bracket(e, f0));
  Elem f = (2 / v) * f0;
  QMat a = g.exp_ad(e), b = g.exp_ad(-f);
  return a * b * a;
}

std::shared_ptr<const LieAlgebra> algebra_from_descriptor(const std::string& type, int n) {
  std::lock_guard<std::mutex> lk(g_cache_mu);
  auto key = std::make_pair(type, n);
  auto it = g_cache.find(key);
  if (it != g_cache.end()) return it->second;
  std::shared_ptr<const LieAlgebra> p;
  if (type.size() == 1 && std::string("ABCDEFG").find(type[0]) != std::string::npos)
    p = std::make_shared<const LieAlgebra>(LieAlgebra::build_split(type[0], n));
  else if (type == "gl")
    p = std::make_shared<const LieAlgebra>(LieAlgebra::build_matrix(Kind::gl, n));
  else if (type == "sl")
    p = std::make_shared<const LieAlgebra>(LieAlgebra::build_matrix(Kind::sl, n));
  else if (type == "sp")
    p = std::make_shared<const LieAlgebra>(LieAlgebra::build_matrix(Kind::sp, n));
  else if (type == "so" || type == "so_split")
    p = std::make_shared<const LieAlgebra>(LieAlgebra::build_matrix(Kind::so_split, n));
  else if (type == "so_odd")
    p = std::make_shared<const LieAlgebra>(LieAlgebra::build_matrix(Kind::so_odd, n));
  else
    throw Unsupported("unknown algebra type " + type);
  g_cache[key] = p;
  return p;
}

}  // namespace wc
