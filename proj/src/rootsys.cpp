#include <algorithm>
#include <deque>
#include <set>

#include "whitcalc/liealg.hpp"

namespace wc {

namespace {

struct Dynkin {
  std::vector<Rat> len;  // (alpha_i, alpha_i)
  std::vector<std::tuple<int, int, Rat>> edges;
};

Dynkin dynkin(char t, int n) {
  Dynkin d;
  auto chain = [&](int upto, Rat b) {
    for (int i = 0; i + 1 < upto; ++i) d.edges.emplace_back(i, i + 1, b);
  };
  switch (t) {
    case 'A':
      if (n < 1) throw Unsupported("A_n needs n >= 1");
      d.len.assign(n, Rat(2));
      chain(n, Rat(-1));
      break;
    case 'B':
      if (n < 2) throw Unsupported("B_n needs n >= 2");
      d.len.assign(n, Rat(2));
      d.len[n - 1] = 1;
      chain(n, Rat(-1));
      break;
    case 'C':
      if (n < 2) throw Unsupported("C_n needs n >= 2");
      d.len.assign(n, Rat(1));
      d.len[n - 1] = 2;
      chain(n - 1, qr(-1, 2));
      d.edges.emplace_back(n - 2, n - 1, Rat(-1));
      break;
    case 'D':
      if (n < 3) throw Unsupported("D_n needs n >= 3");
      d.len.assign(n, Rat(2));
      chain(n - 1, Rat(-1));
      d.edges.emplace_back(n - 3, n - 1, Rat(-1));
      break;
    case 'E': {
      if (n < 6 || n > 8) throw Unsupported("E_n needs 6 <= n <= 8");
      d.len.assign(n, Rat(2));
      const int e[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}, {5, 6}, {6, 7}};
      for (const auto& p : e)
        if (p[0] < n && p[1] < n) d.edges.emplace_back(p[0], p[1], Rat(-1));
      break;
    }
    case 'F':
      if (n != 4) throw Unsupported("F_n needs n = 4");
      d.len = {Rat(2), Rat(2), Rat(1), Rat(1)};
      d.edges = {{0, 1, Rat(-1)}, {1, 2, Rat(-1)}, {2, 3, qr(-1, 2)}};
      break;
    case 'G':
      if (n != 2) throw Unsupported("G_n needs n = 2");
      d.len = {qr(2, 3), Rat(2)};
      d.edges = {{0, 1, Rat(-1)}};
      break;
    default:
      throw Unsupported(std::string("unknown Cartan type ") + t);
  }
  return d;
}

}  // namespace

RootSystem::RootSystem(char type, int rank) : type_(type), rank_(rank) {
  Dynkin d = dynkin(type, rank);
  gram_ = QMat(rank, rank);
  for (int i = 0; i < rank; ++i) gram_.at(i, i) = d.len[i];
  for (const auto& [i, j, b] : d.edges) gram_.at(i, j) = gram_.at(j, i) = b;
  cartan_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rat a = 2 * gram_.at(i, j) / gram_.at(i, i);
      if (a.get_den() != 1) throw std::logic_error("non-integral Cartan entry");
      cartan_[i][j] = static_cast<int>(a.get_num().get_si());
    }

  // Positive roots by string closure, height by height.
  std::set<Root> seen;
  std::vector<Root> level;
  for (int i = 0; i < rank; ++i) {
    Root r(rank, 0);
    r[i] = 1;
    level.push_back(r);
    seen.insert(r);
  }
  std::vector<Root> pos;
  while (!level.empty()) {
    std::sort(level.begin(), level.end(), std::greater<Root>());
    pos.insert(pos.end(), level.begin(), level.end());
    std::set<Root> next;
    for (const Root& b : level)
      for (int i = 0; i < rank; ++i) {
        int p = 0;
        Root m = b;
        while (true) {
          --m[i];
          if (!seen.count(m)) break;
          ++p;
        }
        int q = p;
        for (int j = 0; j < rank; ++j) q -= b[j] * cartan_[i][j];
        if (q > 0) {
          Root up = b;
          ++up[i];
          next.insert(up);
        }
      }
    level.assign(next.begin(), next.end());
    for (const auto& r : level) seen.insert(r);
  }
  pos_ = pos;
  all_ = pos;
  for (const auto& r : pos) {
    Root m = r;
    for (auto& x : m) x = -x;
    all_.push_back(m);
  }
  for (size_t k = 0; k < all_.size(); ++k) index_[all_[k]] = static_cast<int>(k);
}

std::string RootSystem::name() const { return std::string(1, type_) + std::to_string(rank_); }

bool RootSystem::simply_laced() const { return type_ == 'A' || type_ == 'D' || type_ == 'E'; }

int RootSystem::find(const Root& r) const {
  auto it = index_.find(r);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::height(int k) const {
  int h = 0;
  for (int x : all_[k]) h += x;
  return h;
}

Rat RootSystem::ip(const Root& a, const Root& b) const {
  Rat s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < rank_; ++j)
      if (b[j]) s += gram_.at(i, j) * (a[i] * b[j]);
  }
  return s;
}

int RootSystem::pairing(const Root& b, const Root& a) const {
  Rat v = 2 * ip(b, a) / ip(a, a);
  return static_cast<int>(v.get_num().get_si());
}

Root RootSystem::reflect(int i, const Root& b) const {
  int c = 0;
  for (int j = 0; j < rank_; ++j) c += b[j] * cartan_[i][j];
  Root r = b;
  r[i] -= c;
  return r;
}

Root RootSystem::reflect_by(const Root& a, const Root& b) const {
  int c = pairing(b, a);
  Root r = b;
  for (int j = 0; j < rank_; ++j) r[j] -= c * a[j];
  return r;
}

std::vector<int> weyl_orbit(const RootSystem& rs, int k) {
  std::vector<int> out{k};
  std::set<int> seen{k};
  for (size_t q = 0; q < out.size(); ++q)
    for (int i = 0; i < rs.rank(); ++i) {
      int r = rs.find(rs.reflect(i, rs.root(out[q])));
      if (seen.insert(r).second) out.push_back(r);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> weyl_word(const RootSystem& rs, int from, int to) {
  std::map<int, std::pair<int, int>> parent;  // root -> (prev root, reflection)
  std::deque<int> q{from};
  parent[from] = {-1, -1};
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    if (c == to) {
      std::vector<int> word;  // applied right to left: w = s_{word[0]} ... s_{word.back()}
      for (int x = c; parent[x].first >= 0; x = parent[x].first) word.push_back(parent[x].second);
      return word;
    }
    for (int i = 0; i < rs.rank(); ++i) {
      int r = rs.find(rs.reflect(i, rs.root(c)));
      if (!parent.count(r)) {
        parent[r] = {c, i};
        q.push_back(r);
      }
    }
  }
  return std::nullopt;
}

long weyl_order(const RootSystem& rs) {
  const int n = rs.rank();
  // rho in simple-root coordinates is regular; its orbit is free.
  Vec rho = zero_vec(n);
  for (int k = 0; k < rs.num_positive(); ++k)
    for (int i = 0; i < n; ++i) rho[i] += qr(rs.root(k)[i], 2);
  std::set<std::vector<std::string>> seen;
  auto key = [](const Vec& v) {
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(x.get_str());
    return s;
  };
  std::vector<Vec> todo{rho};
  seen.insert(key(rho));
  for (size_t q = 0; q < todo.size(); ++q) {
    if (todo.size() > 51840) throw Unsupported("Weyl group too large to enumerate");
    for (int i = 0; i < n; ++i) {
      Vec v = todo[q];
      Rat c = 0;
      for (int j = 0; j < n; ++j) c += v[j] * rs.cartan(i, j);
      v[i] -= c;
      if (seen.insert(key(v)).second) todo.push_back(v);
    }
  }
  return static_cast<long>(todo.size());
}

}  // namespace wc
