#include "whitcalc/ratlin.hpp"

#include <algorithm>
#include <sstream>

namespace wc {

Rat qr(long a, long b) {
  if (b == 0) throw std::domain_error("zero denominator");
  Rat r(a, b);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
  os << ']';
  return os.str();
}

Vec zero_vec(int n) { return Vec(static_cast<size_t>(n), Rat(0)); }

Vec unit_vec(int n, int i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

static void check_len(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
}

Vec operator+(const Vec& a, const Vec& b) {
  check_len(a, b);
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  check_len(a, b);
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec operator*(const Rat& s, const Vec& v) {
  Vec r(v.size());
  if (sgn(s) == 0) return Vec(v.size(), Rat(0));
  for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  check_len(a, b);
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) && sgn(b[i])) s += a[i] * b[i];
  return s;
}

void axpy(Vec& y, const Rat& a, const Vec& x) {
  check_len(y, x);
  if (sgn(a) == 0) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (sgn(x[i])) y[i] += a * x[i];
}

Vec to_dense(int n, const SparseVec& s) {
  Vec v = zero_vec(n);
  for (const auto& [i, c] : s) v[i] += c;
  return v;
}

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i])) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

// ---- QMat ----

QMat::QMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::from_rows(const std::vector<Vec>& rows, int cols) {
  QMat m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw DimensionMismatch("row length");
    for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
  }
  return m;
}

QMat QMat::from_cols(const std::vector<Vec>& cols, int rows) {
  QMat m(rows, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw DimensionMismatch("column length");
    for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
  }
  return m;
}

Vec QMat::row(int i) const {
  return Vec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_);
}

Vec QMat::col(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = at(i, j);
  return v;
}

Vec QMat::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != c_) throw DimensionMismatch("apply");
  Vec y = zero_vec(r_);
  for (int j = 0; j < c_; ++j) {
    if (!sgn(x[j])) continue;
    for (int i = 0; i < r_; ++i)
      if (sgn(at(i, j))) y[i] += at(i, j) * x[j];
  }
  return y;
}

Vec QMat::apply_t(const Vec& x) const {
  if (static_cast<int>(x.size()) != r_) throw DimensionMismatch("apply_t");
  Vec y = zero_vec(c_);
  for (int i = 0; i < r_; ++i) {
    if (!sgn(x[i])) continue;
    for (int j = 0; j < c_; ++j)
      if (sgn(at(i, j))) y[j] += at(i, j) * x[i];
  }
  return y;
}

QMat QMat::operator*(const QMat& o) const {
  if (c_ != o.r_) throw DimensionMismatch("matmul");
  QMat m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Rat& a = at(i, k);
      if (!sgn(a)) continue;
      for (int j = 0; j < o.c_; ++j)
        if (sgn(o.at(k, j))) m.at(i, j) += a * o.at(k, j);
    }
  return m;
}

QMat QMat::operator+(const QMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matadd");
  QMat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

QMat QMat::operator-(const QMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matsub");
  QMat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

QMat QMat::scaled(const Rat& s) const {
  QMat m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

QMat QMat::transpose() const {
  QMat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool QMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool QMat::operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

// ---- elimination ----

std::vector<int> rref(QMat& m) {
  std::vector<int> piv;
  int r = 0;
  const int R = m.rows(), C = m.cols();
  for (int c = 0; c < C && r < R; ++c) {
    int p = -1;
    for (int i = r; i < R; ++i)
      if (sgn(m.at(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < C; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = 1 / m.at(r, c);
    for (int j = c; j < C; ++j)
      if (sgn(m.at(r, j))) m.at(r, j) *= inv;
    for (int i = 0; i < R; ++i) {
      if (i == r || !sgn(m.at(i, c))) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < C; ++j)
        if (sgn(m.at(r, j))) m.at(i, j) -= f * m.at(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const QMat& m) {
  QMat t = m;
  return static_cast<int>(rref(t).size());
}

std::optional<QMat> inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square");
  const int n = m.rows();
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  QMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// Scale a row to a primitive integer vector (pivot sign fixed positive by caller).
static void primitive(Vec& v) {
  mpz_class den = 1, num = 0;
  for (const auto& x : v)
    if (sgn(x)) den = lcm(den, x.get_den());
  for (auto& x : v)
    if (sgn(x)) {
      x *= den;
      x.canonicalize();
      num = gcd(num, x.get_num());
    }
  if (num != 0 && num != 1)
    for (auto& x : v)
      if (sgn(x)) x /= Rat(num);
}

// ---- Subspace ----

Subspace Subspace::whole(int n) {
  Subspace s(n);
  for (int i = 0; i < n; ++i) {
    s.rows_.push_back(unit_vec(n, i));
    s.piv_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vecs) {
  Subspace s(ambient);
  if (vecs.empty()) return s;
  QMat m = QMat::from_rows(vecs, ambient);
  auto piv = rref(m);
  for (size_t i = 0; i < piv.size(); ++i) {
    Vec r = m.row(static_cast<int>(i));
    primitive(r);
    s.rows_.push_back(std::move(r));
  }
  s.piv_ = piv;
  return s;
}

Subspace Subspace::coordinate(int ambient, const std::vector<int>& idx) {
  std::vector<int> ids = idx;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Subspace s(ambient);
  for (int i : ids) {
    s.rows_.push_back(unit_vec(ambient, i));
    s.piv_.push_back(i);
  }
  return s;
}

Vec Subspace::coords(const Vec& v) const {
  if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("coords");
  Vec c(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) c[i] = v[piv_[i]] / rows_[i][piv_[i]];
  return c;
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("contains");
  Vec r = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rat& x = r[piv_[i]];
    if (!sgn(x)) continue;
    Rat c = x / rows_[i][piv_[i]];
    axpy(r, -c, rows_[i]);
  }
  return wc::is_zero(r);
}

bool Subspace::contains(const Subspace& o) const {
  if (o.n_ != n_) throw DimensionMismatch("contains");
  if (o.dim() > dim()) return false;
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(v); });
}

Subspace Subspace::annihilator() const {
  if (rows_.empty()) return whole(n_);
  return nullspace(as_matrix());
}

QMat Subspace::as_matrix() const { return QMat::from_rows(rows_, n_); }

Subspace nullspace(const QMat& m) {
  QMat t = m;
  auto piv = rref(t);
  const int C = m.cols();
  std::vector<bool> is_piv(C, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Vec> vs;
  for (int f = 0; f < C; ++f) {
    if (is_piv[f]) continue;
    Vec v = zero_vec(C);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -t.at(static_cast<int>(i), f);
    vs.push_back(std::move(v));
  }
  return Subspace::span(C, vs);
}

Subspace column_space(const QMat& m) {
  std::vector<Vec> cols;
  for (int j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return Subspace::span(m.rows(), cols);
}

Subspace image(const QMat& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw DimensionMismatch("image");
  std::vector<Vec> vs;
  for (const auto& b : s.basis()) vs.push_back(m.apply(b));
  return Subspace::span(m.rows(), vs);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("sum");
  std::vector<Vec> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), vs);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("intersect");
  if (a.is_zero() || b.is_zero()) return Subspace(a.ambient());
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  return sum(a.annihilator(), b.annihilator()).annihilator();
}

bool independent(const Subspace& a, const Subspace& b) { return sum(a, b).dim() == a.dim() + b.dim(); }

Subspace complement_in(const Subspace& a, const Subspace& b) {
  if (!a.contains(b)) throw std::invalid_argument("complement_in: b not contained in a");
  std::vector<Vec> cur = b.basis();
  std::vector<Vec> extra;
  int d = b.dim();
  for (const auto& v : a.basis()) {
    cur.push_back(v);
    if (Subspace::span(a.ambient(), cur).dim() > d) {
      ++d;
      extra.push_back(v);
    } else {
      cur.pop_back();
    }
    if (d == a.dim()) break;
  }
  return Subspace::span(a.ambient(), extra);
}

std::optional<Vec> solve_affine(const QMat& m, const Vec& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) throw DimensionMismatch("solve_affine");
  const int R = m.rows(), C = m.cols();
  QMat aug(R, C + 1);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < C; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, C) = rhs[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == C) return std::nullopt;
  Vec x = zero_vec(C);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(static_cast<int>(i), C);
  return x;
}

Quotient make_quotient(const Subspace& a, const Subspace& k) {
  if (!a.contains(k)) throw std::invalid_argument("quotient: kernel not contained in ambient");
  return {a, k};
}

// ---- spectra ----

std::vector<Rat> charpoly(const QMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("charpoly");
  const int n = m.rows();
  QMat H = m;
  // Hessenberg reduction by similarity.
  for (int j = 0; j + 2 < n; ++j) {
    int p = -1;
    for (int i = j + 1; i < n; ++i)
      if (sgn(H.at(i, j))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != j + 1) {
      for (int k = 0; k < n; ++k) std::swap(H.at(p, k), H.at(j + 1, k));
      for (int k = 0; k < n; ++k) std::swap(H.at(k, p), H.at(k, j + 1));
    }
    for (int i = j + 2; i < n; ++i) {
      if (!sgn(H.at(i, j))) continue;
      Rat u = H.at(i, j) / H.at(j + 1, j);
      for (int k = 0; k < n; ++k)
        if (sgn(H.at(j + 1, k))) H.at(i, k) -= u * H.at(j + 1, k);
      for (int k = 0; k < n; ++k)
        if (sgn(H.at(k, i))) H.at(k, j + 1) += u * H.at(k, i);
    }
  }
  // p[m](x) recurrence on the Hessenberg form (1-indexed h).
  auto h = [&](int i, int j) -> const Rat& { return H.at(i - 1, j - 1); };
  std::vector<std::vector<Rat>> p(n + 1);
  p[0] = {Rat(1)};
  for (int mm = 1; mm <= n; ++mm) {
    std::vector<Rat> q(mm + 1, Rat(0));
    for (int k = 0; k < mm; ++k) {
      q[k + 1] += p[mm - 1][k];
      q[k] -= h(mm, mm) * p[mm - 1][k];
    }
    Rat t = 1;
    for (int i = 1; i < mm; ++i) {
      t *= h(mm - i + 1, mm - i);
      if (!sgn(t)) break;
      Rat c = h(mm - i, mm) * t;
      if (!sgn(c)) continue;
      for (size_t k = 0; k < p[mm - i - 1].size(); ++k) q[k] -= c * p[mm - i - 1][k];
    }
    p[mm] = std::move(q);
  }
  return p[n];
}

static Rat horner(const std::vector<Rat>& c, const Rat& x) {
  Rat r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

// Divide by (x - a); c low-to-high.
static std::vector<Rat> deflate(const std::vector<Rat>& c, const Rat& a) {
  const size_t d = c.size() - 1;
  std::vector<Rat> q(d);
  Rat carry = 0;
  for (size_t i = d; i-- > 0;) {
    carry = c[i + 1] + carry * a;
    q[i] = carry;
  }
  return q;
}

namespace {

void trim(std::vector<Rat>& c) {
  while (c.size() > 1 && !sgn(c.back())) c.pop_back();
}

// remainder of a by b, low-to-high
std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  const size_t db = b.size() - 1;
  while (a.size() > db && !(a.size() == 1 && !sgn(a[0]))) {
    Rat f = a.back() / b.back();
    size_t sh = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) a[sh + i] -= f * b[i];
    a.pop_back();
    trim(a);
    if (a.size() <= db) break;
  }
  return a;
}

std::vector<Rat> poly_div(std::vector<Rat> a, const std::vector<Rat>& b) {
  const size_t db = b.size() - 1;
  if (a.size() <= db) return {Rat(0)};
  std::vector<Rat> q(a.size() - db);
  for (size_t k = a.size(); k-- > db;) {
    Rat f = a[k] / b.back();
    q[k - db] = f;
    for (size_t i = 0; i <= db; ++i) a[k - db + i] -= f * b[i];
  }
  return q;
}

std::vector<Rat> monic(std::vector<Rat> c) {
  Rat l = c.back();
  for (auto& x : c) x /= l;
  return c;
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  trim(a);
  trim(b);
  while (!(b.size() == 1 && !sgn(b[0]))) {
    auto r = poly_rem(a, b);
    a = monic(b);
    b = r.empty() ? std::vector<Rat>{Rat(0)} : r;
  }
  return monic(a);
}

// Largest root of a real-rooted squarefree polynomial if it is an integer.
// Newton from an integer above all roots, rounding up, never crosses the root.
std::optional<mpz_class> largest_root(const std::vector<Rat>& c) {
  const size_t d = c.size() - 1;
  std::vector<Rat> f(c.size()), df(d);
  for (size_t i = 0; i <= d; ++i) f[i] = c[i] / c[d];
  for (size_t i = 1; i <= d; ++i) df[i - 1] = f[i] * Rat(static_cast<long>(i));
  // Fujiwara bound, rounded up to a power of two
  long e = 0;
  for (size_t k = 1; k <= d; ++k) {
    const Rat& v = f[d - k];
    if (!sgn(v)) continue;
    long lb = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2)) -
              static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2)) + 1;
    e = std::max(e, (lb + static_cast<long>(k) - 1) / static_cast<long>(k) + 1);
  }
  mpz_class x = 1;
  x <<= static_cast<mp_bitcnt_t>(e + 1);
  for (;;) {
    Rat p = horner(f, Rat(x));
    if (!sgn(p)) return x;
    Rat dp = horner(df, Rat(x));
    if (sgn(p) < 0 || sgn(dp) <= 0) return std::nullopt;  // not real-rooted
    Rat y = Rat(x) - p / dp;
    mpz_class nx;
    mpz_cdiv_q(nx.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    // a short step stalls; then walk down one integer, the sign of p
    // tells whether a root was crossed
    x = nx < x ? nx : mpz_class(x - 1);
  }
}

}  // namespace

std::optional<std::vector<std::pair<Rat, int>>> rational_spectrum(const QMat& m) {
  const int n = m.rows();
  std::vector<std::pair<Rat, int>> out;
  if (n == 0) return out;
  // Scale to an integer matrix so rational eigenvalues are integers.
  mpz_class D = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sgn(m.at(i, j))) D = lcm(D, m.at(i, j).get_den());
  QMat A = m.scaled(Rat(D));
  std::vector<Rat> c = charpoly(A);
  int found = 0;
  int z = 0;
  while (c.size() > 1 && !sgn(c[0])) {
    c.erase(c.begin());
    ++z;
  }
  if (z) {
    out.emplace_back(Rat(0), z);
    found += z;
  }
  if (c.size() > 1) {
    std::vector<Rat> dc(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * Rat(static_cast<long>(i));
    std::vector<Rat> q = poly_div(c, poly_gcd(c, dc));
    while (q.size() > 1) {
      auto r = largest_root(q);
      if (!r) return std::nullopt;
      const Rat hit(*r);
      q = deflate(q, hit);
      int mult = 0;
      while (c.size() > 1 && !sgn(horner(c, hit))) {
        c = deflate(c, hit);
        ++mult;
      }
      out.emplace_back(hit / Rat(D), mult);
      found += mult;
    }
  }
  if (found != n) return std::nullopt;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace wc
