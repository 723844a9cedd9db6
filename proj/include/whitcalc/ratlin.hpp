#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wc {

using Rat = mpq_class;
using Vec = std::vector<Rat>;
using SparseVec = std::vector<std::pair<int, Rat>>;

/// Raised when two objects that must share an ambient space do not.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Canonicalised a/b (mpq_class(a, b) is not reduced).
Rat qr(long a, long b = 1);
Rat parse_rat(const std::string& s);
std::string to_string(const Rat& r);
std::string to_string(const Vec& v);

Vec zero_vec(int n);
Vec unit_vec(int n, int i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Rat& s, const Vec& v);
Rat dot(const Vec& a, const Vec& b);
void axpy(Vec& y, const Rat& a, const Vec& x);  // y += a*x
Vec to_dense(int n, const SparseVec& s);
SparseVec to_sparse(const Vec& v);

class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols);
  static QMat identity(int n);
  static QMat from_rows(const std::vector<Vec>& rows, int cols);
  static QMat from_cols(const std::vector<Vec>& cols, int rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
  Vec row(int i) const;
  Vec col(int j) const;

  Vec apply(const Vec& x) const;    // M x
  Vec apply_t(const Vec& x) const;  // M^T x

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat scaled(const Rat& s) const;
  QMat transpose() const;
  bool is_zero() const;
  bool operator==(const QMat& o) const;

 private:
  int r_ = 0;
  int c_ = 0;
  std::vector<Rat> a_;
};

/// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMat& m);
int rank(const QMat& m);
std::optional<QMat> inverse(const QMat& m);

/// Row space of a set of vectors in canonical form: reduced echelon,
/// each row scaled to a primitive integer vector with positive pivot.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : n_(ambient) {}
  static Subspace whole(int n);
  static Subspace span(int ambient, const std::vector<Vec>& vecs);
  static Subspace coordinate(int ambient, const std::vector<int>& idx);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  /// Coordinates of v in basis(); v must lie in the subspace.
  Vec coords(const Vec& v) const;
  /// {x : <b, x> = 0 for every basis vector b}.
  Subspace annihilator() const;
  QMat as_matrix() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

Subspace nullspace(const QMat& m);
Subspace column_space(const QMat& m);
Subspace image(const QMat& m, const Subspace& s);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// a + b is direct (a ∩ b = 0).
bool independent(const Subspace& a, const Subspace& b);
/// Some complement of b inside a (b ⊆ a): non-pivot rows of a relative to b.
Subspace complement_in(const Subspace& a, const Subspace& b);
std::optional<Vec> solve_affine(const QMat& m, const Vec& rhs);

/// Quotient a/k with k ⊆ a; the section is an echelon complement.
struct Quotient {
  Subspace ambient;
  Subspace kernel;
  int dim() const { return ambient.dim() - kernel.dim(); }
  Subspace section() const { return complement_in(ambient, kernel); }
};
Quotient make_quotient(const Subspace& a, const Subspace& k);

/// Characteristic polynomial, coefficients low to high (monic).
std::vector<Rat> charpoly(const QMat& m);
/// Rational eigenvalues with algebraic multiplicity; nullopt if the
/// characteristic polynomial does not split over Q.
std::optional<std::vector<std::pair<Rat, int>>> rational_spectrum(const QMat& m);

}  // namespace wc
