#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace maninkit {

// GMP rationals are always kept in canonical form (coprime, positive
// denominator) as long as every value passes through canonicalize().
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InconsistentSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec = std::vector<Rational>;

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::initializer_list<std::initializer_list<Rational>> init);

  static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_row(std::size_t i, const Vec& v);
  void set_col(std::size_t j, const Vec& v);

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;
  Rational max_abs() const;

  friend bool operator==(const Mat& a, const Mat& b);

  const std::vector<Rational>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(const Rational& s, const Mat& a);
Vec operator*(const Mat& a, const Vec& v);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& s, const Vec& a);
Rational dot(const Vec& a, const Vec& b);
Rational bilinear(const Vec& a, const Mat& Q, const Vec& b);
Vec unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

struct RrefResult {
  Mat reduced;                      // full reduced matrix, zero rows kept at the bottom
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
Rational determinant(const Mat& m);
Mat inverse(const Mat& m);

// Row space of a matrix, stored as its reduced row-echelon basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec vector(std::size_t i) const { return basis_.row(i); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  friend Subspace canonicalize(const Mat& rows, std::size_t ambient);

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

Subspace canonicalize(const Mat& rows, std::size_t ambient);
Subspace canonicalize(const Mat& rows);
Subspace span(const std::vector<Vec>& vectors, std::size_t ambient);
Subspace full_space(std::size_t n);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& s, const Vec& v);
bool contains(const Subspace& s, const Subspace& t);
// Coordinates of v with respect to the canonical basis; throws if v is not in s.
Vec coords(const Subspace& s, const Vec& v);

struct SymForm {
  Mat gram;
  SymForm() = default;
  explicit SymForm(Mat g);
  std::size_t dim() const { return gram.rows(); }
  Rational operator()(const Vec& a, const Vec& b) const { return bilinear(a, gram, b); }
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

Subspace orthogonal(const Subspace& a, const Mat& Q);
Subspace orthogonal(const Subspace& a, const SymForm& Q);
Signature signature(const Mat& gram);
Signature signature(const SymForm& Q);
bool is_isotropic(const Subspace& a, const Mat& Q);

// Null space {x : m x = 0}.
Subspace kernel(const Mat& m);
// Column space of m.
Subspace image(const Mat& m);
// Some x with m x = b; throws InconsistentSystem otherwise.
Vec solve(const Mat& m, const Vec& b);
// Solves m X = B column by column.
Mat solve(const Mat& m, const Mat& b);
// Complement spanned by the lowest-index standard vectors not already covered.
Subspace complement_extend(const Subspace& a);

}  // namespace maninkit
