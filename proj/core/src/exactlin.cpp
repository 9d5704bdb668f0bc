#include "maninkit/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace maninkit {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Vec Mat::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<long>(i * cols_),
             data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_row(std::size_t i, const Vec& v) {
  if (v.size() != cols_) throw DimensionError("set_row: length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void Mat::set_col(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw DimensionError("set_col: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool Mat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Mat::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

Rational Mat::max_abs() const {
  Rational m = 0;
  for (const auto& x : data_) {
    Rational a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape mismatch");
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape mismatch");
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Mat operator-(const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat operator*(const Rational& s, const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  Vec r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector sum length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector difference length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Rational& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("dot length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational bilinear(const Vec& a, const Mat& Q, const Vec& b) { return dot(a, Q * b); }

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
  Mat c(a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
  Mat c(a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

RrefResult rref(const Mat& m) {
  RrefResult out{m, {}};
  Mat& r = out.reduced;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < r.cols() && lead < r.rows(); ++c) {
    std::size_t p = lead;
    while (p < r.rows() && sgn(r(p, c)) == 0) ++p;
    if (p == r.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(lead, j));
    Rational inv = 1 / r(lead, c);
    for (std::size_t j = c; j < r.cols(); ++j) r(lead, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == lead || sgn(r(i, c)) == 0) continue;
      Rational f = r(i, c);
      for (std::size_t j = c; j < r.cols(); ++j) r(i, j) -= f * r(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  return out;
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Rational determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  Mat a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RrefResult r = rref(hstack(m, Mat::identity(n)));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw InconsistentSystem("matrix is singular");
  return r.reduced.block(0, n, n, n);
}

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace canonicalize(const Mat& rows, std::size_t ambient) {
  if (rows.rows() > 0 && rows.cols() != ambient) throw DimensionError("canonicalize: ambient mismatch");
  Subspace s(ambient);
  if (rows.rows() == 0) return s;
  RrefResult r = rref(rows);
  s.basis_ = r.reduced.block(0, 0, r.pivots.size(), ambient);
  s.pivots_ = r.pivots;
  return s;
}

Subspace canonicalize(const Mat& rows) { return canonicalize(rows, rows.cols()); }

Subspace span(const std::vector<Vec>& vectors, std::size_t ambient) {
  return canonicalize(Mat::from_rows(vectors, ambient), ambient);
}

Subspace full_space(std::size_t n) { return canonicalize(Mat::identity(n), n); }

static void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionError("subspaces live in different ambient spaces");
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return canonicalize(vstack(a.basis(), b.basis()), a.ambient());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const std::size_t n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  // x = sum_i c_i a_i = sum_j d_j b_j  <=>  [A^T | -B^T] (c;d) = 0
  Mat sys = hstack(a.basis().transpose(), -b.basis().transpose());
  Subspace k = kernel(sys);
  Mat rows(k.dim(), n);
  for (std::size_t r = 0; r < k.dim(); ++r) {
    Vec c = k.vector(r);
    Vec x(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (sgn(c[i]) != 0) x = vec_add(x, vec_scale(c[i], a.vector(i)));
    rows.set_row(r, x);
  }
  return canonicalize(rows, n);
}

Vec coords(const Subspace& s, const Vec& v) {
  if (v.size() != s.ambient()) throw DimensionError("coords: ambient mismatch");
  Vec c(s.dim());
  Vec rebuilt(s.ambient());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    c[i] = v[s.pivots()[i]];
    if (sgn(c[i]) != 0) rebuilt = vec_add(rebuilt, vec_scale(c[i], s.vector(i)));
  }
  if (rebuilt != v) throw InconsistentSystem("vector does not lie in the subspace");
  return c;
}

bool contains(const Subspace& s, const Vec& v) {
  try {
    coords(s, v);
    return true;
  } catch (const InconsistentSystem&) {
    return false;
  }
}

bool contains(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t);
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (!contains(s, t.vector(i))) return false;
  return true;
}

SymForm::SymForm(Mat g) : gram(std::move(g)) {
  if (!gram.is_symmetric()) throw DimensionError("SymForm gram matrix must be symmetric");
}

Subspace orthogonal(const Subspace& a, const Mat& Q) {
  if (Q.rows() != a.ambient() || Q.cols() != a.ambient()) throw DimensionError("orthogonal: form size mismatch");
  if (a.dim() == 0) return full_space(a.ambient());
  return kernel(a.basis() * Q);
}

Subspace orthogonal(const Subspace& a, const SymForm& Q) { return orthogonal(a, Q.gram); }

bool is_isotropic(const Subspace& a, const Mat& Q) {
  return (a.basis() * Q * a.basis().transpose()).is_zero();
}

Signature signature(const Mat& gram) {
  if (!gram.is_symmetric()) throw DimensionError("signature needs a symmetric matrix");
  Mat a = gram;
  const std::size_t n = a.rows();
  Signature sig;
  std::size_t k = 0;
  // Symmetric Gaussian elimination: every step is a congruence a <- P^T a P.
  while (k < n) {
    std::size_t p = k;
    while (p < n && sgn(a(p, p)) == 0) ++p;
    if (p == n) {
      std::size_t i = n, j = n;
      for (std::size_t r = k; r < n && i == n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
          if (sgn(a(r, c)) != 0) {
            i = r;
            j = c;
            break;
          }
      if (i == n) break;  // remaining block is zero
      // row_i += row_j, col_i += col_j gives a(i,i) = 2 a(i,j) != 0
      for (std::size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
      for (std::size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
      p = i;
    }
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(p, c), a(k, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, p), a(r, k));
    }
    const Rational piv = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rational f = a(i, k) / piv;
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t r = k; r < n; ++r) a(r, i) -= f * a(r, k);
    }
    if (sgn(piv) > 0)
      ++sig.positive;
    else
      ++sig.negative;
    ++k;
  }
  sig.zero = n - sig.positive - sig.negative;
  return sig;
}

Signature signature(const SymForm& Q) { return signature(Q.gram); }

Subspace kernel(const Mat& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return full_space(n);
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    vecs.push_back(std::move(v));
  }
  return span(vecs, n);
}

Subspace image(const Mat& m) { return canonicalize(m.transpose(), m.rows()); }

Vec solve(const Mat& m, const Vec& b) {
  if (m.rows() != b.size()) throw DimensionError("solve: rhs length mismatch");
  const std::size_t n = m.cols();
  Mat aug(m.rows(), n + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, n) = b[i];
  RrefResult r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == n) throw InconsistentSystem("linear system is inconsistent");
  Vec x(n);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, n);
  return x;
}

Mat solve(const Mat& m, const Mat& b) {
  Mat x(m.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_col(j, solve(m, b.col(j)));
  return x;
}

Subspace complement_extend(const Subspace& a) {
  const std::size_t n = a.ambient();
  Subspace acc = a;
  std::vector<Vec> picked;
  for (std::size_t i = 0; i < n && acc.dim() < n; ++i) {
    Vec e = unit_vector(n, i);
    if (contains(acc, e)) continue;
    picked.push_back(e);
    acc = sum(acc, span({e}, n));
  }
  return span(picked, n);
}

}  // namespace maninkit
