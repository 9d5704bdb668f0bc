#include "maninkit/manin.hpp"

#include <algorithm>

namespace maninkit {

LieAlgebra::LieAlgebra(std::size_t n) : n_(n), c_(n * n * n) {}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const Vec& v) {
  if (v.size() != n_) throw DimensionError("set_bracket: wrong length");
  for (std::size_t k = 0; k < n_; ++k) {
    c(i, j, k) = v[k];
    c(j, i, k) = -v[k];
  }
}

Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
  if (u.size() != n_ || v.size() != n_) throw DimensionError("bracket: wrong length");
  Vec r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(v[j]) == 0) continue;
      Rational w = u[i] * v[j];
      for (std::size_t k = 0; k < n_; ++k) r[k] += w * c(i, j, k);
    }
  }
  return r;
}

Mat LieAlgebra::ad(const Vec& u) const {
  Mat m(n_, n_);
  for (std::size_t j = 0; j < n_; ++j) m.set_col(j, bracket(u, unit_vector(n_, j)));
  return m;
}

Mat LieAlgebra::coad(const Vec& u) const { return -ad(u).transpose(); }

bool LieAlgebra::is_antisymmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (c(i, j, k) != -c(j, i, k)) return false;
  return true;
}

Rational jacobi_defect(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  Rational worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          // coefficient of e_m in [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
          Rational s = 0;
          for (std::size_t l = 0; l < n; ++l)
            s += L.c(i, j, l) * L.c(l, k, m) + L.c(j, k, l) * L.c(l, i, m) + L.c(k, i, l) * L.c(l, j, m);
          s = abs(s);
          if (s > worst) worst = s;
        }
  return worst;
}

Rational invariance_defect(const LieAlgebra& L, const Mat& Q) {
  const std::size_t n = L.dim();
  Rational worst = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) s += L.c(u, v, k) * Q(k, w) + Q(v, k) * L.c(u, w, k);
        s = abs(s);
        if (s > worst) worst = s;
      }
  return worst;
}

LieAlgebra change_basis(const LieAlgebra& L, const Mat& P) {
  const std::size_t n = L.dim();
  if (P.rows() != n || P.cols() != n) throw DimensionError("change_basis: P must be n x n");
  Mat Pt = P.transpose();  // columns are the new basis vectors
  Mat Pinv = inverse(Pt);
  LieAlgebra out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec br = Pinv * L.bracket(P.row(i), P.row(j));
      for (std::size_t k = 0; k < n; ++k) out.c(i, j, k) = br[k];
    }
  return out;
}

LieAlgebra abelian(std::size_t n) { return LieAlgebra(n); }

LieAlgebra so3() {
  LieAlgebra L(3);
  L.set_bracket(0, 1, {0, 0, 1});
  L.set_bracket(1, 2, {1, 0, 0});
  L.set_bracket(2, 0, {0, 1, 0});
  return L;
}

LieAlgebra sl2() {
  // basis (h, e, f)
  LieAlgebra L(3);
  L.set_bracket(0, 1, {0, 2, 0});
  L.set_bracket(0, 2, {0, 0, -2});
  L.set_bracket(1, 2, {1, 0, 0});
  return L;
}

LieAlgebra heis3() {
  LieAlgebra L(3);
  L.set_bracket(0, 1, {0, 0, 1});
  return L;
}

bool CheckReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

void CheckReport::add(std::string name, bool ok, std::string detail) {
  items.push_back({std::move(name), ok, std::move(detail)});
}

const CheckItem* CheckReport::find(const std::string& name) const {
  for (const auto& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

CheckReport validate_manin_pair(const ManinPair& P) {
  CheckReport rep;
  const std::size_t N = P.d.dim();
  bool shape = P.Q.rows() == N && P.Q.cols() == N && P.g.ambient() == N && N % 2 == 0;
  rep.add("shape", shape, shape ? "" : "dimension mismatch or odd dimension");
  if (!shape) return rep;
  rep.add("jacobi", sgn(jacobi_defect(P.d)) == 0);
  bool sym = P.Q.is_symmetric();
  rep.add("symmetric", sym);
  bool nondeg = sym && sgn(determinant(P.Q)) != 0;
  rep.add("nondegenerate", nondeg);
  if (sym) {
    Signature s = signature(P.Q);
    bool split = s.positive == N / 2 && s.negative == N / 2 && s.zero == 0;
    rep.add("signature", split,
            "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.zero) + ")");
  } else {
    rep.add("signature", false, "gram not symmetric");
  }
  Rational inv = invariance_defect(P.d, P.Q);
  rep.add("ad_invariant", sgn(inv) == 0, "defect " + to_string(inv));
  bool closed = true;
  for (std::size_t a = 0; a < P.g.dim() && closed; ++a)
    for (std::size_t b = a + 1; b < P.g.dim() && closed; ++b)
      closed = contains(P.g, P.d.bracket(P.g.vector(a), P.g.vector(b)));
  rep.add("subalgebra", closed);
  bool lag = P.g.dim() == N / 2 && is_isotropic(P.g, P.Q);
  rep.add("lagrangian", lag, "dim g = " + std::to_string(P.g.dim()));
  return rep;
}

ManinPair pair_direct_sum(const LieAlgebra& g, const Mat& B) {
  const std::size_t n = g.dim();
  if (B.rows() != n || B.cols() != n || !B.is_symmetric()) throw DimensionError("B must be a symmetric n x n form");
  if (sgn(determinant(B)) == 0) throw std::invalid_argument("B is degenerate");
  if (sgn(invariance_defect(g, B)) != 0) throw std::invalid_argument("B is not ad-invariant");
  ManinPair P;
  P.d = LieAlgebra(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        P.d.c(i, j, k) = g.c(i, j, k);
        P.d.c(n + i, n + j, n + k) = g.c(i, j, k);
      }
  P.Q = Mat(2 * n, 2 * n);
  P.Q.set_block(0, 0, B);
  P.Q.set_block(n, n, -B);
  Mat diag(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    diag(i, i) = 1;
    diag(i, n + i) = 1;
  }
  P.g = canonicalize(diag, 2 * n);
  return P;
}

ManinPair cotangent_pair(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  ManinPair P;
  P.d = LieAlgebra(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        P.d.c(i, j, k) = g.c(i, j, k);
        // [e_i, eps^j] = ad*_{e_i} eps^j = -sum_k c(i,k,j) eps^k
        P.d.c(i, n + j, n + k) = -g.c(i, k, j);
        P.d.c(n + j, i, n + k) = g.c(i, k, j);
      }
  P.Q = Mat(2 * n, 2 * n);
  P.Q.set_block(0, n, Mat::identity(n));
  P.Q.set_block(n, 0, Mat::identity(n));
  Mat first(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) first(i, i) = 1;
  P.g = canonicalize(first, 2 * n);
  return P;
}

LieQuasiBialgebra::LieQuasiBialgebra(LieAlgebra alg)
    : g(std::move(alg)), fstar(g.dim() * g.dim() * g.dim()), chi_(g.dim() * g.dim() * g.dim()) {}

void LieQuasiBialgebra::set_Fs(std::size_t a, std::size_t b, std::size_t k, const Rational& v) {
  Fs(a, b, k) = v;
  Fs(b, a, k) = -v;
}

void LieQuasiBialgebra::set_chi(std::size_t a, std::size_t b, std::size_t c, const Rational& v) {
  chi(a, b, c) = v;
  chi(b, c, a) = v;
  chi(c, a, b) = v;
  chi(b, a, c) = -v;
  chi(a, c, b) = -v;
  chi(c, b, a) = -v;
}

ManinPair drinfeld_double(const LieQuasiBialgebra& q) {
  const std::size_t n = q.dim();
  ManinPair P;
  P.d = LieAlgebra(2 * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < n; ++k) P.d.c(a, b, k) = q.g.c(a, b, k);
      // [e_a, eps^b] = sum_c F*(eps^b, eps^c)(e_a) e_c + ad*_{e_a} eps^b
      for (std::size_t c = 0; c < n; ++c) {
        P.d.c(a, n + b, c) = q.Fs(b, c, a);
        P.d.c(n + b, a, c) = -q.Fs(b, c, a);
      }
      for (std::size_t k = 0; k < n; ++k) {
        P.d.c(a, n + b, n + k) = -q.g.c(a, k, b);
        P.d.c(n + b, a, n + k) = q.g.c(a, k, b);
      }
      // [eps^a, eps^b] = sum_c chi(a,b,c) e_c + sum_k F*(a,b)_k eps^k
      for (std::size_t c = 0; c < n; ++c) P.d.c(n + a, n + b, c) = q.chi(a, b, c);
      for (std::size_t k = 0; k < n; ++k) P.d.c(n + a, n + b, n + k) = q.Fs(a, b, k);
    }
  P.Q = Mat(2 * n, 2 * n);
  P.Q.set_block(0, n, Mat::identity(n));
  P.Q.set_block(n, 0, Mat::identity(n));
  Mat first(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) first(i, i) = 1;
  P.g = canonicalize(first, 2 * n);
  return P;
}

Vec g_coords(const ManinPair& P, const Vec& x) { return coords(P.g, x); }

Mat iota_star(const ManinPair& P) { return P.g.basis() * P.Q; }

}  // namespace maninkit
