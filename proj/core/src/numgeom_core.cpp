#include <cmath>
#include <stdexcept>

#include "maninkit/numgeom.hpp"

namespace maninkit::num {

MatX to_float(const Mat& m) {
  MatX out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) out(i, k) = m(i, k).get_d();
  return out;
}

VecX to_float(const Vec& v) {
  VecX out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].get_d();
  return out;
}

Rational snap_scalar(double x, int bits) {
  const double scale = std::ldexp(1.0, bits);
  Rational q(static_cast<long>(std::llround(x * scale)));
  q /= Rational(mpz_class(1) << bits);
  q.canonicalize();
  return q;
}

Mat snap(const MatX& m, int bits) {
  Mat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out(i, k) = snap_scalar(m(i, k), bits);
  return out;
}

Vec snap(const VecX& v, int bits) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = snap_scalar(v(i), bits);
  return out;
}

Point to_float(const ExactPoint& p) {
  Point out;
  for (const auto& g : p.g) out.g.push_back(to_float(g));
  out.mu = to_float(p.mu);
  return out;
}

double max_abs(const MatX& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

namespace {
MatX orthonormal_rows(const MatX& rows) {
  if (rows.rows() == 0) return MatX(rows.cols(), 0);
  Eigen::JacobiSVD<MatX> svd(rows.transpose(), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}
}  // namespace

double subspace_distance(const MatX& rows_a, const MatX& rows_b) {
  MatX ua = orthonormal_rows(rows_a), ub = orthonormal_rows(rows_b);
  if (ua.cols() != ub.cols()) return 1.0;
  if (ua.cols() == 0) return 0.0;
  MatX resid = ua - ub * (ub.transpose() * ua);
  return resid.norm() == 0 ? 0.0 : Eigen::JacobiSVD<MatX>(resid).singularValues()(0);
}

// ---------------------------------------------------------------------------

MatX expm(const MatX& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  MatX x = a / std::ldexp(1.0, squarings);
  MatX result = MatX::Identity(a.rows(), a.cols());
  MatX term = result;
  for (int k = 1; k <= 12; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

MatX logm(const MatX& a) {
  const Eigen::Index n = a.rows();
  const MatX I = MatX::Identity(n, n);
  MatX y = a;
  int roots = 0;
  while ((y - I).cwiseAbs().colwise().sum().maxCoeff() > 0.25) {
    if (++roots > 40) throw std::domain_error("logm: no convergence of square roots");
    MatX z = I;
    for (int it = 0; it < 100; ++it) {
      MatX yn = 0.5 * (y + z.inverse());
      MatX zn = 0.5 * (z + y.inverse());
      const double change = (yn - y).cwiseAbs().maxCoeff();
      y = yn;
      z = zn;
      if (change < 1e-15) break;
    }
  }
  const MatX x = y - I;
  MatX result = MatX::Zero(n, n);
  MatX power = I;
  for (int k = 1; k <= 80; ++k) {
    power = power * x;
    const MatX term = power / static_cast<double>(k);
    result += (k % 2 == 1) ? term : MatX(-term);
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return result * std::ldexp(1.0, roots);
}

VecX FloatLie::bracket(const VecX& u, const VecX& v) const {
  VecX out = VecX::Zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u(i) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v(j) == 0) continue;
      for (std::size_t k = 0; k < n; ++k) out(k) += u(i) * v(j) * (*this)(i, j, k);
    }
  }
  return out;
}

MatX FloatLie::ad(const VecX& u) const {
  MatX out = MatX::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) out.col(j) = bracket(u, VecX::Unit(n, j));
  return out;
}

FloatLie to_float(const LieAlgebra& L) {
  FloatLie f;
  f.n = L.dim();
  f.c.resize(f.n * f.n * f.n);
  for (std::size_t i = 0; i < f.n; ++i)
    for (std::size_t j = 0; j < f.n; ++j)
      for (std::size_t k = 0; k < f.n; ++k) f.c[(i * f.n + j) * f.n + k] = L.c(i, j, k).get_d();
  return f;
}

VecX uniform_ball(Rng& rng, std::size_t n, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  VecX v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = normal(rng);
  const double norm = v.norm();
  if (norm == 0) return VecX::Zero(n);
  return v * (radius * std::pow(unif(rng), 1.0 / static_cast<double>(n)) / norm);
}

// ---------------------------------------------------------------------------
// Finite differences

namespace {
void check_step(double h) {
  if (!(h > 1e-12) || !std::isfinite(h)) throw StepUnderflow("finite-difference step must be a finite number > 1e-12");
}

VecX central(const Space& M, const Field& F, const Point& p, const VecX& dir, double h) {
  return (F(M.flow(p, dir, h)) - F(M.flow(p, dir, -h))) / (2 * h);
}
}  // namespace

VecX fd_derivative(const Space& M, const Field& F, const Point& p, const VecX& dir, const FDConfig& cfg) {
  check_step(cfg.h);
  if (cfg.scheme == Scheme::Central) return central(M, F, p, dir, cfg.h);
  return (4.0 * central(M, F, p, dir, cfg.h / 2) - central(M, F, p, dir, cfg.h)) / 3.0;
}

MatX fd_jacobian(const Space& M, const Field& F, const Point& p, const FDConfig& cfg) {
  MatX out;
  for (std::size_t k = 0; k < M.dim; ++k) {
    VecX col = fd_derivative(M, F, p, VecX::Unit(M.dim, k), cfg);
    if (k == 0) out.resize(col.size(), M.dim);
    out.col(k) = col;
  }
  return out;
}

namespace {
std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<std::size_t> unflatten(std::size_t idx, std::size_t len, std::size_t dim) {
  std::vector<std::size_t> t(len);
  for (std::size_t l = len; l-- > 0;) {
    t[l] = idx % dim;
    idx /= dim;
  }
  return t;
}

std::size_t flatten(const std::vector<std::size_t>& t, std::size_t dim) {
  std::size_t idx = 0;
  for (auto i : t) idx = idx * dim + i;
  return idx;
}
}  // namespace

VecX exterior_derivative(const Space& M, const Field& form, std::size_t degree, const Point& p,
                         const FDConfig& cfg) {
  const std::size_t n = M.dim;
  const VecX w = form(p);
  const MatX J = fd_jacobian(M, form, p, cfg);
  const std::size_t total = ipow(n, degree + 1);
  VecX out = VecX::Zero(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto t = unflatten(idx, degree + 1, n);
    double acc = 0;
    for (std::size_t l = 0; l <= degree; ++l) {
      std::vector<std::size_t> rest;
      for (std::size_t q = 0; q <= degree; ++q)
        if (q != l) rest.push_back(t[q]);
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      acc += sign * J(flatten(rest, n), t[l]);
    }
    for (std::size_t l = 0; l <= degree; ++l)
      for (std::size_t m = l + 1; m <= degree; ++m) {
        const double sign = ((l + m) % 2 == 0) ? 1.0 : -1.0;
        std::vector<std::size_t> rest{0};
        for (std::size_t q = 0; q <= degree; ++q)
          if (q != l && q != m) rest.push_back(t[q]);
        for (std::size_t k = 0; k < n; ++k) {
          const double c = M.frame(t[l], t[m], k);
          if (c == 0) continue;
          rest[0] = k;
          acc += sign * c * w(flatten(rest, n));
        }
      }
    out(idx) = acc;
  }
  return out;
}

VecX matrix_to_tensor(const MatX& m) {
  VecX out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

VecX pullback(const VecX& form, std::size_t degree, const MatX& A) {
  const std::size_t t = A.rows(), s = A.cols();
  VecX cur = form;
  // Contract one slot at a time: slot l moves from target to source dimension.
  for (std::size_t l = 0; l < degree; ++l) {
    const std::size_t before = ipow(s, l), after = ipow(t, degree - l - 1);
    VecX next = VecX::Zero(before * s * after);
    for (std::size_t b = 0; b < before; ++b)
      for (std::size_t a = 0; a < t; ++a)
        for (std::size_t i = 0; i < s; ++i) {
          const double coef = A(a, i);
          if (coef == 0) continue;
          for (std::size_t r = 0; r < after; ++r)
            next((b * s + i) * after + r) += coef * cur((b * t + a) * after + r);
        }
    cur = std::move(next);
  }
  return cur;
}

VecX contract_first(const VecX& form, std::size_t degree, std::size_t dim, const VecX& X) {
  const std::size_t after = ipow(dim, degree - 1);
  VecX out = VecX::Zero(after);
  for (std::size_t a = 0; a < dim; ++a)
    if (X(a) != 0) out += X(a) * form.segment(a * after, after);
  return out;
}

}  // namespace maninkit::num
