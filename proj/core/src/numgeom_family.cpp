#include <cmath>
#include <stdexcept>

#include "maninkit/numgeom.hpp"

namespace maninkit::num {

namespace {

Mat flatten_columns(const std::vector<Mat>& basis) {
  const std::size_t N = basis.at(0).rows();
  Mat out(N * N, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out(i * N + j, k) = basis[k](i, j);
  return out;
}

Vec flatten_exact(const Mat& m) {
  Vec v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

MatX block_diag(const MatX& a, const MatX& b) {
  MatX out = MatX::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MatrixGroup

MatrixGroup::MatrixGroup(LieAlgebra lie, std::vector<Mat> basis, Shape shape)
    : lie_(std::move(lie)), basis_(std::move(basis)), shape_(shape) {
  const std::size_t n = lie_.dim();
  if (basis_.size() != n) throw std::invalid_argument("matrix basis has the wrong length");
  size_ = basis_[0].rows();
  // The abstract bracket must be minus the commutator.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat comm = basis_[j] * basis_[i] - basis_[i] * basis_[j];
      Mat expect(size_, size_);
      for (std::size_t k = 0; k < n; ++k) expect = expect + lie_.c(i, j, k) * basis_[k];
      if (!(comm == expect)) throw std::invalid_argument("matrix basis does not realize the bracket");
    }
  flie_ = to_float(lie_);
  for (const auto& b : basis_) fbasis_.push_back(to_float(b));
  flat_exact_ = flatten_columns(basis_);
  MatX F = to_float(flat_exact_);
  flat_pinv_ = (F.transpose() * F).inverse() * F.transpose();
}

MatrixGroup MatrixGroup::so3() {
  std::vector<Mat> basis;
  for (int i = 0; i < 3; ++i) {
    Mat L(3, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        // Levi-Civita symbol
        int e = (i - j) * (j - k) * (k - i) / 2;
        L(j, k) = e;
      }
    basis.push_back(L);
  }
  return MatrixGroup(maninkit::so3(), basis, Shape::Rotation3);
}

MatrixGroup MatrixGroup::sl2() {
  std::vector<Mat> basis{Mat{{-1, 0}, {0, 1}}, Mat{{0, 1}, {0, 0}}, Mat{{0, 0}, {1, 0}}};
  return MatrixGroup(maninkit::sl2(), basis, Shape::Unimodular2);
}

MatrixGroup MatrixGroup::heis3() {
  std::vector<Mat> basis{Mat{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, Mat{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}},
                         Mat{{0, 0, -1}, {0, 0, 0}, {0, 0, 0}}};
  return MatrixGroup(maninkit::heis3(), basis, Shape::Unipotent3);
}

MatX MatrixGroup::hat(const VecX& xi) const {
  MatX out = MatX::Zero(size_, size_);
  for (std::size_t k = 0; k < n(); ++k) out += xi(k) * fbasis_[k];
  return out;
}

VecX MatrixGroup::vee(const MatX& m) const {
  VecX flat(size_ * size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) flat(i * size_ + j) = m(i, j);
  return flat_pinv_ * flat;
}

MatX MatrixGroup::Ad(const MatX& g) const {
  const MatX ginv = g.inverse();
  MatX out(n(), n());
  for (std::size_t k = 0; k < n(); ++k) out.col(k) = vee(g * fbasis_[k] * ginv);
  return out;
}

Mat MatrixGroup::Ad_exact(const Mat& g) const {
  const Mat ginv = inverse(g);
  Mat out(n(), n());
  for (std::size_t k = 0; k < n(); ++k) out.set_col(k, solve(flat_exact_, flatten_exact(g * basis_[k] * ginv)));
  return out;
}

Mat MatrixGroup::snap(const MatX& g, int bits) const {
  switch (shape_) {
    case Shape::Rotation3: {
      // Cayley parametrization keeps the rational point exactly orthogonal.
      const MatX I = MatX::Identity(3, 3);
      MatX K = (g - I) * (g + I).inverse();
      Mat Ke(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          Ke(i, j) = snap_scalar(0.5 * (K(i, j) - K(j, i)), bits);
          Ke(j, i) = -Ke(i, j);
        }
      const Mat Ie = Mat::identity(3);
      return inverse(Ie - Ke) * (Ie + Ke);
    }
    case Shape::Unimodular2: {
      Mat out(2, 2);
      if (std::abs(g(0, 0)) >= std::abs(g(1, 1))) {
        out(0, 0) = snap_scalar(g(0, 0), bits);
        out(0, 1) = snap_scalar(g(0, 1), bits);
        out(1, 0) = snap_scalar(g(1, 0), bits);
        if (sgn(out(0, 0)) == 0) throw std::domain_error("cannot snap a near-singular SL(2) element");
        out(1, 1) = (1 + out(0, 1) * out(1, 0)) / out(0, 0);
      } else {
        out(1, 1) = snap_scalar(g(1, 1), bits);
        out(0, 1) = snap_scalar(g(0, 1), bits);
        out(1, 0) = snap_scalar(g(1, 0), bits);
        out(0, 0) = (1 + out(0, 1) * out(1, 0)) / out(1, 1);
      }
      return out;
    }
    case Shape::Unipotent3: {
      Mat out = Mat::identity(3);
      out(0, 1) = snap_scalar(g(0, 1), bits);
      out(0, 2) = snap_scalar(g(0, 2), bits);
      out(1, 2) = snap_scalar(g(1, 2), bits);
      return out;
    }
  }
  throw std::logic_error("unknown group shape");
}

MatX MatrixGroup::sample(Rng& rng, double radius) const { return exp(uniform_ball(rng, n(), radius)); }

// ---------------------------------------------------------------------------
// GroupFamily

std::vector<std::string> family_tags() { return catalog_tags(); }

GroupFamily::GroupFamily(const std::string& tag, const std::string& splitting) : tag_(tag) {
  entry_ = &catalog_entry(tag);
  kind_ = entry_->kind;
  if (tag == "pair_so3" || tag == "cotangent_so3")
    G_ = MatrixGroup::so3();
  else if (tag == "pair_sl2")
    G_ = MatrixGroup::sl2();
  else if (tag == "cotangent_heis3")
    G_ = MatrixGroup::heis3();
  else
    throw std::out_of_range("no matrix realization for family '" + tag + "'");
  if (!(G_.lie() == entry_->g)) throw std::logic_error("matrix group does not match the catalog algebra");

  split_name_ = splitting.empty() ? entry_->splittings.front().name : splitting;
  split_ = catalog_splitting(*entry_, split_name_);
  lqb_ = split_to_lqb(split_);

  const std::size_t n = G_.n();
  d_ = to_float(entry_->pair.d);
  Q_ = to_float(entry_->pair.Q);
  Qinv_ = Q_.inverse();
  iota_ = to_float(split_.iota());
  j_ = to_float(split_.j());
  r_ = to_float(r_matrix(split_));
  if (entry_->B) B_ = to_float(*entry_->B);

  const MatrixGroup* G = &G_;
  S_.dim = n;
  D_.dim = 2 * n;
  D_.frame = d_;
  D_.name = "D";
  S_.name = "S";
  if (kind_ == FamilyKind::Pair) {
    S_.frame = G_.flie();
    S_.flow = [G](const Point& p, const VecX& dir, double t) {
      return Point{{G->exp(t * dir) * p.g[0]}, VecX()};
    };
    D_.flow = [G, n](const Point& p, const VecX& dir, double t) {
      return Point{{G->exp(t * dir.head(n)) * p.g[0], G->exp(t * dir.tail(n)) * p.g[1]}, VecX()};
    };
  } else {
    S_.frame = to_float(abelian(n));
    S_.flow = [](const Point& p, const VecX& dir, double t) { return Point{{}, p.mu + t * dir}; };
    D_.flow = [G, n](const Point& p, const VecX& dir, double t) {
      // exp_D(t(u, nu)) = (exp(tu), int_0^t Ad^*_{exp(su)} nu ds), then left multiply.
      const VecX u = dir.head(n), nu = dir.tail(n);
      MatX aug = MatX::Zero(n + 1, n + 1);
      aug.topLeftCorner(n, n) = t * G->flie().ad(u).transpose();
      aug.topRightCorner(n, 1) = t * nu;
      const MatX E = expm(aug);
      const VecX m = E.topRightCorner(n, 1);
      const MatX coAd = E.topLeftCorner(n, n);
      return Point{{G->exp(t * u) * p.g[0]}, VecX(m + coAd * p.mu)};
    };
  }
}

ExactPoint GroupFamily::sample_S(Rng& rng) const {
  if (kind_ == FamilyKind::Pair) return ExactPoint{{G_.snap(G_.sample(rng))}, Vec()};
  return ExactPoint{{}, snap(uniform_ball(rng, n(), 1.5), 16)};
}

ExactPoint GroupFamily::sample_D(Rng& rng) const {
  if (kind_ == FamilyKind::Pair) {
    Mat a = G_.snap(G_.sample(rng));
    Mat b = G_.snap(G_.sample(rng));
    return ExactPoint{{a, b}, Vec()};
  }
  Mat g = G_.snap(G_.sample(rng));
  return ExactPoint{{g}, snap(uniform_ball(rng, n(), 1.5), 16)};
}

Mat GroupFamily::sample_G(Rng& rng) const { return G_.snap(G_.sample(rng)); }

Point GroupFamily::mult(const Point& a, const Point& b) const {
  if (kind_ == FamilyKind::Pair) return Point{{a.g[0] * b.g[0], a.g[1] * b.g[1]}, VecX()};
  const MatX coAd = G_.Ad(a.g[0].inverse()).transpose();
  return Point{{a.g[0] * b.g[0]}, VecX(a.mu + coAd * b.mu)};
}

Point GroupFamily::inverse(const Point& a) const {
  if (kind_ == FamilyKind::Pair) return Point{{a.g[0].inverse(), a.g[1].inverse()}, VecX()};
  // (g, mu)^{-1} = (g^{-1}, -Ad^*_{g^{-1}} mu) and Ad^*_{g^{-1}} = Ad_g^T.
  return Point{{a.g[0].inverse()}, VecX(-G_.Ad(a.g[0]).transpose() * a.mu)};
}

MatX GroupFamily::Ad_D(const Point& a) const {
  const std::size_t n = this->n();
  if (kind_ == FamilyKind::Pair) return block_diag(G_.Ad(a.g[0]), G_.Ad(a.g[1]));
  const MatX Ad = G_.Ad(a.g[0]);
  MatX out = MatX::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = Ad;
  out.bottomRightCorner(n, n) = Ad.inverse().transpose();
  for (std::size_t k = 0; k < n; ++k)
    out.block(n, k, n, 1) = -G_.flie().ad(Ad.col(k)).transpose() * a.mu;
  return out;
}

Point GroupFamily::p(const Point& a) const {
  if (kind_ == FamilyKind::Pair) return Point{{a.g[0] * a.g[1].inverse()}, VecX()};
  return Point{{}, a.mu};
}

Point GroupFamily::embed_G(const MatX& g) const {
  if (kind_ == FamilyKind::Pair) return Point{{g, g}, VecX()};
  return Point{{g}, VecX::Zero(n())};
}

MatX GroupFamily::rho_S(const Point& x) const {
  const std::size_t n = this->n();
  MatX out(n, 2 * n);
  if (kind_ == FamilyKind::Pair) {
    out.leftCols(n) = MatX::Identity(n, n);
    out.rightCols(n) = -G_.Ad(x.g[0]);
  } else {
    for (std::size_t i = 0; i < n; ++i) out.col(i) = G_.flie().ad(VecX::Unit(n, i)).transpose() * x.mu;
    out.rightCols(n) = MatX::Identity(n, n);
  }
  return out;
}

MatX GroupFamily::s(const Point& x) const {
  const std::size_t n = this->n();
  MatX out = MatX::Zero(2 * n, n);
  if (kind_ == FamilyKind::Pair) {
    out.topRows(n) = 0.5 * MatX::Identity(n, n);
    out.bottomRows(n) = -0.5 * G_.Ad(x.g[0].inverse());
  } else {
    out.bottomRows(n) = MatX::Identity(n, n);
  }
  return out;
}

MatX GroupFamily::sigma(const Point& x) const { return s(x).transpose() * Q_ * iota_; }
MatX GroupFamily::rho(const Point& x) const { return rho_S(x) * iota_; }
MatX GroupFamily::sigma_bar(const Point& x) const { return (rho_S(x) * j_).transpose(); }
MatX GroupFamily::rho_bar(const Point& x) const { return j_.transpose() * Q_ * s(x); }
MatX GroupFamily::pi_S(const Point& x) const { return (rho(x) * sigma_bar(x)).transpose(); }

MatX GroupFamily::pi_S_from_r(const Point& x) const {
  const MatX lift = Qinv_ * rho_S(x).transpose();
  return -(lift.transpose() * r_ * lift);
}

VecX GroupFamily::phi_S(const Point&) const {
  const std::size_t n = this->n();
  VecX out = VecX::Zero(n * n * n);
  if (kind_ != FamilyKind::Pair) return out;
  const FloatLie& g = G_.flie();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0;
        for (std::size_t m = 0; m < n; ++m) acc += g(i, j, m) * B_(m, k);
        out((i * n + j) * n + k) = -0.5 * acc;
      }
  return out;
}

VecX GroupFamily::coordinates(const Point& x) const {
  if (kind_ == FamilyKind::Cotangent) return x.mu;
  const MatX& m = x.g[0];
  VecX out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

Point GroupFamily::act(const MatX& g, const Point& x) const {
  if (kind_ == FamilyKind::Pair) return Point{{g * x.g[0] * g.inverse()}, VecX()};
  return Point{{}, VecX(G_.Ad(g.inverse()).transpose() * x.mu)};
}

MatX GroupFamily::act_tangent(const MatX& g, const Point&) const {
  if (kind_ == FamilyKind::Pair) return G_.Ad(g);
  return G_.Ad(g.inverse()).transpose();
}

MatX GroupFamily::dp(const Point& a) const { return rho_S(p(a)); }

MatX GroupFamily::dpbar(const Point& a) const {
  const Point ai = inverse(a);
  return -rho_S(p(ai)) * Ad_D(ai);
}

MatX GroupFamily::theta(const Point& a) const {
  const Point x = p(a);
  const std::size_t m = 2 * n();
  return Ad_D(inverse(a)) * (MatX::Identity(m, m) - s(x) * rho_S(x));
}

MatX GroupFamily::thetaL_theta(const Point& a) const {
  const MatX AL = Ad_D(inverse(a));
  const MatX T = theta(a);
  return AL.transpose() * Q_ * T - T.transpose() * Q_ * AL;
}

MatX GroupFamily::omega_D(const Point& a) const {
  const Point ai = inverse(a);
  const MatX B = theta(ai) * (-Ad_D(ai));  // Inv^* theta in the frame at a
  const MatX right = Q_ * B - B.transpose() * Q_;
  return 0.5 * (right - thetaL_theta(a));
}

MatX GroupFamily::omega_D_alt(const Point& a) const {
  const Point ai = inverse(a);
  const std::size_t m = 2 * n();
  const MatX M = Ad_D(a) * theta(a) + theta(ai) * Ad_D(ai) - MatX::Identity(m, m);
  return M.transpose() * Q_;
}

MatX GroupFamily::pi_D(const Point& a) const {
  const MatX Ad = Ad_D(a);
  return j_ * iota_.transpose() - Ad * iota_ * j_.transpose() * Ad.transpose();
}

VecX GroupFamily::phi_D() const {
  const std::size_t m = 2 * n();
  VecX out = VecX::Zero(m * m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        double acc = 0;
        for (std::size_t q = 0; q < m; ++q) acc += d_(i, j, q) * Q_(q, k);
        out((i * m + j) * m + k) = 0.5 * acc;
      }
  return out;
}

double GroupFamily::groupoid_form(const MatX&, const Point& x, const VecX& V, const VecX& X, const VecX& V2,
                                  const VecX& X2) const {
  const MatX sig = sigma(x), rh = rho(x);
  const VecX sv = sig * V, sv2 = sig * V2;
  return sv.dot(rh * V2) + sv.dot(X2) - sv2.dot(X);
}

// ---------------------------------------------------------------------------
// Exact counterparts

Mat GroupFamily::Ad_D_exact(const ExactPoint& a) const {
  const std::size_t n = this->n();
  if (kind_ == FamilyKind::Pair) return block_diag(G_.Ad_exact(a.g[0]), G_.Ad_exact(a.g[1]));
  const Mat Ad = G_.Ad_exact(a.g[0]);
  Mat out(2 * n, 2 * n);
  out.set_block(0, 0, Ad);
  out.set_block(n, n, maninkit::inverse(Ad).transpose());
  const LieAlgebra& L = G_.lie();
  for (std::size_t k = 0; k < n; ++k) {
    Vec w = Ad.col(k);
    for (std::size_t q = 0; q < n; ++q) {
      Rational acc = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) acc += w[i] * L.c(i, q, m) * a.mu[m];
      out(n + q, k) = -acc;
    }
  }
  return out;
}

ExactPoint GroupFamily::inverse_exact(const ExactPoint& a) const {
  if (kind_ == FamilyKind::Pair) return ExactPoint{{maninkit::inverse(a.g[0]), maninkit::inverse(a.g[1])}, Vec()};
  const Mat AdT = G_.Ad_exact(a.g[0]).transpose();
  return ExactPoint{{maninkit::inverse(a.g[0])}, vec_scale(-1, AdT * a.mu)};
}

ExactPoint GroupFamily::p_exact(const ExactPoint& a) const {
  if (kind_ == FamilyKind::Pair) return ExactPoint{{a.g[0] * maninkit::inverse(a.g[1])}, Vec()};
  return ExactPoint{{}, a.mu};
}

Mat GroupFamily::rho_S_exact(const ExactPoint& x) const {
  if (kind_ == FamilyKind::Pair) return pair_dressing_point(entry_->pair, G_.Ad_exact(x.g[0])).rho_S;
  return cotangent_dressing_point(entry_->pair, entry_->g, x.mu).rho_S;
}

Mat GroupFamily::s_exact(const ExactPoint& x) const {
  const std::size_t n = this->n();
  Mat out(2 * n, n);
  if (kind_ == FamilyKind::Pair) {
    out.set_block(0, 0, make_rational(1, 2) * Mat::identity(n));
    out.set_block(n, 0, make_rational(-1, 2) * G_.Ad_exact(maninkit::inverse(x.g[0])));
  } else {
    out.set_block(n, 0, Mat::identity(n));
  }
  return out;
}

PointFrame GroupFamily::frame_exact(const ExactPoint& x) const {
  DressingPoint dp(entry_->pair, rho_S_exact(x));
  ConnectionAtPoint conn(dp, s_exact(x));
  return PointFrame(conn, split_);
}

Mat GroupFamily::dp_exact(const ExactPoint& a) const { return rho_S_exact(p_exact(a)); }

Mat GroupFamily::dpbar_exact(const ExactPoint& a) const {
  const ExactPoint ai = inverse_exact(a);
  return -(rho_S_exact(p_exact(ai)) * Ad_D_exact(ai));
}

Mat GroupFamily::theta_exact(const ExactPoint& a) const {
  const ExactPoint x = p_exact(a);
  const std::size_t m = 2 * n();
  return Ad_D_exact(inverse_exact(a)) * (Mat::identity(m) - s_exact(x) * rho_S_exact(x));
}

Mat GroupFamily::omega_D_exact(const ExactPoint& a) const {
  const ExactPoint ai = inverse_exact(a);
  const Mat& Q = entry_->pair.Q;
  const Mat B = -(theta_exact(ai) * Ad_D_exact(ai));
  const Mat AL = Ad_D_exact(ai);
  const Mat T = theta_exact(a);
  const Mat right = Q * B - B.transpose() * Q;
  const Mat left = AL.transpose() * Q * T - T.transpose() * Q * AL;
  return make_rational(1, 2) * (right - left);
}

// ---------------------------------------------------------------------------

DiracSpace product_dirac(const DiracSpace& a, const DiracSpace& b) {
  const std::size_t ma = a.m, mb = b.m, m = ma + mb;
  Mat rows(a.L.dim() + b.L.dim(), 2 * m);
  for (std::size_t r = 0; r < a.L.dim(); ++r)
    for (std::size_t k = 0; k < ma; ++k) {
      rows(r, k) = a.L.basis()(r, k);
      rows(r, m + k) = a.L.basis()(r, ma + k);
    }
  for (std::size_t r = 0; r < b.L.dim(); ++r)
    for (std::size_t k = 0; k < mb; ++k) {
      rows(a.L.dim() + r, ma + k) = b.L.basis()(r, k);
      rows(a.L.dim() + r, m + ma + k) = b.L.basis()(r, mb + k);
    }
  return dirac_from_rows(m, rows);
}

namespace {
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  LieAlgebra out(na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) out.c(i, j, k) = a.c(i, j, k);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) out.c(na + i, na + j, na + k) = b.c(i, j, k);
  return out;
}
}  // namespace

PointFrame product_frame(const PointFrame& a, const PointFrame& b) {
  const ManinPair& pa = a.split.pair();
  const ManinPair& pb = b.split.pair();
  ManinPair prod;
  prod.d = direct_sum(pa.d, pb.d);
  prod.Q = block_diag(pa.Q, pb.Q);
  const std::size_t da = pa.d.dim(), db = pb.d.dim();
  prod.g = canonicalize(block_diag(pa.g.basis(), pb.g.basis()), da + db);
  Subspace h = canonicalize(block_diag(a.split.h().basis(), b.split.h().basis()), da + db);
  IsotropicSplitting split(prod, h);
  DressingPoint dp(prod, block_diag(a.rho_S(), b.rho_S()));
  ConnectionAtPoint conn(dp, block_diag(a.s(), b.s()));
  return PointFrame(conn, split);
}

}  // namespace maninkit::num
