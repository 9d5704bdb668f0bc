#include "maninkit/homog.hpp"

#include <stdexcept>
#include <utility>

namespace maninkit {

DressingPoint::DressingPoint(ManinPair p, Mat rho) : pair(std::move(p)), rho_S(std::move(rho)) {
  const std::size_t n = pair.half();
  if (rho_S.rows() != n || rho_S.cols() != 2 * n) throw DimensionError("rho_S must be n x 2n");
  if (rank(rho_S) != n) throw std::invalid_argument("rho_S is not surjective");
  if (!(rho_S * inverse(pair.Q) * rho_S.transpose()).is_zero())
    throw std::invalid_argument("rho_S Q^{-1} rho_S^T does not vanish");
}

ConnectionAtPoint::ConnectionAtPoint(DressingPoint b, Mat s_) : base(std::move(b)), s(std::move(s_)) {
  const std::size_t n = base.n();
  if (s.rows() != 2 * n || s.cols() != n) throw DimensionError("connection must be 2n x n");
  if (!(base.rho_S * s == Mat::identity(n))) throw std::invalid_argument("connection is not a right inverse of rho_S");
  if (!(s.transpose() * base.pair.Q * s).is_zero()) throw std::invalid_argument("connection is not isotropic");
}

ConnectionAtPoint make_connection(const DressingPoint& base, const Mat& right_inverse) {
  const std::size_t n = base.n();
  if (!(base.rho_S * right_inverse == Mat::identity(n))) throw std::invalid_argument("not a right inverse of rho_S");
  const Mat& Q = base.pair.Q;
  Mat corr = inverse(Q) * base.rho_S.transpose() * (right_inverse.transpose() * Q * right_inverse);
  return ConnectionAtPoint(base, right_inverse - make_rational(1, 2) * corr);
}

PointFrame::PointFrame(ConnectionAtPoint c, IsotropicSplitting j) : conn(std::move(c)), split(std::move(j)) {
  const ManinPair& P = conn.base.pair;
  const ManinPair& P2 = split.pair();
  if (!(P.d == P2.d) || !(P.Q == P2.Q) || !(P.g == P2.g)) throw std::invalid_argument("frame mixes different Manin pairs");
  const Mat& Q = P.Q;
  sigma = conn.s.transpose() * Q * split.iota();
  rho = conn.base.rho_S * split.iota();
  sigma_bar = (conn.base.rho_S * split.j()).transpose();
  rho_bar = split.j().transpose() * Q * conn.s;
}

bool FrameIdentityReport::pass() const {
  return connection_isotropic && connection_section && connection_dual_section && connection_completeness &&
         splitting_isotropic && splitting_section && splitting_completeness && algebra_identity &&
         cotangent_identity && isometry;
}

FrameIdentityReport check_frame_identities(const PointFrame& f) {
  FrameIdentityReport r;
  const std::size_t n = f.n();
  const Mat& Q = f.Q();
  const Mat& s = f.s();
  const Mat& rs = f.rho_S();
  const Mat I = Mat::identity(n), I2 = Mat::identity(2 * n);
  Mat Qinv = inverse(Q);
  r.connection_isotropic = (s.transpose() * Q * s).is_zero();
  r.connection_section = rs * s == I;
  r.connection_dual_section = s.transpose() * rs.transpose() == I;
  r.connection_completeness = s * rs + Qinv * rs.transpose() * s.transpose() * Q == I2;
  const Mat& io = f.split.iota();
  const Mat& jj = f.split.j();
  r.splitting_isotropic = (jj.transpose() * Q * jj).is_zero();
  r.splitting_section = io.transpose() * Q * jj == I;
  r.splitting_completeness = jj * io.transpose() * Q + io * jj.transpose() * Q == I2;
  r.algebra_identity = f.sigma_bar * f.sigma + f.rho_bar * f.rho == I;
  r.cotangent_identity = f.sigma * f.sigma_bar + (f.rho * f.rho_bar).transpose() == I;
  // (rho_S, s^T Q) : d -> T + T^*, pulled-back canonical pairing must equal Q
  Mat Phi = vstack(rs, s.transpose() * Q);
  r.isometry = Phi.transpose() * canonical_pairing(n) * Phi == Q;
  return r;
}

DiracSpace L_S_at(const PointFrame& f) {
  return dirac_from_rows(f.n(), hstack(f.rho.transpose(), f.sigma.transpose()));
}

DiracSpace C_S_at(const PointFrame& f) {
  const Mat& jj = f.split.j();
  Mat top = f.rho_S() * jj;                  // n x n, column i = rho_S h_i
  Mat bottom = f.s().transpose() * f.Q() * jj;  // column i = s^* h_i
  return dirac_from_rows(f.n(), hstack(top.transpose(), bottom.transpose()));
}

Mat pi_S_at(const PointFrame& f) { return (f.rho * f.sigma_bar).transpose(); }

Mat pi_S_from_r_matrix(const PointFrame& f) {
  Mat Qinv = inverse(f.Q());
  Mat R = r_matrix(f.split);
  Mat lift = Qinv * f.rho_S().transpose();  // 2n x n
  return -(lift.transpose() * R * lift);
}

Subspace predicted_kernel(const PointFrame& f) {
  Subspace ks = kernel(f.sigma);
  Mat rows(ks.dim(), f.n());
  for (std::size_t i = 0; i < ks.dim(); ++i) rows.set_row(i, f.rho * ks.vector(i));
  return canonicalize(rows, f.n());
}

Mat gauge_B_at(const PointFrame& f, const PointFrame& f2) {
  if (!(f.rho_S() == f2.rho_S())) throw std::invalid_argument("frames live at different dressing points");
  const Mat& Q = f.Q();
  Mat diff = f.s() - f2.s();
  // B(X, rho_S v) = Q((s - s')X, v): evaluate with the two lifts v = s Y and v = s' Y
  Mat B1 = diff.transpose() * Q * f.s();
  Mat B2 = diff.transpose() * Q * f2.s();
  if (!(B1 == B2)) throw std::logic_error("gauge 2-form depends on the lift");
  if (!B1.is_antisymmetric()) throw std::logic_error("gauge 2-form is not antisymmetric");
  return B1;
}

Rational omega_orbit(const PointFrame& f, const Vec& v, const Vec& w) {
  // well defined: v in ker rho must give a vanishing functional on rho(g)
  Subspace kr = kernel(f.rho);
  for (std::size_t i = 0; i < kr.dim(); ++i)
    if (!is_zero(f.rho.transpose() * (f.sigma * kr.vector(i))))
      throw std::logic_error("orbit form is not well defined");
  return dot(f.sigma * v, f.rho * w);
}

EquivalenceData equivalence_at(const PointFrame& f, const Mat& J, const DiracSpace& L) {
  const std::size_t n = f.n();
  const std::size_t m = L.m;
  DiracSpace LS = L_S_at(f);
  DiracSpace CS = C_S_at(f);
  if (!is_strong(J, L, LS).strong()) throw std::invalid_argument("J is not a strong Dirac map onto L_S");
  EquivalenceData e;
  e.quasi = to_quasi(J, L, LS, CS);
  e.rho_M = Mat(m, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec lw(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      lw[k] = f.rho(k, i);
      lw[n + k] = f.sigma(k, i);
    }
    e.rho_M.set_col(i, e.quasi.rho_V * coords(LS.L, lw));
  }
  e.T = e.rho_M * f.rho_bar * J;
  Mat pisharp = e.quasi.pi.transpose();
  e.h = vstack(pisharp, Mat::identity(m) - e.T.transpose());
  Mat rho_hat = vstack(e.rho_M, J.transpose() * f.sigma);
  e.reconstructed = DiracSpace(m, canonicalize(vstack(rho_hat.transpose(), e.h.transpose()), 2 * m));
  e.reconstruction_ok = e.reconstructed == L;
  e.moment_condition = J * pisharp == -(f.sigma_bar.transpose() * e.rho_M.transpose());
  e.h_in_L = contains(L.L, canonicalize(e.h.transpose(), 2 * m));
  return e;
}

DressingPoint cotangent_dressing_point(const ManinPair& cot, const LieAlgebra& g, const Vec& mu) {
  const std::size_t n = g.dim();
  Mat rho(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) rho.set_col(i, g.ad(unit_vector(n, i)).transpose() * mu);
  rho.set_block(0, n, Mat::identity(n));
  return DressingPoint(cot, rho);
}

DressingPoint pair_dressing_point(const ManinPair& pair, const Mat& Ad_g) {
  const std::size_t n = pair.half();
  Mat rho(n, 2 * n);
  rho.set_block(0, 0, Mat::identity(n));
  rho.set_block(0, n, -Ad_g);
  return DressingPoint(pair, rho);
}

}  // namespace maninkit
