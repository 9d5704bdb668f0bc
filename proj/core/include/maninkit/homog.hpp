#pragma once

#include "maninkit/diraclin.hpp"
#include "maninkit/quasibialg.hpp"

namespace maninkit {

// The dressing map rho_S : d -> T_x S at a single point, as an n x 2n matrix.
struct DressingPoint {
  ManinPair pair;
  Mat rho_S;

  DressingPoint() = default;
  // Throws unless rank(rho_S) = n and rho_S Q^{-1} rho_S^T = 0.
  DressingPoint(ManinPair p, Mat rho);
  std::size_t n() const { return pair.half(); }
};

struct ConnectionAtPoint {
  DressingPoint base;
  Mat s;  // 2n x n, rho_S s = 1, s^T Q s = 0

  ConnectionAtPoint() = default;
  ConnectionAtPoint(DressingPoint b, Mat s_);
};

ConnectionAtPoint make_connection(const DressingPoint& base, const Mat& right_inverse);

// All derived maps at one point for a connection and an isotropic splitting.
// Matrices act on coordinate columns: g uses the canonical basis of g, T_xS and
// T*_xS use the coordinate basis of the dressing point.
struct PointFrame {
  ConnectionAtPoint conn;
  IsotropicSplitting split;
  Mat sigma;      // n x n : g -> T*S,   sigma(u) = s^T Q iota(u)
  Mat rho;        // n x n : g -> TS,    rho = rho_S iota
  Mat sigma_bar;  // n x n : T*S -> g,   (rho_S j)^T
  Mat rho_bar;    // n x n : TS -> g,    j^T Q s

  PointFrame() = default;
  PointFrame(ConnectionAtPoint c, IsotropicSplitting j);
  std::size_t n() const { return split.n(); }
  const Mat& Q() const { return split.pair().Q; }
  const Mat& rho_S() const { return conn.base.rho_S; }
  const Mat& s() const { return conn.s; }
};

// Residuals of the splitting identities of both exact sequences; all zero for valid frames.
struct FrameIdentityReport {
  bool connection_isotropic = false;   // s^T Q s = 0
  bool connection_section = false;     // rho_S s = 1
  bool connection_dual_section = false;  // s^T rho_S^T = 1
  bool connection_completeness = false;  // s rho_S + Q^{-1} rho_S^T s^T Q = 1
  bool splitting_isotropic = false;    // j^T Q j = 0
  bool splitting_section = false;      // iota^T Q j = 1
  bool splitting_completeness = false; // j iota^T Q + iota j^T Q = 1
  bool algebra_identity = false;       // sigma_bar sigma + rho_bar rho = 1_g
  bool cotangent_identity = false;     // sigma sigma_bar + (rho rho_bar)^T = 1
  bool isometry = false;               // (rho_S, s^T Q) transports Q to the canonical pairing
  bool pass() const;
};
FrameIdentityReport check_frame_identities(const PointFrame& f);

DiracSpace L_S_at(const PointFrame& f);
DiracSpace C_S_at(const PointFrame& f);
// pi(i,j) = pi_S(eps^i, eps^j), with pi^sharp = rho sigma_bar.
Mat pi_S_at(const PointFrame& f);
// pi_S(a,b) = -r(rho_S^* a, rho_S^* b).
Mat pi_S_from_r_matrix(const PointFrame& f);
// Image of ker(sigma) under rho, the kernel of L_S predicted from (rho, sigma).
Subspace predicted_kernel(const PointFrame& f);

// B(X, Y) on T_xS for two connections at the same point; verified on two different lifts.
Mat gauge_B_at(const PointFrame& f, const PointFrame& f2);

// Orbit 2-form on rho(g): omega(rho v, rho w) = <sigma v, rho w>. Throws if not well defined.
Rational omega_orbit(const PointFrame& f, const Vec& v, const Vec& w);

struct EquivalenceData {
  QuasiData quasi;
  Mat rho_M;   // m x n : g -> V, the induced g-action
  Mat T;       // m x m : rho_M rho_bar J
  Mat h;       // 2m x m : columns h(eps^i) = (pi^sharp eps^i, (1 - T^T) eps^i)
  DiracSpace reconstructed;  // span of rho_hat_M(g) and im h
  bool reconstruction_ok = false;  // reconstructed == L
  bool moment_condition = false;   // J pi^sharp = -sigma_bar^T rho_M^T
  bool h_in_L = false;             // im h contained in L
};
EquivalenceData equivalence_at(const PointFrame& f, const Mat& J, const DiracSpace& L);

// Exact dressing points for the catalog families.
// Cotangent family at mu: rho_S(u, nu) = (ad_u)^T mu + nu.
DressingPoint cotangent_dressing_point(const ManinPair& cot, const LieAlgebra& g, const Vec& mu);
// Pair family at a group element with adjoint matrix Ad_g: rho_S(u, v) = u - Ad_g v.
DressingPoint pair_dressing_point(const ManinPair& pair, const Mat& Ad_g);

}  // namespace maninkit
