#include "maninkit/diraclin.hpp"

#include <stdexcept>
#include <utility>

namespace maninkit {

namespace {

Mat v_part(const Mat& rows, std::size_t m) { return rows.block(0, 0, rows.rows(), m); }
Mat covector_part(const Mat& rows, std::size_t m) { return rows.block(0, m, rows.rows(), m); }

void require_square_antisymmetric(const Mat& B, const char* what) {
  if (B.rows() != B.cols() || !B.is_antisymmetric()) throw std::invalid_argument(std::string(what) + " must be antisymmetric");
}

// Solves for the decomposition (0, a) = l + c along a transversal pair, returning
// the coefficient vectors of l (in L's basis) for every coordinate covector.
Mat split_covectors(const DiracSpace& L, const DiracSpace& C) {
  const std::size_t m = L.m;
  Mat sys = vstack(L.L.basis(), C.L.basis()).transpose();  // 2m x 2m
  if (rank(sys) != 2 * m) throw std::invalid_argument("Dirac spaces are not transversal");
  Mat rhs(2 * m, m);
  for (std::size_t i = 0; i < m; ++i) rhs(m + i, i) = 1;
  Mat x = solve(sys, rhs);
  return x.block(0, 0, L.L.dim(), m);
}

}  // namespace

DiracSpace::DiracSpace(std::size_t dim, Subspace sub) : m(dim), L(std::move(sub)) {
  if (L.ambient() != 2 * m) throw DimensionError("DiracSpace: ambient must be 2m");
}

Mat canonical_pairing(std::size_t m) {
  Mat K(2 * m, 2 * m);
  K.set_block(0, m, Mat::identity(m));
  K.set_block(m, 0, Mat::identity(m));
  return K;
}

bool is_lagrangian(std::size_t m, const Subspace& L) {
  return L.ambient() == 2 * m && L.dim() == m && is_isotropic(L, canonical_pairing(m));
}

DiracSpace dirac_from_rows(std::size_t m, const Mat& rows) {
  Subspace s = canonicalize(rows, 2 * m);
  if (!is_lagrangian(m, s)) throw std::invalid_argument("span is not Lagrangian");
  return DiracSpace(m, std::move(s));
}

DiracSpace tangent_space(std::size_t m) { return dirac_from_rows(m, hstack(Mat::identity(m), Mat(m, m))); }

DiracSpace cotangent_space(std::size_t m) { return dirac_from_rows(m, hstack(Mat(m, m), Mat::identity(m))); }

DiracSpace graph_2form(const Mat& B) {
  require_square_antisymmetric(B, "2-form");
  return dirac_from_rows(B.rows(), hstack(Mat::identity(B.rows()), B));
}

DiracSpace graph_bivector(const Mat& pi) {
  require_square_antisymmetric(pi, "bivector");
  return dirac_from_rows(pi.rows(), hstack(pi, Mat::identity(pi.rows())));
}

DiracSpace opposite(const DiracSpace& L) {
  const std::size_t m = L.m;
  Mat rows = L.L.basis();
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = m; j < 2 * m; ++j) rows(i, j) = -rows(i, j);
  return DiracSpace(m, canonicalize(rows, 2 * m));
}

DiracSpace gauge(const DiracSpace& L, const Mat& B) {
  require_square_antisymmetric(B, "gauge 2-form");
  const std::size_t m = L.m;
  if (B.rows() != m) throw DimensionError("gauge: size mismatch");
  Mat X = v_part(L.L.basis(), m);
  Mat a = covector_part(L.L.basis(), m) + X * B;
  return DiracSpace(m, canonicalize(hstack(X, a), 2 * m));
}

DiracSpace forward_image(const Mat& J, const DiracSpace& L) {
  const std::size_t m = L.m, w = J.rows();
  if (J.cols() != m) throw DimensionError("forward_image: J has wrong source dimension");
  const std::size_t k = L.L.dim();
  Mat AX = v_part(L.L.basis(), m), Aa = covector_part(L.L.basis(), m);
  // unknowns (c, beta): Aa^T c - J^T beta = 0
  Mat sys = hstack(Aa.transpose(), -J.transpose());
  Subspace sol = kernel(sys);
  Mat rows(sol.dim(), 2 * w);
  Mat JAXt = J * AX.transpose();
  for (std::size_t r = 0; r < sol.dim(); ++r) {
    Vec v = sol.vector(r);
    Vec c(v.begin(), v.begin() + static_cast<long>(k));
    Vec beta(v.begin() + static_cast<long>(k), v.end());
    Vec X = JAXt * c;
    for (std::size_t i = 0; i < w; ++i) {
      rows(r, i) = X[i];
      rows(r, w + i) = beta[i];
    }
  }
  return DiracSpace(w, canonicalize(rows, 2 * w));
}

DiracSpace backward_image(const Mat& J, const DiracSpace& LS) {
  const std::size_t w = LS.m, m = J.cols();
  if (J.rows() != w) throw DimensionError("backward_image: J has wrong target dimension");
  const std::size_t k = LS.L.dim();
  Mat Y = v_part(LS.L.basis(), w), g = covector_part(LS.L.basis(), w);
  // unknowns (X, c): J X - Y^T c = 0
  Mat sys = hstack(J, -Y.transpose());
  Subspace sol = kernel(sys);
  Mat rows(sol.dim(), 2 * m);
  Mat Jtgt = J.transpose() * g.transpose();
  for (std::size_t r = 0; r < sol.dim(); ++r) {
    Vec v = sol.vector(r);
    Vec X(v.begin(), v.begin() + static_cast<long>(m));
    Vec c(v.begin() + static_cast<long>(m), v.begin() + static_cast<long>(m + k));
    Vec a = Jtgt * c;
    for (std::size_t i = 0; i < m; ++i) {
      rows(r, i) = X[i];
      rows(r, m + i) = a[i];
    }
  }
  return DiracSpace(m, canonicalize(rows, 2 * m));
}

Subspace kernel_of(const DiracSpace& L) {
  const std::size_t m = L.m;
  Subspace V = canonicalize(hstack(Mat::identity(m), Mat(m, m)), 2 * m);
  Subspace k = intersect(L.L, V);
  return canonicalize(v_part(k.basis(), m), m);
}

Subspace range_of(const DiracSpace& L) { return canonicalize(v_part(L.L.basis(), L.m), L.m); }

StrongReport is_strong(const Mat& J, const DiracSpace& L, const DiracSpace& LS) {
  StrongReport r;
  r.forward_ok = forward_image(J, L) == LS;
  r.kernel_ok = intersect(kernel(J), kernel_of(L)).dim() == 0;
  return r;
}

Mat induced_action(const Mat& J, const DiracSpace& L, const DiracSpace& LW) {
  const std::size_t m = L.m, w = J.rows();
  const std::size_t k = L.L.dim();
  Mat AX = v_part(L.L.basis(), m), Aa = covector_part(L.L.basis(), m);
  // unknowns (v, c):  v - AX^T c = 0,  Aa^T c = J^T beta,  J v = w
  Mat sys(m + m + w, m + k);
  sys.set_block(0, 0, Mat::identity(m));
  sys.set_block(0, m, -AX.transpose());
  sys.set_block(m, m, Aa.transpose());
  sys.set_block(2 * m, 0, J);
  // uniqueness of v: the v-part of the homogeneous solutions must vanish
  Subspace hom = kernel(sys);
  for (std::size_t r = 0; r < hom.dim(); ++r)
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(hom.basis()(r, i)) != 0) throw std::invalid_argument("induced action is not unique (map not strong)");
  Mat out(m, LW.L.dim());
  for (std::size_t col = 0; col < LW.L.dim(); ++col) {
    Vec lw = LW.L.vector(col);
    Vec wv(lw.begin(), lw.begin() + static_cast<long>(w));
    Vec beta(lw.begin() + static_cast<long>(w), lw.end());
    Vec rhs(2 * m + w);
    Vec Jtb = J.transpose() * beta;
    for (std::size_t i = 0; i < m; ++i) rhs[m + i] = Jtb[i];
    for (std::size_t i = 0; i < w; ++i) rhs[2 * m + i] = wv[i];
    Vec x;
    try {
      x = solve(sys, rhs);
    } catch (const InconsistentSystem&) {
      throw std::invalid_argument("induced action does not exist (map not strong)");
    }
    for (std::size_t i = 0; i < m; ++i) out(i, col) = x[i];
  }
  return out;
}

Mat sigma_bar(const DiracSpace& LW, const DiracSpace& CW) { return split_covectors(LW, CW); }

Mat bivector_of_pair(const DiracSpace& L, const DiracSpace& C) {
  const std::size_t m = L.m;
  Mat coef = split_covectors(L, C);                      // dim L x m
  Mat lv = coef.transpose() * v_part(L.L.basis(), m);    // row i: V-part of l for eps^i
  return lv;
}

QuasiData to_quasi(const Mat& J, const DiracSpace& L, const DiracSpace& LW, const DiracSpace& CW) {
  DiracSpace C = backward_image(J, CW);
  if (intersect(L.L, C.L).dim() != 0) throw std::logic_error("L and the pulled-back complement are not transversal");
  QuasiData q;
  q.pi = bivector_of_pair(L, C);
  q.rho_V = induced_action(J, L, LW);
  return q;
}

QuasiInvariantReport check_quasi_invariants(const Mat& J, const QuasiData& q, const DiracSpace& LW,
                                            const DiracSpace& CW) {
  QuasiInvariantReport r;
  const std::size_t w = LW.m;
  r.pi_antisymmetric = q.pi.is_antisymmetric();
  Mat prW = v_part(LW.L.basis(), w).transpose();
  r.anchor_ok = J * q.rho_V == prW;
  Mat pisharp = q.pi.transpose();
  r.moment_ok = pisharp * J.transpose() == q.rho_V * sigma_bar(LW, CW);
  return r;
}

DiracSpace from_quasi(const Mat& J, const QuasiData& q, const DiracSpace& LW, const DiracSpace& CW, bool mutate) {
  const std::size_t m = J.cols(), w = J.rows();
  QuasiInvariantReport inv = check_quasi_invariants(J, q, LW, CW);
  if (!inv.pass()) throw std::invalid_argument("quasi data violates its invariants");
  const std::size_t k = LW.L.dim();
  Mat Lrows = LW.L.basis(), Crows = CW.L.basis();
  Mat G = Lrows * canonical_pairing(w) * Crows.transpose();  // G(k,l) = <l_k, c_l>
  Mat Ginv = inverse(G);
  Mat CWcov = covector_part(Crows, w);
  Mat rows(k + m, 2 * m);
  for (std::size_t c = 0; c < k; ++c) {
    Vec lrow = Lrows.row(c);
    Vec beta(lrow.begin() + static_cast<long>(w), lrow.end());
    Vec a = J.transpose() * beta;
    for (std::size_t i = 0; i < m; ++i) {
      rows(c, i) = q.rho_V(i, c);
      rows(c, m + i) = a[i];
    }
  }
  const Rational sign = mutate ? Rational(-1) : Rational(1);
  for (std::size_t i = 0; i < m; ++i) {
    Vec rt = q.rho_V.row(i);         // rho_V^* eps^i on the L_W basis
    Vec z = Ginv * rt;               // lift to C_W
    Vec ycov = CWcov.transpose() * z;
    Vec corr = J.transpose() * ycov;
    for (std::size_t jdx = 0; jdx < m; ++jdx) {
      rows(k + i, jdx) = q.pi(i, jdx);
      rows(k + i, m + jdx) = (i == jdx ? Rational(1) : Rational(0)) - sign * corr[jdx];
    }
  }
  Subspace s = canonicalize(rows, 2 * m);
  if (!is_lagrangian(m, s)) throw std::logic_error("from_quasi produced a non-Lagrangian subspace");
  return DiracSpace(m, std::move(s));
}

FunctorialReport check_functorial(const Mat& f, const RealizationInstance& a, const RealizationInstance& b) {
  FunctorialReport r;
  r.factorizes = a.J == b.J * f;
  if (!r.factorizes) return r;
  if (!(a.LW == b.LW) || !(a.CW == b.CW)) throw std::invalid_argument("instances must share L_W and C_W");
  r.f_dirac = forward_image(f, a.L) == b.L;
  QuasiData qa = to_quasi(a.J, a.L, a.LW, a.CW);
  QuasiData qb = to_quasi(b.J, b.L, b.LW, b.CW);
  r.rho_match = f * qa.rho_V == qb.rho_V;
  r.pi_match = f * qa.pi * f.transpose() == qb.pi;
  return r;
}

}  // namespace maninkit
