#pragma once

#include <optional>

#include "maninkit/manin.hpp"

namespace maninkit {

// Lagrangian subspace of V + V^* in coordinates (X_1..X_m, a_1..a_m).
struct DiracSpace {
  std::size_t m = 0;
  Subspace L;

  DiracSpace() = default;
  DiracSpace(std::size_t dim, Subspace sub);
  friend bool operator==(const DiracSpace&, const DiracSpace&) = default;
};

// Split pairing <(X1,a1),(X2,a2)> = a2(X1) + a1(X2).
Mat canonical_pairing(std::size_t m);
bool is_lagrangian(std::size_t m, const Subspace& L);
// Builds a DiracSpace from spanning rows; throws if the span is not Lagrangian.
DiracSpace dirac_from_rows(std::size_t m, const Mat& rows);

DiracSpace tangent_space(std::size_t m);    // V + 0
DiracSpace cotangent_space(std::size_t m);  // 0 + V^*

// {(X, i_X B)} with (i_X B)(Y) = B(X,Y).
DiracSpace graph_2form(const Mat& B);
// {(i_a pi, a)} with (i_a pi)(b) = pi(a,b).
DiracSpace graph_bivector(const Mat& pi);
DiracSpace opposite(const DiracSpace& L);
DiracSpace gauge(const DiracSpace& L, const Mat& B);
// J maps V (dim m) to W (dim w), stored as a w x m matrix.
DiracSpace forward_image(const Mat& J, const DiracSpace& L);
DiracSpace backward_image(const Mat& J, const DiracSpace& LS);
// L intersected with V + 0, as a subspace of V.
Subspace kernel_of(const DiracSpace& L);
// Projection of L to V.
Subspace range_of(const DiracSpace& L);

struct StrongReport {
  bool forward_ok = false;
  bool kernel_ok = false;
  bool strong() const { return forward_ok && kernel_ok; }
};
StrongReport is_strong(const Mat& J, const DiracSpace& L, const DiracSpace& LS);

// m x dim(L_W) matrix: column k is the unique v with Jv = w_k and (v, J^T b_k) in L,
// where (w_k, b_k) is the k-th canonical basis vector of L_W.
Mat induced_action(const Mat& J, const DiracSpace& L, const DiracSpace& LW);

struct QuasiData {
  Mat pi;     // pi(i,j) = pi(eps^i, eps^j); pi^sharp eps^i = row i
  Mat rho_V;  // m x dim(L_W), in the canonical basis of L_W
  friend bool operator==(const QuasiData&, const QuasiData&) = default;
};

// dim(L_W) x w: coordinates in the L_W basis of the L_W-component of (0, b) in L_W + C_W.
Mat sigma_bar(const DiracSpace& LW, const DiracSpace& CW);
// The bivector of a transversal pair (L, C): pi^sharp a = V-part of the L-component of (0,a).
Mat bivector_of_pair(const DiracSpace& L, const DiracSpace& C);

QuasiData to_quasi(const Mat& J, const DiracSpace& L, const DiracSpace& LW, const DiracSpace& CW);

struct QuasiInvariantReport {
  bool pi_antisymmetric = false;
  bool anchor_ok = false;   // J rho_V = pr_W on L_W
  bool moment_ok = false;   // pi^sharp J^T = rho_V sigma_bar
  bool pass() const { return pi_antisymmetric && anchor_ok && moment_ok; }
};
QuasiInvariantReport check_quasi_invariants(const Mat& J, const QuasiData& q, const DiracSpace& LW,
                                            const DiracSpace& CW);

// The mutate flag flips the sign of the lifted rho_V^* term; it exists so that
// fuzzing can demonstrate that a sign slip is detected.
DiracSpace from_quasi(const Mat& J, const QuasiData& q, const DiracSpace& LW, const DiracSpace& CW,
                      bool mutate = false);

struct RealizationInstance {
  Mat J;
  DiracSpace L;
  DiracSpace LW;
  DiracSpace CW;
};

struct FunctorialReport {
  bool f_dirac = false;    // forward_image(f, L1) == L2
  bool rho_match = false;  // f rho_1 = rho_2
  bool pi_match = false;   // f pi_1 f^T = pi_2
  bool factorizes = false; // J1 = J2 f
  // Both directions of the equivalence agree.
  bool consistent() const { return factorizes && (f_dirac == (rho_match && pi_match)); }
};
FunctorialReport check_functorial(const Mat& f, const RealizationInstance& a, const RealizationInstance& b);

}  // namespace maninkit
