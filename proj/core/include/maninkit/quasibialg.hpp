#pragma once

#include <string>

#include "maninkit/manin.hpp"

namespace maninkit {

// Isotropic complement h of g in d, with the adapted bases used everywhere downstream:
// b_i = canonical basis of g, h_i in h with Q(b_k, h_i) = delta_ki.
class IsotropicSplitting {
 public:
  IsotropicSplitting() = default;
  // Throws if h is not an isotropic complement of g.
  IsotropicSplitting(ManinPair pair, Subspace h);

  const ManinPair& pair() const { return pair_; }
  const Subspace& h() const { return h_; }
  std::size_t n() const { return pair_.half(); }
  // 2n x n matrices whose columns are b_i (iota) and h_i (j).
  const Mat& iota() const { return iota_; }
  const Mat& j() const { return j_; }
  // 2n x 2n change of basis with columns (b_1..b_n, h_1..h_n).
  Mat adapted_basis() const { return hstack(iota_, j_); }

 private:
  ManinPair pair_;
  Subspace h_;
  Mat iota_;
  Mat j_;
};

// Structure constants of g in the canonical basis of g.
LieAlgebra restrict_to_g(const ManinPair& P);

IsotropicSplitting make_isotropic(const ManinPair& P, const Subspace& complement);
LieQuasiBialgebra split_to_lqb(const IsotropicSplitting& j);
// Structure constants of d in the adapted (iota, j) basis.
LieAlgebra adapted_bracket(const IsotropicSplitting& j);

// t(a,b) = t(eps^a, eps^b) with t^sharp = j - j2 as a map g^* -> g.
Mat twist(const IsotropicSplitting& j, const IsotropicSplitting& j2);
LieQuasiBialgebra twist_transform(const LieQuasiBialgebra& q, const Mat& t);
// r(u,v) = Q(j iota^* u, v) on the standard basis of d.
Mat r_matrix(const IsotropicSplitting& j);

// Q0..Q4 at the structure-constant level (base is a point, anchor zero), plus
// the Jacobi identity of g itself.  Each entry carries the max-abs residual.
struct QAxiomReport {
  Rational jacobi_g, q0, q1, q2, q3, q4;
  bool pass() const;
  CheckReport as_report() const;
};
QAxiomReport check_q_axioms(const LieQuasiBialgebra& q);

}  // namespace maninkit
