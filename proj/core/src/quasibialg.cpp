#include "maninkit/quasibialg.hpp"

#include <stdexcept>
#include <utility>

namespace maninkit {

namespace {

void require_complement(const ManinPair& P, const Subspace& h) {
  const std::size_t N = P.d.dim();
  if (h.ambient() != N) throw DimensionError("complement lives in the wrong ambient space");
  if (h.dim() != P.half() || sum(P.g, h).dim() != N)
    throw std::invalid_argument("subspace is not a complement of g");
}

// Columns c_i spanning h with Q(b_k, c_i) = delta_ki.
Mat dual_columns(const ManinPair& P, const Subspace& h) {
  Mat G = P.g.basis() * P.Q * h.basis().transpose();
  return h.basis().transpose() * inverse(G);
}

}  // namespace

IsotropicSplitting::IsotropicSplitting(ManinPair pair, Subspace h) : pair_(std::move(pair)), h_(std::move(h)) {
  require_complement(pair_, h_);
  if (!is_isotropic(h_, pair_.Q)) throw std::invalid_argument("complement is not isotropic");
  iota_ = pair_.g.basis().transpose();
  j_ = dual_columns(pair_, h_);
}

LieAlgebra restrict_to_g(const ManinPair& P) {
  const std::size_t n = P.g.dim();
  LieAlgebra L(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vec c = coords(P.g, P.d.bracket(P.g.vector(a), P.g.vector(b)));
      for (std::size_t k = 0; k < n; ++k) L.c(a, b, k) = c[k];
    }
  return L;
}

IsotropicSplitting make_isotropic(const ManinPair& P, const Subspace& complement) {
  require_complement(P, complement);
  const std::size_t n = P.half();
  Mat C = dual_columns(P, complement);
  Mat B = P.g.basis().transpose();
  Mat gram = C.transpose() * P.Q * C;
  Mat H = C - make_rational(1, 2) * (B * gram);
  return IsotropicSplitting(P, canonicalize(H.transpose(), 2 * n));
}

LieQuasiBialgebra split_to_lqb(const IsotropicSplitting& j) {
  const ManinPair& P = j.pair();
  const std::size_t n = j.n();
  LieQuasiBialgebra q(restrict_to_g(P));
  Mat QI = P.Q * j.iota();
  Mat QJ = P.Q * j.j();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vec br = P.d.bracket(j.j().col(a), j.j().col(b));
      for (std::size_t k = 0; k < n; ++k) {
        q.Fs(a, b, k) = dot(br, QI.col(k));
        q.chi(a, b, k) = dot(br, QJ.col(k));
      }
    }
  return q;
}

LieAlgebra adapted_bracket(const IsotropicSplitting& j) {
  return change_basis(j.pair().d, j.adapted_basis().transpose());
}

Mat twist(const IsotropicSplitting& j, const IsotropicSplitting& j2) {
  const ManinPair& P = j.pair();
  const ManinPair& P2 = j2.pair();
  if (!(P.d == P2.d) || !(P.Q == P2.Q) || !(P.g == P2.g)) throw std::invalid_argument("splittings of different Manin pairs");
  const std::size_t n = j.n();
  Mat t(n, n);
  Mat diff = j.j() - j2.j();
  for (std::size_t a = 0; a < n; ++a) t.set_row(a, coords(P.g, diff.col(a)));
  return t;
}

LieQuasiBialgebra twist_transform(const LieQuasiBialgebra& q, const Mat& t) {
  const std::size_t n = q.dim();
  if (t.rows() != n || t.cols() != n) throw DimensionError("twist has the wrong size");
  const LieAlgebra& g = q.g;
  LieQuasiBialgebra out = q;
  // F'*(a,b) = F*(a,b) + ad*_{t#b} eps^a - ad*_{t#a} eps^b
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) {
        Rational s = 0;
        for (std::size_t m = 0; m < n; ++m) s += -t(b, m) * g.c(m, k, a) + t(a, m) * g.c(m, k, b);
        out.Fs(a, b, k) += s;
      }
  auto Fs_on_t = [&](std::size_t a, std::size_t b, std::size_t c) {
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) s += q.Fs(a, b, k) * t(c, k);
    return s;
  };
  auto tt = [&](std::size_t a, std::size_t b, std::size_t c) {
    Rational s = 0;
    for (std::size_t m = 0; m < n; ++m) {
      if (sgn(t(a, m)) == 0) continue;
      for (std::size_t l = 0; l < n; ++l) s += t(a, m) * t(b, l) * g.c(m, l, c);
    }
    return s;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        Rational dft = Fs_on_t(a, b, c) + Fs_on_t(b, c, a) + Fs_on_t(c, a, b);
        Rational half_tt = tt(a, b, c) + tt(b, c, a) + tt(c, a, b);
        out.chi(a, b, c) = q.chi(a, b, c) - dft + half_tt;
      }
  return out;
}

Mat r_matrix(const IsotropicSplitting& j) {
  const Mat& Q = j.pair().Q;
  return Q * j.iota() * j.j().transpose() * Q;
}

bool QAxiomReport::pass() const {
  return sgn(jacobi_g) == 0 && sgn(q0) == 0 && sgn(q1) == 0 && sgn(q2) == 0 && sgn(q3) == 0 && sgn(q4) == 0;
}

CheckReport QAxiomReport::as_report() const {
  CheckReport r;
  r.add("jacobi_g", sgn(jacobi_g) == 0, to_string(jacobi_g));
  r.add("Q0", sgn(q0) == 0, to_string(q0));
  r.add("Q1", sgn(q1) == 0, to_string(q1));
  r.add("Q2", sgn(q2) == 0, to_string(q2));
  r.add("Q3", sgn(q3) == 0, to_string(q3));
  r.add("Q4", sgn(q4) == 0, to_string(q4));
  return r;
}

QAxiomReport check_q_axioms(const LieQuasiBialgebra& q) {
  const std::size_t n = q.dim();
  const LieAlgebra& g = q.g;
  QAxiomReport rep;
  rep.jacobi_g = jacobi_defect(g);
  auto bump = [](Rational& worst, const Rational& v) {
    Rational a = abs(v);
    if (a > worst) worst = a;
  };
  // (ad_u F(v))(eps^a, eps^b) for u = e_i, v = e_j
  auto adF = [&](std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
    Rational s = 0;
    for (std::size_t m = 0; m < n; ++m) s += g.c(i, m, a) * q.Fs(m, b, j) + g.c(i, m, b) * q.Fs(a, m, j);
    return s;
  };
  // Q0: F is a 1-cocycle, F([u,v]) = ad_u F(v) - ad_v F(u)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          Rational lhs = 0;
          for (std::size_t k = 0; k < n; ++k) lhs += g.c(i, j, k) * q.Fs(a, b, k);
          bump(rep.q0, lhs - adF(i, j, a, b) + adF(j, i, a, b));
        }
  // Q1, Q2 involve the anchor, which vanishes over a point.
  rep.q1 = 0;
  rep.q2 = 0;
  // Q3: sum_cyc F*(x1, F*(x2,x3)) = sum_cyc ad*_{chi(x2,x3)} x1
  auto q3_term = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t k) {
    Rational s = 0;
    for (std::size_t m = 0; m < n; ++m) s += q.Fs(b, c, m) * q.Fs(a, m, k) + q.chi(b, c, m) * g.c(m, k, a);
    return s;
  };
  // Q4: d_F chi = 0
  auto q4_term = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
    Rational s = 0;
    for (std::size_t m = 0; m < n; ++m) s += q.Fs(b, c, m) * q.chi(a, m, e) - q.Fs(a, e, m) * q.chi(b, c, m);
    return s;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k = 0; k < n; ++k) {
          bump(rep.q3, q3_term(a, b, c, k) + q3_term(b, c, a, k) + q3_term(c, a, b, k));
          bump(rep.q4, q4_term(a, b, c, k) + q4_term(b, c, a, k) + q4_term(c, a, b, k));
        }
  return rep;
}

}  // namespace maninkit
