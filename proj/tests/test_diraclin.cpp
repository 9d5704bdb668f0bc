#include <doctest.h>

#include "maninkit/diraclin.hpp"
#include "maninkit/fuzz.hpp"
#include "oracles.hpp"

using namespace maninkit;

namespace {
// Lagrangian means isotropic for a2(X1) + a1(X2) and of dimension m.
bool lagrangian_oracle(const DiracSpace& D) {
  const std::size_t m = D.m;
  if (D.L.dim() != m || D.L.ambient() != 2 * m) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const Vec a = D.L.vector(i), b = D.L.vector(k);
      Rational s = 0;
      for (std::size_t t = 0; t < m; ++t) s += b[m + t] * a[t] + a[m + t] * b[t];
      if (s != 0) return false;
    }
  return true;
}

Vec concat(const Vec& x, const Vec& a) {
  Vec out = x;
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

// Forward image by solving for J-related pairs: unknowns (c, beta) with Vstar(c L) = J^T beta.
DiracSpace forward_oracle(const Mat& J, const DiracSpace& D) {
  const std::size_t m = D.m, w = J.rows(), k = D.L.dim();
  Mat sys(m, k + w);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t t = 0; t < m; ++t) sys(t, r) = D.L.basis()(r, m + t);
  for (std::size_t b = 0; b < w; ++b)
    for (std::size_t t = 0; t < m; ++t) sys(t, k + b) = -J(b, t);
  const Subspace sol = kernel(sys);
  Mat rows(sol.dim(), 2 * w);
  for (std::size_t s = 0; s < sol.dim(); ++s) {
    const Vec v = sol.vector(s);
    Vec X(m, Rational(0));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t t = 0; t < m; ++t) X[t] += v[r] * D.L.basis()(r, t);
    const Vec JX = J * X;
    for (std::size_t t = 0; t < w; ++t) {
      rows(s, t) = JX[t];
      rows(s, w + t) = v[k + t];
    }
  }
  return DiracSpace(w, canonicalize(rows, 2 * w));
}

DiracSpace random_dirac(Rng& rng, std::size_t m) { return random_lagrangian(rng, m); }
}  // namespace

TEST_CASE("graphs of 2-forms") {
  CHECK(graph_2form(Mat(3, 3)) == tangent_space(3));
  const DiracSpace L = graph_2form(Mat{{0, 1}, {-1, 0}});
  // (i_X B)(Y) = B(X,Y): e1 -> (0, 1), e2 -> (-1, 0)
  CHECK(L.L == canonicalize(Mat{{1, 0, 0, 1}, {0, 1, -1, 0}}));
  CHECK(kernel_of(L).dim() == 0);
  CHECK_THROWS_AS(graph_2form(Mat{{0, 1}, {1, 0}}), std::invalid_argument);

  Rng rng(1);
  for (int t = 0; t < 30; ++t) {
    const Mat B = random_antisymmetric(rng, 1 + t % 5);
    const DiracSpace G = graph_2form(B);
    CHECK(lagrangian_oracle(G));
    CHECK(is_lagrangian(G.m, G.L));
    CHECK(kernel_of(G) == kernel(B));
    CHECK(range_of(G) == full_space(G.m));
  }
}

TEST_CASE("graphs of bivectors") {
  CHECK(graph_bivector(Mat(2, 2)) == cotangent_space(2));
  CHECK_THROWS_AS(graph_bivector(Mat{{1, 0}, {0, 0}}), std::invalid_argument);
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const Mat pi = random_antisymmetric(rng, 2 + 2 * (t % 2));
    const DiracSpace G = graph_bivector(pi);
    CHECK(lagrangian_oracle(G));
    CHECK(kernel_of(G).dim() == 0);
    if (sgn(determinant(pi)) != 0) CHECK(G == graph_2form(inverse(pi)));
  }
}

TEST_CASE("opposite and gauge") {
  CHECK(opposite(tangent_space(3)) == tangent_space(3));
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 1 + t % 4;
    const Mat B = random_antisymmetric(rng, m), B2 = random_antisymmetric(rng, m);
    CHECK(opposite(graph_2form(B)) == graph_2form(-B));
    const DiracSpace L = random_dirac(rng, m);
    CHECK(lagrangian_oracle(L));
    CHECK(opposite(opposite(L)) == L);
    CHECK(lagrangian_oracle(opposite(L)));
    CHECK(gauge(L, Mat(m, m)) == L);
    CHECK(gauge(graph_2form(B2), B) == graph_2form(B2 + B));
    CHECK(gauge(gauge(L, B), B2) == gauge(L, B + B2));
    CHECK(lagrangian_oracle(gauge(L, B)));
  }
}

TEST_CASE("forward images") {
  Rng rng(4);
  const DiracSpace L = graph_2form(Mat{{0, 1}, {-1, 0}});
  CHECK(forward_image(Mat::identity(2), L) == L);
  const Mat proj{{1, 0}};
  CHECK(forward_image(proj, L) == forward_oracle(proj, L));
  CHECK(forward_image(proj, L) == cotangent_space(1));

  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 1 + t % 4, w = 1 + (t / 4) % 3;
    const Mat J = random_mat(rng, w, m);
    // image of V: im J + ker J^T
    const DiracSpace img = forward_image(J, tangent_space(m));
    CHECK(lagrangian_oracle(img));
    CHECK(range_of(img) == image(J));
    const DiracSpace D = random_dirac(rng, m);
    const DiracSpace f = forward_image(J, D);
    CHECK(f == forward_oracle(J, D));
    CHECK(lagrangian_oracle(f));
  }
}

TEST_CASE("backward images") {
  Rng rng(5);
  const DiracSpace L = random_dirac(rng, 3);
  CHECK(backward_image(Mat::identity(3), L) == L);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 1 + t % 4, w = 1 + (t / 4) % 3;
    const Mat J = random_mat(rng, w, m);
    const Mat w2 = random_antisymmetric(rng, w);
    CHECK(backward_image(J, graph_2form(w2)) == graph_2form(J.transpose() * w2 * J));
    CHECK(lagrangian_oracle(backward_image(J, random_dirac(rng, w))));
  }
}

TEST_CASE("strong maps and induced actions") {
  Rng rng(6);
  const DiracSpace L = random_dirac(rng, 3);
  CHECK(is_strong(Mat::identity(3), L, L).strong());

  const DiracSpace sym = graph_2form(Mat{{0, 1}, {-1, 0}});
  const Mat zero(1, 2);
  const StrongReport a = is_strong(zero, sym, tangent_space(1));
  CHECK(a.kernel_ok);
  CHECK_FALSE(a.forward_ok);
  CHECK(is_strong(zero, sym, cotangent_space(1)).strong());

  // J = id: rho_V(w, beta) = w
  const Mat rho = induced_action(Mat::identity(3), L, L);
  for (std::size_t k = 0; k < L.L.dim(); ++k)
    for (std::size_t i = 0; i < 3; ++i) CHECK(rho(i, k) == L.L.basis()(k, i));

  for (int t = 0; t < 30; ++t) {
    const StrongMapInstance s = random_strong_map(rng, 5);
    REQUIRE(is_strong(s.J, s.L, s.LW).strong());
    const Mat r = induced_action(s.J, s.L, s.LW);
    const Subspace kerJ = kernel(s.J);
    for (std::size_t k = 0; k < s.LW.L.dim(); ++k) {
      const Vec wb = s.LW.L.vector(k);
      const Vec wpart(wb.begin(), wb.begin() + s.LW.m), bpart(wb.begin() + s.LW.m, wb.end());
      const Vec v = r.col(k);
      CHECK(s.J * v == wpart);
      CHECK(contains(s.L.L, concat(v, s.J.transpose() * bpart)));
      // any kernel direction breaks membership
      for (std::size_t q = 0; q < kerJ.dim(); ++q)
        CHECK_FALSE(contains(s.L.L, concat(vec_add(v, kerJ.vector(q)), s.J.transpose() * bpart)));
    }
  }
}

TEST_CASE("linear equivalence round trips") {
  Rng rng(7);
  // J = id, pi = 0, rho = pr_W on L_W reproduces L_W
  const DiracSpace LW = graph_2form(Mat{{0, 2}, {-2, 0}});
  const DiracSpace CW = cotangent_space(2);
  QuasiData q;
  q.pi = Mat(2, 2);
  q.rho_V = Mat(2, 2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i) q.rho_V(i, k) = LW.L.basis()(k, i);
  CHECK(check_quasi_invariants(Mat::identity(2), q, LW, CW).pass());
  CHECK(from_quasi(Mat::identity(2), q, LW, CW) == LW);

  // Poisson case: graph of a symplectic form, J = 0, L_W = W*, C_W = W.
  const Mat omega{{0, 1}, {-1, 0}};
  const QuasiData pq = to_quasi(Mat(1, 2), graph_2form(omega), cotangent_space(1), tangent_space(1));
  CHECK(pq.pi == inverse(omega));
  CHECK(pq.rho_V == Mat(2, 1));
  CHECK(check_quasi_invariants(Mat(1, 2), pq, cotangent_space(1), tangent_space(1)).pass());

  for (int t = 0; t < 200; ++t) {
    const StrongMapInstance s = random_strong_map(rng, 5);
    const QuasiData back = to_quasi(s.J, s.L, s.LW, s.CW);
    CHECK(back == s.quasi);
    CHECK(check_quasi_invariants(s.J, back, s.LW, s.CW).pass());
    CHECK(from_quasi(s.J, back, s.LW, s.CW) == s.L);
    CHECK(check_round_trip(s).pass());
    CHECK(back.pi.is_antisymmetric());
  }
}

TEST_CASE("the sign mutation is caught") {
  Rng rng(8);
  std::size_t caught = 0;
  for (int t = 0; t < 100; ++t) caught += !check_round_trip(random_strong_map(rng, 5), true).pass();
  CHECK(caught > 0);
}

TEST_CASE("gauge compatibility of strong maps") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const StrongMapInstance s = random_strong_map(rng, 4);
    const Mat B = random_antisymmetric(rng, s.LW.m);
    CHECK(check_gauge_compatibility(s, B, random_dirac(rng, s.L.m)));
    const Mat pulled = s.J.transpose() * B * s.J;
    CHECK(is_strong(s.J, gauge(s.L, pulled), gauge(s.LW, B)).strong());
  }
}

TEST_CASE("functoriality") {
  Rng rng(10);
  std::size_t perturbed = 0;
  for (int t = 0; t < 60; ++t) {
    const StrongMapInstance s = random_strong_map(rng, 4);
    const RealizationInstance inst{s.J, s.L, s.LW, s.CW};
    const std::size_t m = s.L.m;
    const FunctorialReport id = check_functorial(Mat::identity(m), inst, inst);
    CHECK(id.f_dirac);
    CHECK(id.rho_match);
    CHECK(id.pi_match);
    CHECK(id.consistent());

    const FunctorialCase c = random_functorial_case(rng, s);
    const FunctorialReport good = check_functorial(c.f, c.source, c.target);
    CHECK(good.factorizes);
    CHECK(good.f_dirac);
    CHECK(good.consistent());
    CHECK(forward_image(c.f, c.source.L) == c.target.L);
    if (c.has_perturbation) {
      ++perturbed;
      const FunctorialReport bad = check_functorial(c.f, c.source, c.perturbed_target);
      CHECK_FALSE(bad.f_dirac);
      CHECK_FALSE((bad.rho_match && bad.pi_match));
      CHECK(bad.consistent());
    }
  }
  CHECK(perturbed > 0);
}
