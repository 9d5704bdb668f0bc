#include <doctest.h>

#include "maninkit/catalog.hpp"
#include "maninkit/fuzz.hpp"
#include "maninkit/homog.hpp"
#include "maninkit/numgeom.hpp"
#include "oracles.hpp"

using namespace maninkit;

namespace {

struct Sample {
  const CatalogPair* entry;
  DressingPoint point;
};

Mat pair_right_inverse(std::size_t n) { return vstack(Mat::identity(n), Mat(n, n)); }

// Random exact dressing points for a catalog family.
DressingPoint random_point(const CatalogPair& c, Rng& rng) {
  if (c.kind == FamilyKind::Cotangent) return cotangent_dressing_point(c.pair, c.g, random_mat(rng, c.g.dim(), 1, -3, 3).col(0));
  const num::MatrixGroup G = c.tag == "pair_so3" ? num::MatrixGroup::so3() : num::MatrixGroup::sl2();
  num::Rng frng(rng());
  return pair_dressing_point(c.pair, G.Ad_exact(G.snap(G.sample(frng), 8)));
}

ConnectionAtPoint default_connection(const CatalogPair& c, const DressingPoint& p) {
  const std::size_t n = c.g.dim();
  if (c.kind == FamilyKind::Cotangent) return make_connection(p, vstack(Mat(n, n), Mat::identity(n)));
  return make_connection(p, pair_right_inverse(n));
}

// Another isotropic connection: s + Q^{-1} rho_S^T A with A antisymmetric.
ConnectionAtPoint shifted_connection(const ConnectionAtPoint& c, const Mat& A) {
  return ConnectionAtPoint(c.base, c.s + inverse(c.base.pair.Q) * c.base.rho_S.transpose() * A);
}

bool lagrangian(const DiracSpace& D) {
  for (std::size_t i = 0; i < D.L.dim(); ++i)
    for (std::size_t k = 0; k < D.L.dim(); ++k)
      if (oracle::pair(D.L.vector(i), canonical_pairing(D.m), D.L.vector(k)) != 0) return false;
  return D.L.dim() == D.m;
}

DiracSpace block_product(const DiracSpace& a, const DiracSpace& b) {
  const std::size_t m = a.m + b.m;
  Mat rows(m, 2 * m);
  for (std::size_t i = 0; i < a.m; ++i)
    for (std::size_t t = 0; t < a.m; ++t) {
      rows(i, t) = a.L.basis()(i, t);
      rows(i, m + t) = a.L.basis()(i, a.m + t);
    }
  for (std::size_t i = 0; i < b.m; ++i)
    for (std::size_t t = 0; t < b.m; ++t) {
      rows(a.m + i, a.m + t) = b.L.basis()(i, t);
      rows(a.m + i, m + a.m + t) = b.L.basis()(i, b.m + t);
    }
  return DiracSpace(m, canonicalize(rows, 2 * m));
}

}  // namespace

TEST_CASE("dressing points validate their input") {
  const CatalogPair& c = catalog_entry("pair_so3");
  CHECK_THROWS_AS(DressingPoint(c.pair, hstack(Mat::identity(3), make_rational(2) * Mat::identity(3))), std::invalid_argument);
  CHECK_THROWS_AS(DressingPoint(c.pair, Mat(3, 6)), std::invalid_argument);
  CHECK_THROWS_AS(DressingPoint(c.pair, Mat(2, 6)), DimensionError);
  const DressingPoint e = pair_dressing_point(c.pair, Mat::identity(3));
  CHECK_THROWS_AS(make_connection(e, Mat(6, 3)), std::invalid_argument);
}

TEST_CASE("connections of the worked examples are already isotropic") {
  const CatalogPair& cot = catalog_entry("cotangent_so3");
  Rng rng(1);
  const DressingPoint p = cotangent_dressing_point(cot.pair, cot.g, Vec{1, -2, 3});
  const Mat canonical = vstack(Mat(3, 3), Mat::identity(3));
  CHECK(make_connection(p, canonical).s == canonical);

  const CatalogPair& pr = catalog_entry("pair_so3");
  const DressingPoint e = pair_dressing_point(pr.pair, Mat::identity(3));
  const Mat anti = make_rational(1, 2) * vstack(Mat::identity(3), -Mat::identity(3));
  CHECK(make_connection(e, anti).s == anti);

  for (int t = 0; t < 20; ++t) {
    const DressingPoint q = random_point(pr, rng);
    Mat s0 = pair_right_inverse(3);
    const Subspace ker = kernel(q.rho_S);
    const Mat coeff = random_mat(rng, 3, ker.dim());
    s0 = s0 + ker.basis().transpose() * coeff.transpose();
    REQUIRE(q.rho_S * s0 == Mat::identity(3));
    const ConnectionAtPoint c = make_connection(q, s0);
    CHECK((c.s.transpose() * q.pair.Q * c.s).is_zero());
    CHECK(q.rho_S * c.s == Mat::identity(3));
    CHECK(make_connection(q, c.s).s == c.s);
  }
}

TEST_CASE("frame identities hold for every catalog family and splitting") {
  Rng rng(2);
  for (const auto& c : catalog())
    for (const auto& ns : c.splittings)
      for (int t = 0; t < 10; ++t) {
        CAPTURE(c.tag);
        CAPTURE(ns.name);
        const PointFrame f(default_connection(c, random_point(c, rng)), ns.split);
        const FrameIdentityReport rep = check_frame_identities(f);
        CHECK(rep.pass());
        // algebra identities by direct products
        const std::size_t n = f.n();
        CHECK(f.sigma_bar * f.sigma + f.rho_bar * f.rho == Mat::identity(n));
        CHECK(f.sigma * f.sigma_bar + (f.rho * f.rho_bar).transpose() == Mat::identity(n));
        // (rho_S, s^T Q) carries Q to the canonical pairing
        const Mat iso = vstack(f.rho_S(), f.s().transpose() * f.Q());
        CHECK(iso.transpose() * canonical_pairing(n) * iso == f.Q());
      }
}

TEST_CASE("L_S, C_S and pi_S on the cotangent family") {
  const CatalogPair& c = catalog_entry("cotangent_so3");
  const Vec mu{2, -1, 3};
  const PointFrame f(default_connection(c, cotangent_dressing_point(c.pair, c.g, mu)), c.splittings.front().split);
  // L_S = {(ad_u^T mu, u)}
  Mat rows(3, 6);
  for (std::size_t u = 0; u < 3; ++u) {
    const Vec x = c.g.ad(unit_vector(3, u)).transpose() * mu;
    for (std::size_t k = 0; k < 3; ++k) rows(u, k) = x[k];
    rows(u, 3 + u) = 1;
  }
  const DiracSpace L = L_S_at(f);
  CHECK(L.L == canonicalize(rows));
  CHECK(C_S_at(f) == tangent_space(3));
  const Mat pi = pi_S_at(f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rational v = 0;
      for (std::size_t k = 0; k < 3; ++k) v += c.g.c(i, j, k) * mu[k];
      CHECK(pi(i, j) == v);
    }
  CHECK(predicted_kernel(f).dim() == 0);
  CHECK(kernel_of(L).dim() == 0);
}

TEST_CASE("pair family at the identity") {
  const CatalogPair& c = catalog_entry("pair_so3");
  const PointFrame f(default_connection(c, pair_dressing_point(c.pair, Mat::identity(3))), c.splittings.front().split);
  CHECK(f.rho.is_zero());
  CHECK(L_S_at(f) == cotangent_space(3));
  CHECK(pi_S_at(f).is_zero());
}

TEST_CASE("three routes to pi_S agree and L_S, C_S are transversal") {
  Rng rng(3);
  int points = 0;
  for (const auto& c : catalog())
    for (const auto& ns : c.splittings)
      for (int t = 0; t < 9; ++t, ++points) {
        const PointFrame f(default_connection(c, random_point(c, rng)), ns.split);
        const DiracSpace L = L_S_at(f), C = C_S_at(f);
        CHECK(lagrangian(L));
        CHECK(lagrangian(C));
        CHECK(intersect(L.L, C.L).dim() == 0);
        const Mat pi = pi_S_at(f);
        CHECK(pi.is_antisymmetric());
        CHECK(pi == bivector_of_pair(L, C));
        CHECK(pi == pi_S_from_r_matrix(f));
        // row i of pi is pi^sharp eps^i
        CHECK(pi == (f.rho * f.sigma_bar).transpose());
        CHECK(predicted_kernel(f) == kernel_of(L));
      }
  CHECK(points >= 100);
}

TEST_CASE("gauge 2-forms between connections") {
  Rng rng(4);
  for (const auto& c : catalog())
    for (int t = 0; t < 10; ++t) {
      const ConnectionAtPoint base = default_connection(c, random_point(c, rng));
      const PointFrame f(base, c.splittings.front().split);
      CHECK(gauge_B_at(f, f).is_zero());
      const ConnectionAtPoint other = shifted_connection(base, random_antisymmetric(rng, c.g.dim()));
      const PointFrame f2(other, c.splittings.front().split);
      const Mat B = gauge_B_at(f, f2);
      CHECK(B.is_antisymmetric());
      CHECK(gauge(L_S_at(f), B) == L_S_at(f2));
    }
}

TEST_CASE("orbit 2-form") {
  Rng rng(5);
  const CatalogPair& c = catalog_entry("pair_sl2");
  for (int t = 0; t < 10; ++t) {
    const PointFrame f(default_connection(c, random_point(c, rng)), c.splittings.front().split);
    const Vec v = random_mat(rng, 3, 1).col(0), w = random_mat(rng, 3, 1).col(0);
    const Rational a = omega_orbit(f, v, w);
    CHECK(a == -omega_orbit(f, w, v));
    CHECK(a == dot(f.sigma * v, f.rho * w));
    const Subspace k = kernel(f.rho);
    for (std::size_t i = 0; i < k.dim(); ++i) CHECK(omega_orbit(f, vec_add(v, k.vector(i)), w) == a);
  }
}

TEST_CASE("equivalence at a point") {
  Rng rng(6);
  for (const auto& c : catalog())
    for (int t = 0; t < 6; ++t) {
      CAPTURE(c.tag);
      const PointFrame f(default_connection(c, random_point(c, rng)), c.splittings.front().split);
      const std::size_t n = f.n();
      const DiracSpace LS = L_S_at(f), CS = C_S_at(f);

      const EquivalenceData id = equivalence_at(f, Mat::identity(n), LS);
      CHECK(id.quasi.pi == pi_S_at(f));
      CHECK(id.reconstruction_ok);
      CHECK(id.moment_condition);
      CHECK(id.h_in_L);

      // V = T_xS + R^2 with a symplectic second factor, sheared so that J f = J.
      const std::size_t m = n + 2;
      const Mat J = hstack(Mat::identity(n), Mat(n, 2));
      Mat shear = Mat::identity(m);
      shear.set_block(n, 0, random_mat(rng, 2, n));
      const DiracSpace L = forward_image(shear, block_product(LS, graph_2form(Mat{{0, 1}, {-1, 0}})));
      REQUIRE(is_strong(J, L, LS).strong());
      const EquivalenceData e = equivalence_at(f, J, L);
      CHECK(e.reconstruction_ok);
      CHECK(e.reconstructed == L);
      CHECK(e.moment_condition);
      CHECK(e.h_in_L);
      CHECK(e.reconstructed == from_quasi(J, e.quasi, LS, CS));
      CHECK(check_quasi_invariants(J, e.quasi, LS, CS).pass());
      CHECK(e.T == e.rho_M * f.rho_bar * J);
      CHECK_THROWS_AS(equivalence_at(f, Mat(n, m), L), std::invalid_argument);
    }
}

TEST_CASE("trivial equivalence on the cotangent family") {
  const CatalogPair& c = catalog_entry("cotangent_so3");
  const PointFrame f(default_connection(c, cotangent_dressing_point(c.pair, c.g, Vec{1, 1, 2})),
                     c.splittings.front().split);
  const DiracSpace LS = L_S_at(f);
  const EquivalenceData e = equivalence_at(f, Mat::identity(3), LS);
  // the two conditions of a trivial equivalence
  CHECK(e.quasi.pi.transpose() * f.sigma == e.rho_M);
  CHECK((e.quasi.pi.transpose() * e.T.transpose()).is_zero());
  CHECK(graph_bivector(e.quasi.pi) == LS);
}
