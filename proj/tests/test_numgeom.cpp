#include <doctest.h>

#include <cmath>
#include <limits>

#include "maninkit/numgeom.hpp"

using namespace maninkit;
using namespace maninkit::num;

namespace {

const std::vector<std::string>& families() {
  static const std::vector<std::string> f{"pair_so3", "pair_sl2", "cotangent_so3", "cotangent_heis3"};
  return f;
}

// Plain Taylor series after heavy scaling; independent of the library's expm.
MatX reference_exp(const MatX& a) {
  const int squarings = 6;
  const MatX x = a / std::ldexp(1.0, squarings);
  MatX result = MatX::Identity(a.rows(), a.cols()), term = result;
  for (int k = 1; k < 30; ++k) {
    term = term * x / k;
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Point identity_D(const GroupFamily& fam) {
  const MatX I = fam.group().identity();
  if (fam.kind() == FamilyKind::Pair) return Point{{I, I}, VecX()};
  return Point{{I}, VecX::Zero(fam.n())};
}

double point_distance(const Point& a, const Point& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.g.size(); ++i) d = std::max(d, (a.g[i] - b.g[i]).cwiseAbs().maxCoeff());
  if (a.mu.size()) d = std::max(d, (a.mu - b.mu).cwiseAbs().maxCoeff());
  return d;
}

// Entries of every matrix and the vector part, as functions on D.
VecX D_coordinates(const Point& a) {
  std::vector<double> v;
  for (const auto& g : a.g)
    for (Eigen::Index i = 0; i < g.size(); ++i) v.push_back(g.data()[i]);
  for (Eigen::Index i = 0; i < a.mu.size(); ++i) v.push_back(a.mu(i));
  return Eigen::Map<VecX>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST_CASE("exp and log") {
  Rng rng(1);
  for (const auto& G : {MatrixGroup::so3(), MatrixGroup::sl2(), MatrixGroup::heis3()}) {
    for (int t = 0; t < 50; ++t) {
      const VecX xi = uniform_ball(rng, G.n(), 1.5);
      const MatX g = G.exp(xi);
      CHECK((g - reference_exp(G.hat(xi))).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((G.log(g) - xi).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((G.vee(G.hat(xi)) - xi).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  CHECK((expm(MatX::Zero(3, 3)) - MatX::Identity(3, 3)).norm() == 0);
}

TEST_CASE("adjoint action") {
  Rng rng(2);
  for (const auto& G : {MatrixGroup::so3(), MatrixGroup::sl2(), MatrixGroup::heis3()}) {
    for (int t = 0; t < 30; ++t) {
      const VecX xi = uniform_ball(rng, G.n(), 1.5);
      // the bracket is minus the matrix commutator, so Ad(exp xi) = exp(-ad xi)
      CHECK((G.Ad(G.exp(xi)) - reference_exp(-G.flie().ad(xi))).cwiseAbs().maxCoeff() < 1e-12);
      const Mat g = G.snap(G.exp(xi));
      CHECK((to_float(G.Ad_exact(g)) - G.Ad(to_float(g))).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("snapped group elements lie on the group exactly") {
  Rng rng(3);
  const MatrixGroup so3 = MatrixGroup::so3(), sl2 = MatrixGroup::sl2(), h = MatrixGroup::heis3();
  for (int t = 0; t < 20; ++t) {
    const MatX a = so3.sample(rng), b = sl2.sample(rng), c = h.sample(rng);
    const Mat A = so3.snap(a), B = sl2.snap(b), C = h.snap(c);
    CHECK(A.transpose() * A == Mat::identity(3));
    CHECK(determinant(A) == 1);
    CHECK(determinant(B) == 1);
    CHECK(C(1, 0) == 0);
    CHECK(C(0, 0) == 1);
    CHECK((to_float(A) - a).cwiseAbs().maxCoeff() < 1e-3);
    CHECK((to_float(B) - b).cwiseAbs().maxCoeff() < 1e-3);
    CHECK((to_float(C) - c).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("adjoint action of D matches conjugation of one-parameter groups") {
  Rng rng(4);
  for (const auto& tag : families()) {
    const GroupFamily fam(tag);
    const Point e = identity_D(fam);
    for (int t = 0; t < 10; ++t) {
      const Point a = to_float(fam.sample_D(rng));
      const MatX Ad = fam.Ad_D(a);
      for (std::size_t k = 0; k < fam.D().dim; ++k) {
        const VecX v = VecX::Unit(fam.D().dim, k);
        const Point lhs = fam.mult(fam.mult(a, fam.D().flow(e, v, 0.7)), fam.inverse(a));
        const Point rhs = fam.D().flow(e, Ad * v, 0.7);
        CHECK(point_distance(lhs, rhs) < 1e-11);
      }
      CHECK(point_distance(fam.mult(a, fam.inverse(a)), e) < 1e-12);
    }
  }
}

TEST_CASE("finite differences") {
  const GroupFamily cot("cotangent_so3"), pair("pair_so3");
  Rng rng(5);
  const FDConfig central{1e-4, Scheme::Central}, rich{1e-4, Scheme::Richardson};
  const Point x{{}, VecX::Random(3)};
  const VecX dir = VecX::Random(3);

  const Field constant = [](const Point&) { return VecX::Constant(2, 3.0); };
  CHECK(fd_derivative(cot.S(), constant, x, dir, central).cwiseAbs().maxCoeff() == 0);

  MatX A(2, 3);
  A << 1, 2, 3, -4, 5, 0.5;
  const Field linear = [&](const Point& p) { return VecX(A * p.mu); };
  // With dyadic data and a dyadic step every operation is exact, so only the
  // truncation error (zero for affine fields) could remain.
  const Point xd{{}, VecX::Constant(3, 0.375)};
  const VecX dd = VecX::Constant(3, -1.25);
  const FDConfig dyadic{std::ldexp(1.0, -13), Scheme::Central};
  CHECK((fd_derivative(cot.S(), linear, xd, dd, dyadic) - A * dd).cwiseAbs().maxCoeff() < 1e-12);
  // at generic data the error is pure rounding, of order eps |F| / h
  CHECK((fd_derivative(cot.S(), linear, x, dir, central) - A * dir).cwiseAbs().maxCoeff() < 1e-10);

  const Field trace = [](const Point& p) { return VecX::Constant(1, p.g[0].trace()); };
  const Field entries = [&](const Point& p) { return pair.coordinates(p); };
  for (int t = 0; t < 10; ++t) {
    const Point g{{pair.group().sample(rng)}, VecX()};
    const VecX zeta = uniform_ball(rng, 3, 1.0);
    const double exact = (pair.group().hat(zeta) * g.g[0]).trace();
    CHECK(std::abs(fd_derivative(pair.S(), trace, g, zeta, central)(0) - exact) < 1e-7);
    CHECK(std::abs(fd_derivative(pair.S(), trace, g, zeta, rich)(0) - exact) < 1e-11);
    const MatX dX = pair.group().hat(zeta) * g.g[0];
    const VecX de = fd_derivative(pair.S(), entries, g, zeta, rich);
    CHECK((de - matrix_to_tensor(dX)).cwiseAbs().maxCoeff() < 1e-10);
  }

  for (double bad : {0.0, 1e-13, -1e-4, std::numeric_limits<double>::quiet_NaN()})
    CHECK_THROWS_AS(fd_derivative(cot.S(), linear, x, dir, FDConfig{bad, Scheme::Central}), StepUnderflow);
}

TEST_CASE("frame constants are the brackets of the flow generators") {
  Rng rng(6);
  const FDConfig cfg{1e-3, Scheme::Richardson};
  for (const auto& tag : families()) {
    const GroupFamily fam(tag);
    for (const Space* M : {&fam.S(), &fam.D()}) {
      const bool onS = M == &fam.S();
      const Point p = onS ? to_float(fam.sample_S(rng)) : to_float(fam.sample_D(rng));
      const Field f = [&](const Point& q) { return onS ? fam.coordinates(q) : D_coordinates(q); };
      const std::size_t n = M->dim;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Field Ej_f = [&, j](const Point& q) { return fd_derivative(*M, f, q, VecX::Unit(n, j), cfg); };
          const Field Ei_f = [&, i](const Point& q) { return fd_derivative(*M, f, q, VecX::Unit(n, i), cfg); };
          const VecX lhs = fd_derivative(*M, Ej_f, p, VecX::Unit(n, i), cfg) - fd_derivative(*M, Ei_f, p, VecX::Unit(n, j), cfg);
          VecX rhs = VecX::Zero(lhs.size());
          for (std::size_t k = 0; k < n; ++k)
            if (M->frame(i, j, k) != 0) rhs += M->frame(i, j, k) * fd_derivative(*M, f, p, VecX::Unit(n, k), cfg);
          CAPTURE(tag);
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
  }
}

TEST_CASE("exterior derivative") {
  Rng rng(7);
  const GroupFamily fam("pair_sl2");
  const FDConfig cfg{1e-3, Scheme::Richardson};
  const Point p = to_float(fam.sample_S(rng));
  // constant 1-form: d theta(E_i, E_j) = -theta([E_i, E_j])
  const VecX theta = VecX::Random(3);
  const Field form = [&](const Point&) { return theta; };
  const VecX d = exterior_derivative(fam.S(), form, 1, p, cfg);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double expect = 0;
      for (std::size_t k = 0; k < 3; ++k) expect -= fam.S().frame(i, j, k) * theta(k);
      CHECK(std::abs(d(i * 3 + j) - expect) < 1e-12);
    }
  // d(df) = 0 for the trace function
  const Field f = [](const Point& q) { return VecX::Constant(1, q.g[0].trace()); };
  const Field df = [&](const Point& q) { return exterior_derivative(fam.S(), f, 0, q, cfg); };
  CHECK(exterior_derivative(fam.S(), df, 1, p, cfg).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("dressing generators come from differentiating the action") {
  Rng rng(8);
  for (const auto& tag : families()) {
    const GroupFamily fam(tag);
    const std::size_t n = fam.n();
    for (int t = 0; t < 10; ++t) {
      const Point x = to_float(fam.sample_S(rng));
      // a point of D over x
      const Point b = fam.kind() == FamilyKind::Pair ? Point{{x.g[0], fam.group().identity()}, VecX()}
                                                     : Point{{fam.group().identity()}, x.mu};
      REQUIRE(point_distance(fam.p(b), x) < 1e-14);
      const MatX rS = fam.rho_S(x);
      for (std::size_t k = 0; k < 2 * n; ++k) {
        const VecX v = VecX::Unit(2 * n, k);
        const double h = 1e-5;
        const Point plus = fam.p(fam.D().flow(b, v, h)), minus = fam.p(fam.D().flow(b, v, -h));
        VecX deriv;
        if (fam.kind() == FamilyKind::Pair)
          deriv = fam.group().vee((plus.g[0] - minus.g[0]) / (2 * h) * x.g[0].inverse());
        else
          deriv = (plus.mu - minus.mu) / (2 * h);
        CAPTURE(tag);
        CHECK((deriv - rS.col(k)).cwiseAbs().maxCoeff() < 1e-8);
      }
      CHECK((rS * fam.Qinv() * rS.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      const MatX s = fam.s(x);
      CHECK((rS * s - MatX::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((s.transpose() * fam.Q() * s).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  const GroupFamily pair("pair_so3");
  const Point e{{pair.group().identity()}, VecX()};
  MatX expect(3, 6);
  expect << MatX::Identity(3, 3), -MatX::Identity(3, 3);
  CHECK((pair.rho_S(e) - expect).norm() == 0);
  MatX half(6, 3);
  half << 0.5 * MatX::Identity(3, 3), -0.5 * MatX::Identity(3, 3);
  CHECK((pair.s(e) - half).norm() == 0);
  CHECK(pair.pi_S(e).norm() == 0);
}

TEST_CASE("float and exact layers agree at rational points") {
  for (const auto& tag : families()) {
    const ExactAgreement a = exact_agreement(GroupFamily(tag), 10, 3);
    CHECK(a.L_S <= 1e-12);
    CHECK(a.pi_S <= 1e-12);
  }
}

TEST_CASE("subspace distance") {
  MatX a(1, 2), b(1, 2), c(2, 2);
  a << 1, 0;
  b << 2, 0;
  c << 1, 0, 0, 1;
  CHECK(subspace_distance(a, b) < 1e-15);
  MatX r(1, 2);
  r << 1, 1;
  CHECK(std::abs(subspace_distance(a, r) - std::sqrt(0.5)) < 1e-12);
  CHECK(subspace_distance(a, c) == 1.0);
}

TEST_CASE("families and splittings") {
  CHECK(family_tags() == families());
  CHECK_THROWS_AS(GroupFamily("pair_su2"), std::out_of_range);
  CHECK_THROWS_AS(GroupFamily("pair_so3", "nonsense"), std::out_of_range);
  CHECK(GroupFamily("pair_so3").splitting_name() == "antidiagonal");
  CHECK(GroupFamily("cotangent_heis3").splitting_name() == "dual");
}
