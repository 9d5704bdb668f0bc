#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maninkit/catalog.hpp"
#include "maninkit/homog.hpp"
#include "maninkit/serialize.hpp"

namespace maninkit::num {

using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;
using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Float/exact conversion

MatX to_float(const Mat& m);
VecX to_float(const Vec& v);
// Nearest multiple of 2^-bits, as an exact rational.
Rational snap_scalar(double x, int bits);
Mat snap(const MatX& m, int bits);
Vec snap(const VecX& v, int bits);

// Largest principal-angle sine between the row spaces of a and b (0 when equal).
double subspace_distance(const MatX& rows_a, const MatX& rows_b);
double max_abs(const MatX& m);

// ---------------------------------------------------------------------------
// Matrix exponential / logarithm

// Scaling and squaring with a 12-term Taylor polynomial.
MatX expm(const MatX& a);
// Inverse scaling and squaring (Denman-Beavers square roots, then a log(1+x) series).
MatX logm(const MatX& a);

struct FloatLie {
  std::size_t n = 0;
  std::vector<double> c;  // c[(i*n+j)*n+k]
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * n + j) * n + k]; }
  VecX bracket(const VecX& u, const VecX& v) const;
  MatX ad(const VecX& u) const;  // column k = [u, e_k]
};
FloatLie to_float(const LieAlgebra& L);

// Faithful matrix realization of a catalog Lie algebra.  The bracket of the
// abstract algebra is minus the matrix commutator, which is the bracket of
// right-invariant vector fields; tangent vectors at g are written xi with
// X = xi * g throughout.
class MatrixGroup {
 public:
  enum class Shape { Rotation3, Unimodular2, Unipotent3 };

  MatrixGroup() = default;
  MatrixGroup(LieAlgebra lie, std::vector<Mat> basis, Shape shape);
  static MatrixGroup so3();
  static MatrixGroup sl2();
  static MatrixGroup heis3();

  std::size_t n() const { return lie_.dim(); }
  std::size_t size() const { return size_; }
  const LieAlgebra& lie() const { return lie_; }
  const FloatLie& flie() const { return flie_; }
  const std::vector<Mat>& basis() const { return basis_; }

  MatX hat(const VecX& xi) const;
  VecX vee(const MatX& m) const;  // least-squares inverse of hat
  MatX exp(const VecX& xi) const { return expm(hat(xi)); }
  VecX log(const MatX& g) const { return vee(logm(g)); }
  MatX Ad(const MatX& g) const;
  MatX identity() const { return MatX::Identity(size_, size_); }

  Mat Ad_exact(const Mat& g) const;
  // A group element with rational entries close to g (exactly in the group).
  Mat snap(const MatX& g, int bits = 16) const;
  // Random element exp(xi) with xi uniform in the ball of the given radius.
  MatX sample(Rng& rng, double radius = 1.5) const;

 private:
  LieAlgebra lie_;
  FloatLie flie_;
  std::vector<Mat> basis_;
  std::vector<MatX> fbasis_;
  MatX flat_pinv_;  // n x size^2
  Mat flat_exact_;  // size^2 x n
  Shape shape_ = Shape::Rotation3;
  std::size_t size_ = 0;
};

VecX uniform_ball(Rng& rng, std::size_t n, double radius);

// ---------------------------------------------------------------------------
// Manifolds with a global frame of constant bracket coefficients

// Points of S, D or G: a list of group matrices and an optional vector part.
struct Point {
  std::vector<MatX> g;
  VecX mu;
};
struct ExactPoint {
  std::vector<Mat> g;
  Vec mu;
};
Point to_float(const ExactPoint& p);

struct Space {
  std::string name;
  std::size_t dim = 0;
  FloatLie frame;  // [E_i, E_j] = sum_k frame(i,j,k) E_k
  // Time-t flow of the frame field sum_k dir_k E_k starting at p.
  std::function<Point(const Point&, const VecX&, double)> flow;
};

enum class Scheme { Central, Richardson };

struct FDConfig {
  double h = 1e-4;
  Scheme scheme = Scheme::Central;
};

class StepUnderflow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Field = std::function<VecX(const Point&)>;

// Derivative of F along the frame field with coefficients dir.
VecX fd_derivative(const Space& M, const Field& F, const Point& p, const VecX& dir, const FDConfig& cfg);
// Column k = E_k(F) at p.
MatX fd_jacobian(const Space& M, const Field& F, const Point& p, const FDConfig& cfg);

// k-forms are stored as full antisymmetric tensors of length dim^k in frame components.
VecX exterior_derivative(const Space& M, const Field& form, std::size_t degree, const Point& p,
                         const FDConfig& cfg);
VecX matrix_to_tensor(const MatX& two_form);
// Pull back a k-form by the linear map A (target frame <- source frame).
VecX pullback(const VecX& form, std::size_t degree, const MatX& A);
VecX contract_first(const VecX& form, std::size_t degree, std::size_t dim, const VecX& X);

// ---------------------------------------------------------------------------
// The catalog families

class GroupFamily {
 public:
  explicit GroupFamily(const std::string& tag, const std::string& splitting = "");

  const std::string& tag() const { return tag_; }
  FamilyKind kind() const { return kind_; }
  const CatalogPair& entry() const { return *entry_; }
  const std::string& splitting_name() const { return split_name_; }
  const IsotropicSplitting& splitting() const { return split_; }
  const MatrixGroup& group() const { return G_; }
  std::size_t n() const { return G_.n(); }

  const FloatLie& d() const { return d_; }
  const MatX& Q() const { return Q_; }
  const MatX& Qinv() const { return Qinv_; }
  const MatX& iota() const { return iota_; }
  const MatX& j() const { return j_; }
  const MatX& r() const { return r_; }
  const LieQuasiBialgebra& lqb() const { return lqb_; }

  const Space& S() const { return S_; }
  const Space& D() const { return D_; }

  // Sampling (points are snapped to exact rational elements first).
  ExactPoint sample_S(Rng& rng) const;
  ExactPoint sample_D(Rng& rng) const;
  Mat sample_G(Rng& rng) const;

  // Group structure of D.
  Point mult(const Point& a, const Point& b) const;
  Point inverse(const Point& a) const;
  MatX Ad_D(const Point& a) const;
  Point p(const Point& a) const;
  Point pbar(const Point& a) const { return p(inverse(a)); }
  Point embed_G(const MatX& g) const;  // G inside D

  // Dressing data on S.
  MatX rho_S(const Point& x) const;  // n x 2n
  MatX s(const Point& x) const;      // 2n x n
  MatX sigma(const Point& x) const;
  MatX rho(const Point& x) const;
  MatX sigma_bar(const Point& x) const;
  MatX rho_bar(const Point& x) const;
  MatX pi_S(const Point& x) const;
  MatX pi_S_from_r(const Point& x) const;
  // Closed-form phi_S (zero for cotangent families), tensor of length n^3.
  VecX phi_S(const Point& x) const;
  // Ambient coordinate functions of S (matrix entries or linear coordinates).
  VecX coordinates(const Point& x) const;

  // G acting on S and its derivative in the frame of S.
  Point act(const MatX& g, const Point& x) const;
  MatX act_tangent(const MatX& g, const Point& x) const;

  // D-level forms in the right-invariant frame of D.
  MatX dp(const Point& a) const;
  MatX dpbar(const Point& a) const;
  MatX theta(const Point& a) const;        // 2n x 2n, values in g inside d
  MatX omega_D(const Point& a) const;      // from <theta^R, Inv^* theta> - <theta^L, theta>
  MatX omega_D_alt(const Point& a) const;  // from Ad_a theta - theta(Inv) - id
  MatX thetaL_theta(const Point& a) const; // the 2-form <theta^L, theta>
  MatX pi_D(const Point& a) const;         // <a^v, b^v> - (r^r + r^l)(a, b)
  VecX phi_D() const;                      // 1/2 <[X,Y], Z>, tensor of length (2n)^3

  // Action groupoid G x S with left-trivialized V and frame coordinates X.
  double groupoid_form(const MatX& g, const Point& x, const VecX& V, const VecX& X, const VecX& V2,
                       const VecX& X2) const;

  // Exact counterparts at rational points.
  Mat Ad_D_exact(const ExactPoint& a) const;
  ExactPoint inverse_exact(const ExactPoint& a) const;
  ExactPoint p_exact(const ExactPoint& a) const;
  Mat rho_S_exact(const ExactPoint& x) const;
  Mat s_exact(const ExactPoint& x) const;
  PointFrame frame_exact(const ExactPoint& x) const;
  Mat dp_exact(const ExactPoint& a) const;
  Mat dpbar_exact(const ExactPoint& a) const;
  Mat theta_exact(const ExactPoint& a) const;
  Mat omega_D_exact(const ExactPoint& a) const;

 private:
  std::string tag_;
  FamilyKind kind_;
  const CatalogPair* entry_ = nullptr;
  std::string split_name_;
  IsotropicSplitting split_;
  LieQuasiBialgebra lqb_;
  MatrixGroup G_;
  FloatLie d_;
  MatX Q_, Qinv_, iota_, j_, r_, B_;
  Space S_, D_;
};

std::vector<std::string> family_tags();

// Product constructions used for the realization (p, pbar): D -> S x S.
DiracSpace product_dirac(const DiracSpace& a, const DiracSpace& b);
PointFrame product_frame(const PointFrame& a, const PointFrame& b);

// ---------------------------------------------------------------------------
// Verification suites

struct CheckRecord {
  std::string name;
  std::string identity;  // the identity being tested, as a formula
  double max_residual = 0;
  double tol = 0;
  std::string status = "PASS";  // PASS, FAIL or SKIPPED
  std::optional<double> ratio;  // convergence entries only
  std::string note;
  bool pass() const { return status != "FAIL"; }
};

struct SuiteReport {
  std::string suite;
  std::string family;
  std::uint64_t seed = 0;
  std::size_t points = 0;
  double fd_step = 0;
  std::string scheme;
  std::vector<CheckRecord> checks;
  bool pass() const;
  const CheckRecord* find(const std::string& name) const;
  json to_json() const;
};

struct SuiteConfig {
  std::size_t points = 20;
  std::uint64_t seed = 1;
  double h = 1e-4;
  Scheme scheme = Scheme::Central;
  bool convergence = true;
  std::size_t convergence_points = 3;
  unsigned jobs = 1;
  std::string splitting;                 // empty: family default
  std::map<std::string, double> tol;     // per-check overrides
};

std::vector<std::string> suite_names();  // without "all"
SuiteReport run_suite(const std::string& suite, const std::string& family, const SuiteConfig& cfg);
// Runs every suite and concatenates the checks, prefixed by suite name.
SuiteReport run_all_suites(const std::string& family, const SuiteConfig& cfg);

// Groupoid multiplicativity residual at random composable pairs (derivative-free),
// and the entrywise distance to the canonical cotangent form (cotangent families).
struct GroupoidResult {
  double multiplicativity = 0;
  double canonical = 0;      // NaN-free; 0 when not applicable
  bool canonical_applies = false;
  double amm_identification = 0;
  bool amm_applies = false;
};
GroupoidResult groupoid_checks(const GroupFamily& fam, std::size_t pairs, std::uint64_t seed);

// Float L_S and pi_S against the exact layer at rational points.
struct ExactAgreement {
  double L_S = 0;
  double pi_S = 0;
};
ExactAgreement exact_agreement(const GroupFamily& fam, std::size_t points, std::uint64_t seed);

}  // namespace maninkit::num
