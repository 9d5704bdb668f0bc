#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "maninkit/diraclin.hpp"
#include "maninkit/quasibialg.hpp"
#include "maninkit/serialize.hpp"

namespace maninkit {

using Rng = std::mt19937_64;

Rational random_small(Rng& rng, int lo, int hi);
Mat random_mat(Rng& rng, std::size_t r, std::size_t c, int lo = -2, int hi = 2);
Mat random_antisymmetric(Rng& rng, std::size_t n, int lo = -2, int hi = 2);
// Random Lagrangian {(X,a): X in U, a - i_X B vanishes on U}.
DiracSpace random_lagrangian(Rng& rng, std::size_t m);

// Lie algebras of dimension 2..4 used as seeds for random quasi-bialgebras.
std::vector<LieAlgebra> small_lie_algebras(std::size_t dim);

struct LqbInstance {
  LieQuasiBialgebra q;
  bool perturbed = false;
};
LqbInstance random_lqb(Rng& rng, std::size_t dim);

struct StrongMapInstance {
  Mat J;            // w x m
  DiracSpace LW, CW;
  QuasiData quasi;  // data the instance was built from
  DiracSpace L;     // from_quasi(J, quasi, LW, CW)
};
// Constructive generator: every output is a strong Dirac map by construction.
StrongMapInstance random_strong_map(Rng& rng, std::size_t max_dim);
// Random antisymmetric pi with pi^sharp J^T = N, or nullopt if the system is inconsistent.
std::optional<Mat> solve_bivector(Rng& rng, const Mat& J, const Mat& N);

json strong_map_to_json(const StrongMapInstance& s);
StrongMapInstance strong_map_from_json(const json& j);

struct RoundTripVerdict {
  bool strong = false;
  bool invariants = false;
  bool forward = false;  // from_quasi(to_quasi(L)) == L
  bool reverse = false;  // to_quasi(from_quasi(q)) == q
  bool pass() const { return strong && invariants && forward && reverse; }
};
RoundTripVerdict check_round_trip(const StrongMapInstance& s, bool mutate = false);

// is_strong(J, L, L_W) agrees with is_strong(J, tau_{J^T B J} L, tau_B L_W).
bool check_gauge_compatibility(const StrongMapInstance& s, const Mat& B, const DiracSpace& other_L);

struct FunctorialCase {
  Mat f;
  RealizationInstance source, target, perturbed_target;
  bool has_perturbation = false;
};
FunctorialCase random_functorial_case(Rng& rng, const StrongMapInstance& base);

struct FuzzConfig {
  std::size_t max_dim = 5;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  bool mutate = false;
};

struct FuzzReport {
  std::size_t instances = 0;
  std::size_t round_trip_failures = 0;
  std::size_t gauge_failures = 0;
  std::size_t functorial_failures = 0;
  std::size_t twist_failures = 0;
  std::size_t lqb_disagreements = 0;
  std::optional<json> first_counterexample;
  std::optional<std::size_t> first_failure_index;
  bool pass() const {
    return round_trip_failures + gauge_failures + functorial_failures + twist_failures + lqb_disagreements == 0;
  }
  json to_json(const FuzzConfig& cfg) const;
};
FuzzReport run_fuzz(const FuzzConfig& cfg);
// Recomputes the verdict of a serialized counterexample.
json replay_counterexample(const json& ce);

}  // namespace maninkit
