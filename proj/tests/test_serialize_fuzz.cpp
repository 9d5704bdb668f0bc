#include <doctest.h>

#include "maninkit/catalog.hpp"
#include "maninkit/fuzz.hpp"
#include "maninkit/serialize.hpp"

using namespace maninkit;

TEST_CASE("rationals round trip as strings") {
  for (const char* s : {"0", "-3/2", "7", "-123456789012345678901234567891/10"}) {
    const Rational q = parse_rational(s);
    CHECK(rational_to_json(q) == json(s));
    CHECK(rational_from_json(rational_to_json(q)) == q);
  }
  CHECK(rational_from_json(json(5)) == 5);
  CHECK_THROWS(rational_from_json(json("1/0")));
  CHECK_THROWS(rational_from_json(json(true)));
}

TEST_CASE("structures round trip exactly") {
  Rng rng(1);
  for (const auto& c : catalog()) {
    CHECK(lie_from_json(lie_to_json(c.g)) == c.g);
    const ManinPair P = manin_from_json(manin_to_json(c.pair));
    CHECK(P.d == c.pair.d);
    CHECK(P.Q == c.pair.Q);
    CHECK(P.g == c.pair.g);
    for (const auto& ns : c.splittings) {
      const LieQuasiBialgebra q = split_to_lqb(ns.split);
      CHECK(lqb_from_json(lqb_to_json(q)) == q);
    }
  }
  for (int t = 0; t < 20; ++t) {
    const Mat m = random_mat(rng, 3, 4);
    CHECK(mat_from_json(mat_to_json(m)) == m);
    const DiracSpace D = random_lagrangian(rng, 1 + t % 4);
    CHECK(dirac_from_json(dirac_to_json(D)) == D);
    const StrongMapInstance s = random_strong_map(rng, 4);
    const StrongMapInstance back = strong_map_from_json(strong_map_to_json(s));
    CHECK(back.J == s.J);
    CHECK(back.L == s.L);
    CHECK(back.quasi == s.quasi);
  }
  const json lie = lie_to_json(so3());
  CHECK(lie["dim"] == 3);
  CHECK(lie.contains("brackets"));
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(dirac_from_json(json::parse(R"({"dim": 2, "L": [["1","0","0","1"]]})")), ParseError);
  CHECK_THROWS_AS(dirac_from_json(json::parse(R"({"dim": 1, "L": [["1","1"]]})")), ParseError);
  CHECK_THROWS_AS(lie_from_json(json::parse(R"({"brackets": []})")), std::exception);
  CHECK_THROWS(mat_from_json(json::parse(R"([["1"],["1","2"]])")));
}

TEST_CASE("fuzz campaign finds no counterexamples") {
  FuzzConfig cfg;
  cfg.count = 200;
  cfg.seed = 3;
  const FuzzReport rep = run_fuzz(cfg);
  CHECK(rep.pass());
  CHECK(rep.instances == 200);
  CHECK_FALSE(rep.first_counterexample.has_value());
  const json j = rep.to_json(cfg);
  CHECK(j["pass"] == true);
  CHECK(j["first_counterexample"].is_null());
  CHECK(run_fuzz(cfg).to_json(cfg).dump() == j.dump());
}

TEST_CASE("mutation mode is caught within 100 instances and replays identically") {
  FuzzConfig cfg;
  cfg.count = 100;
  cfg.seed = 1;
  cfg.mutate = true;
  const FuzzReport rep = run_fuzz(cfg);
  CHECK_FALSE(rep.pass());
  REQUIRE(rep.first_counterexample.has_value());
  CHECK(*rep.first_failure_index < 100);
  const json ce = json::parse(rep.first_counterexample->dump());
  const json verdict = replay_counterexample(ce);
  CHECK(verdict["pass"] == false);
  CHECK(replay_counterexample(ce) == verdict);

  json honest = ce;
  honest["mutation_mode"] = false;
  CHECK(replay_counterexample(honest)["pass"] == true);
  CHECK_THROWS_AS(replay_counterexample(json{{"property", "nothing"}}), ParseError);
}
