// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria (capped at 1).

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "maninkit/fuzz.hpp"
#include "maninkit/numgeom.hpp"
#include "oracles.hpp"

using namespace maninkit;
using namespace maninkit::num;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

const std::vector<std::string> kPairFamilies{"pair_so3", "pair_sl2"};
const std::vector<std::string> kAllFamilies{"pair_so3", "pair_sl2", "cotangent_so3", "cotangent_heis3"};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double residual_of(const SuiteReport& rep, const std::string& name) {
  const CheckRecord* c = rep.find(name);
  if (!c) throw std::runtime_error("missing check " + name + " in " + rep.suite);
  return c->max_residual;
}

Outcome double_consistency() {
  std::size_t cases = 0, mismatches = 0;
  for (const auto& entry : catalog())
    for (const auto& ns : entry.splittings) {
      ++cases;
      const ManinPair D = drinfeld_double(split_to_lqb(ns.split));
      if (!(D.d == oracle::in_basis(entry.pair.d, ns.split.adapted_basis()))) ++mismatches;
    }
  return {mismatches == 0, std::to_string(cases) + " splittings, " + std::to_string(mismatches) + " mismatches"};
}

Outcome q_axioms_vs_jacobi() {
  Rng rng(20240601);
  std::size_t disagree = 0, valid = 0;
  const std::size_t n = 1000;
  for (std::size_t t = 0; t < n; ++t) {
    const LqbInstance inst = random_lqb(rng, 2 + t % 3);
    const bool axioms = check_q_axioms(inst.q).pass();
    const bool jac = oracle::jacobi_holds(drinfeld_double(inst.q).d);
    disagree += axioms != jac;
    valid += jac;
  }
  return {disagree == 0, std::to_string(n) + " instances (" + std::to_string(valid) + " valid), " +
                             std::to_string(disagree) + " disagreements"};
}

Outcome round_trips() {
  Rng rng(20240602);
  std::size_t failures = 0;
  const std::size_t n = 1000;
  for (std::size_t t = 0; t < n; ++t)
    if (!check_round_trip(random_strong_map(rng, 5)).pass()) ++failures;
  return {failures == 0, std::to_string(n) + " instances, " + std::to_string(failures) + " failures"};
}

Outcome twists() {
  std::size_t pairs = 0, mismatches = 0;
  for (const auto& entry : catalog())
    for (const auto& a : entry.splittings)
      for (const auto& b : entry.splittings) {
        ++pairs;
        if (!(twist_transform(split_to_lqb(a.split), twist(a.split, b.split)) == split_to_lqb(b.split))) ++mismatches;
      }
  return {mismatches == 0, std::to_string(pairs) + " ordered pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome omega_d() {
  Outcome out;
  std::ostringstream os;
  for (const auto& f : kPairFamilies) {
    SuiteConfig cfg;
    cfg.points = 50;
    cfg.seed = 5;
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteReport rep = run_suite("omega_d", f, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double contraction = std::max(residual_of(rep, "contraction_right"), residual_of(rep, "contraction_left"));
    const double dom = residual_of(rep, "d_omega");
    const bool strong = rep.find("strong_map")->pass() && residual_of(rep, "strong_map") == 0;
    const bool ok = contraction <= 1e-10 && dom <= 1e-6 && strong && secs < 10.0;
    out.pass = out.pass && ok;
    os << f << ": contractions " << sci(contraction) << ", d omega " << sci(dom) << ", strong " << (strong ? "yes" : "no")
       << ", " << sci(secs) << " s; ";
  }
  out.detail = os.str();
  return out;
}

Outcome quasi_poisson() {
  SuiteConfig cfg;
  cfg.points = 30;
  cfg.seed = 6;
  const SuiteReport central = run_suite("quasi_poisson", "pair_so3", cfg);
  cfg.scheme = Scheme::Richardson;
  const SuiteReport rich = run_suite("quasi_poisson", "pair_so3", cfg);
  const double jc = residual_of(central, "jacobiator"), jr = residual_of(rich, "jacobiator");
  const double inv = std::max(residual_of(central, "invariance"), residual_of(rich, "invariance"));
  return {jc <= 1e-4 && jr <= 1e-6 && inv <= 1e-6,
          "jacobiator central " + sci(jc) + ", Richardson " + sci(jr) + ", invariance " + sci(inv)};
}

Outcome equivalence() {
  Outcome out;
  std::ostringstream os;
  for (const auto& f : kPairFamilies) {
    SuiteConfig cfg;
    cfg.points = 50;
    cfg.seed = 7;
    const double r = residual_of(run_suite("equivalence", f, cfg), "double_realization_pi");
    out.pass = out.pass && r <= 1e-8;
    os << f << " " << sci(r) << "; ";
  }
  out.detail = os.str();
  return out;
}

Outcome groupoid() {
  Outcome out;
  std::ostringstream os;
  for (const auto& f : kAllFamilies) {
    const GroupoidResult g = groupoid_checks(GroupFamily(f), 100, 8);
    bool ok = g.multiplicativity <= 1e-10;
    os << f << " mult " << sci(g.multiplicativity);
    if (g.canonical_applies) {
      ok = ok && g.canonical <= 1e-12;
      os << " canonical " << sci(g.canonical);
    }
    if (f == "cotangent_so3" && !g.canonical_applies) ok = false;
    os << "; ";
    out.pass = out.pass && ok;
  }
  out.detail = os.str();
  return out;
}

Outcome convergence() {
  std::size_t measured = 0, floor = 0, slow = 0;
  double worst = 1e300;
  std::string worst_name;
  for (const auto& f : kAllFamilies) {
    SuiteConfig cfg;
    cfg.points = 10;
    cfg.seed = 9;
    const SuiteReport rep = run_all_suites(f, cfg);
    for (const auto& c : rep.checks) {
      if (c.name.find("convergence/") == std::string::npos || c.status == "SKIPPED") continue;
      if (!c.ratio) {
        ++floor;  // both residuals at rounding level, nothing to extrapolate
        continue;
      }
      ++measured;
      if (*c.ratio < worst) {
        worst = *c.ratio;
        worst_name = f + ":" + c.name;
      }
      if (*c.ratio < 3.5) ++slow;
    }
  }
  return {slow == 0 && measured > 0, std::to_string(measured) + " refinements, " + std::to_string(floor) +
                                         " at rounding floor, worst ratio " + sci(worst) + " (" + worst_name + ")"};
}

Outcome exact_float() {
  Outcome out;
  std::ostringstream os;
  for (const auto& f : kAllFamilies) {
    const ExactAgreement a = exact_agreement(GroupFamily(f), 20, 10);
    out.pass = out.pass && a.L_S <= 1e-12 && a.pi_S <= 1e-12;
    os << f << " L_S " << sci(a.L_S) << " pi_S " << sci(a.pi_S) << "; ";
  }
  out.detail = os.str();
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "double reproduces d exactly", 1.0, double_consistency},
      {2, "Q-axioms iff Jacobi on 1000 instances", 30.0, q_axioms_vs_jacobi},
      {3, "strong map round trips on 1000 instances", 60.0, round_trips},
      {4, "twist formula on all splitting pairs", 0.0, twists},
      {5, "omega_D identities on pair families", 20.0, omega_d},
      {6, "quasi-Poisson conditions on pair_so3", 30.0, quasi_poisson},
      {7, "pi_D from the double realization", 0.0, equivalence},
      {8, "groupoid 2-form", 0.0, groupoid},
      {9, "second-order convergence", 0.0, convergence},
      {10, "exact and float layers agree", 0.0, exact_float},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += " time limit " + sci(c.time_limit_s) + " s exceeded;";
    }
    failed += !o.pass;
    std::printf("%s  criterion %2d  %-44s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
