#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "maninkit/catalog.hpp"
#include "maninkit/fuzz.hpp"
#include "maninkit/numgeom.hpp"
#include "maninkit/serialize.hpp"

#ifndef MANINKIT_VERSION
#define MANINKIT_VERSION "0.0.0"
#endif

using namespace maninkit;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hex_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Wraps a payload with the run metadata. The digest covers the inputs only.
json run_report(const std::string& command, const json& inputs, const json& payload, bool pass) {
  return {{"tool", "maninkit"},
          {"version", MANINKIT_VERSION},
          {"command", command},
          {"inputs", inputs},
          {"input_digest", hex_digest(inputs.dump())},
          {"timestamp", utc_timestamp()},
          {"result", payload},
          {"pass", pass}};
}

void emit(const json& report, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write report to '" + path + "'");
  out << report.dump(2) << "\n";
}

std::uint64_t seed_or_env(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("MANINKIT_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("MANINKIT_SEED is not an unsigned integer: ") + env);
    }
  }
  return value;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// catalog

const char* kind_name(FamilyKind k) { return k == FamilyKind::Pair ? "pair" : "cotangent"; }

std::string connection_text(const CatalogPair& c) {
  if (c.kind == FamilyKind::Pair) return "s(xi) = (xi/2, -Ad_{x^-1} xi / 2), the antidiagonal connection";
  return "s(dmu) = (0, dmu), the canonical connection";
}

int cmd_catalog(bool as_json) {
  if (as_json) {
    json fams = json::array();
    for (const auto& c : catalog()) {
      json splits = json::array();
      for (const auto& s : c.splittings)
        splits.push_back({{"name", s.name}, {"h", mat_to_json(s.split.h().basis())}});
      json entry = {{"tag", c.tag},
                    {"kind", kind_name(c.kind)},
                    {"description", c.description},
                    {"instantiates", c.instantiates},
                    {"dim_g", c.g.dim()},
                    {"dim_d", c.pair.d.dim()},
                    {"g", lie_to_json(c.g)},
                    {"pair", manin_to_json(c.pair)},
                    {"splittings", splits},
                    {"connection", connection_text(c)}};
      entry["B"] = c.B ? mat_to_json(*c.B) : json(nullptr);
      fams.push_back(entry);
    }
    std::cout << json{{"families", fams}}.dump(2) << "\n";
    return kPass;
  }
  for (const auto& c : catalog()) {
    std::cout << c.tag << "  (" << kind_name(c.kind) << ", dim g = " << c.g.dim() << ", dim d = " << c.pair.d.dim()
              << ")\n";
    std::cout << "  " << c.description << "\n";
    std::cout << "  instantiates: " << c.instantiates << "\n";
    std::cout << "  connection:   " << connection_text(c) << "\n";
    std::cout << "  splittings:  ";
    for (std::size_t i = 0; i < c.splittings.size(); ++i)
      std::cout << (i ? ", " : " ") << c.splittings[i].name << (i == 0 ? " (default)" : "");
    std::cout << "\n\n";
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// lqb

IsotropicSplitting splitting_from_input(const json& in) {
  if (in.contains("family")) {
    const CatalogPair& c = catalog_entry(in.at("family").get<std::string>());
    if (in.contains("complement")) {
      const std::size_t dim = c.pair.d.dim();
      return make_isotropic(c.pair, canonicalize(mat_from_json(in.at("complement"), dim), dim));
    }
    return in.contains("splitting") ? catalog_splitting(c, in.at("splitting").get<std::string>())
                                     : c.splittings.front().split;
  }
  ManinPair P;
  if (in.contains("pair")) {
    P = manin_from_json(in.at("pair"));
  } else if (in.contains("direct_sum")) {
    const LieAlgebra g = lie_from_json(in.at("direct_sum").at("g"));
    P = pair_direct_sum(g, mat_from_json(in.at("direct_sum").at("B"), g.dim()));
  } else if (in.contains("cotangent")) {
    P = cotangent_pair(lie_from_json(in.at("cotangent").at("g")));
  } else {
    throw ParseError("input needs one of: family, pair, direct_sum, cotangent");
  }
  const CheckReport valid = validate_manin_pair(P);
  if (!valid.pass()) throw std::domain_error(report_to_json(valid).dump());
  const std::size_t dim = P.d.dim();
  if (!in.contains("complement")) throw ParseError("explicit pairs need a 'complement' (rows spanning a complement of g)");
  return make_isotropic(P, canonicalize(mat_from_json(in.at("complement"), dim), dim));
}

int cmd_lqb(const std::string& path, const std::string& report_path) {
  const json in = read_json_file(path);
  IsotropicSplitting split;
  try {
    split = splitting_from_input(in);
  } catch (const std::domain_error& e) {
    const json payload = {{"manin_pair", json::parse(e.what())}};
    emit(run_report("lqb", in, payload, false), report_path);
    return kCheckFailure;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  const LieQuasiBialgebra q = split_to_lqb(split);
  const QAxiomReport axioms = check_q_axioms(q);
  const ManinPair dbl = drinfeld_double(q);
  const bool reconstructs = dbl.d == adapted_bracket(split);
  const Rational jac = jacobi_defect(dbl.d);
  const Mat r = r_matrix(split);
  const bool r_sym = r + r.transpose() == split.pair().Q;

  json payload = lqb_to_json(q);
  payload["splitting"] = {{"h", mat_to_json(split.h().basis())}, {"j", mat_to_json(split.j())}};
  payload["r_matrix"] = mat_to_json(r);
  payload["q_axioms"] = report_to_json(axioms.as_report());
  payload["double"] = lie_to_json(dbl.d);
  payload["double_jacobi_defect"] = rational_to_json(jac);
  payload["double_reconstructs_d"] = reconstructs;
  payload["r_symmetrization"] = r_sym;
  const bool pass = axioms.pass() && sgn(jac) == 0 && reconstructs && r_sym;
  emit(run_report("lqb", in, payload, pass), report_path);
  return pass ? kPass : kCheckFailure;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  std::string family;
  std::size_t points = 20;
  std::uint64_t seed = 1;
  double fd_step = 1e-4;
  std::string scheme = "central";
  std::string splitting;
  unsigned jobs = 1;
  std::vector<std::string> tol;
  std::string report;
  bool no_convergence = false;
  bool quiet = false;
};

int cmd_verify(VerifyArgs a) {
  num::SuiteConfig cfg;
  cfg.points = a.points;
  cfg.seed = a.seed;
  cfg.h = a.fd_step;
  cfg.scheme = a.scheme == "richardson" ? num::Scheme::Richardson : num::Scheme::Central;
  cfg.splitting = a.splitting;
  cfg.jobs = a.jobs;
  cfg.convergence = !a.no_convergence;
  for (const auto& t : a.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + t + "'");
    try {
      cfg.tol[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--tol value is not a number: '" + t + "'");
    }
  }
  const num::SuiteReport rep =
      a.suite == "all" ? num::run_all_suites(a.family, cfg) : num::run_suite(a.suite, a.family, cfg);

  json inputs = {{"suite", a.suite},      {"family", a.family}, {"points", a.points},
                 {"seed", a.seed},        {"fd_step", a.fd_step}, {"scheme", a.scheme},
                 {"splitting", a.splitting}, {"convergence", cfg.convergence}};
  inputs["tol"] = cfg.tol;
  const json report = run_report("verify", inputs, rep.to_json(), rep.pass());

  if (!a.quiet) {
    std::ostream& os = a.report.empty() ? std::cerr : std::cout;
    for (const auto& c : rep.checks)
      os << std::left << std::setw(8) << c.status << std::setw(48) << c.name << " residual "
         << std::scientific << std::setprecision(3) << c.max_residual << "  tol " << c.tol
         << (c.ratio ? "  ratio " + std::to_string(*c.ratio) : std::string()) << "\n";
    os << (rep.pass() ? "PASS" : "FAIL") << " " << a.suite << " on " << a.family << "\n";
  }
  emit(report, a.report);
  return rep.pass() ? kPass : kCheckFailure;
}

// ---------------------------------------------------------------------------
// fuzz

int cmd_fuzz(const FuzzConfig& cfg, const std::string& replay, const std::string& report_path) {
  if (!replay.empty()) {
    json ce = read_json_file(replay);
    // accept either a bare counterexample or a full fuzz report
    if (ce.contains("result") && ce["result"].contains("first_counterexample")) ce = ce["result"]["first_counterexample"];
    if (ce.is_null()) throw ParseError("report contains no counterexample");
    json verdict;
    try {
      verdict = replay_counterexample(ce);
    } catch (const json::exception& e) {
      throw ParseError(e.what());
    }
    const bool pass = verdict.at("pass").get<bool>();
    emit(run_report("fuzz-replay", ce, verdict, pass), report_path);
    return pass ? kPass : kCheckFailure;
  }
  const FuzzReport rep = run_fuzz(cfg);
  const json inputs = {{"max_dim", cfg.max_dim}, {"count", cfg.count}, {"seed", cfg.seed}, {"mutate", cfg.mutate}};
  emit(run_report("fuzz", inputs, rep.to_json(cfg), rep.pass()), report_path);
  return rep.pass() ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maninkit: exact and numerical tools for Manin pairs, Dirac structures and quasi-Poisson geometry"};
  app.set_version_flag("--version", MANINKIT_VERSION);
  app.require_subcommand(1);

  bool catalog_json = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in example families");
  catalog_cmd->add_flag("--json", catalog_json, "Machine-readable output");

  std::string lqb_input, lqb_report;
  auto* lqb_cmd = app.add_subcommand("lqb", "Lie quasi-bialgebra of a Manin pair with an isotropic splitting");
  lqb_cmd->add_option("input", lqb_input, "JSON input file")->required();
  lqb_cmd->add_option("--report", lqb_report, "Write the JSON report here instead of stdout");

  VerifyArgs va;
  std::vector<std::string> suites = num::suite_names();
  suites.push_back("all");
  auto* verify_cmd = app.add_subcommand("verify", "Run numerical verification suites on a family");
  verify_cmd->add_option("--suite", va.suite, "Suite name")->check(CLI::IsMember(suites))->capture_default_str();
  verify_cmd->add_option("--family", va.family, "Family tag")->required()->check(CLI::IsMember(num::family_tags()));
  verify_cmd->add_option("--points", va.points, "Sample points")->check(CLI::PositiveNumber)->capture_default_str();
  auto* seed_opt = verify_cmd->add_option("--seed", va.seed, "Random seed (default: $MANINKIT_SEED or 1)");
  verify_cmd->add_option("--fd-step", va.fd_step, "Finite-difference step")->capture_default_str();
  verify_cmd->add_option("--scheme", va.scheme, "Finite-difference scheme")
      ->check(CLI::IsMember({"central", "richardson"}))
      ->capture_default_str();
  verify_cmd->add_option("--splitting", va.splitting, "Isotropic splitting (default: the family's first)");
  verify_cmd->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  verify_cmd->add_option("--tol", va.tol, "Tolerance override, name=value (repeatable)");
  verify_cmd->add_option("--report", va.report, "Write the JSON report here instead of stdout");
  verify_cmd->add_flag("--no-convergence", va.no_convergence, "Skip the step-refinement study");
  verify_cmd->add_flag("--quiet", va.quiet, "Suppress the per-check summary");

  FuzzConfig fc;
  std::string replay, fuzz_report;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized exact checks of the linear theory");
  fuzz_cmd->add_option("--max-dim", fc.max_dim, "Largest dimension")->check(CLI::Range(1, 6))->capture_default_str();
  fuzz_cmd->add_option("--count", fc.count, "Number of instances")->check(CLI::PositiveNumber)->capture_default_str();
  auto* fuzz_seed = fuzz_cmd->add_option("--seed", fc.seed, "Random seed (default: $MANINKIT_SEED or 1)");
  fuzz_cmd->add_flag("--mutate", fc.mutate, "Inject a sign error into the inverse construction");
  fuzz_cmd->add_option("--replay", replay, "Re-run a serialized counterexample")->check(CLI::ExistingFile);
  fuzz_cmd->add_option("--report", fuzz_report, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*catalog_cmd) return cmd_catalog(catalog_json);
    if (*lqb_cmd) return cmd_lqb(lqb_input, lqb_report);
    if (*verify_cmd) {
      va.seed = seed_or_env(seed_opt, va.seed);
      return cmd_verify(va);
    }
    if (*fuzz_cmd) {
      fc.seed = seed_or_env(fuzz_seed, fc.seed);
      return cmd_fuzz(fc, replay, fuzz_report);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const num::StepUnderflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
