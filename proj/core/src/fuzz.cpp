#include "maninkit/fuzz.hpp"

#include "maninkit/catalog.hpp"

namespace maninkit {

Rational random_small(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return Rational(d(rng));
}

Mat random_mat(Rng& rng, std::size_t r, std::size_t c, int lo, int hi) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_small(rng, lo, hi);
  return m;
}

Mat random_antisymmetric(Rng& rng, std::size_t n, int lo, int hi) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = random_small(rng, lo, hi);
      m(j, i) = -m(i, j);
    }
  return m;
}

DiracSpace random_lagrangian(Rng& rng, std::size_t m) {
  std::uniform_int_distribution<std::size_t> du(0, m);
  Subspace U = canonicalize(random_mat(rng, du(rng), m), m);
  Mat B = random_antisymmetric(rng, m);
  Subspace ann = kernel(U.dim() ? U.basis() : Mat(0, m));
  Mat rows(U.dim() + ann.dim(), 2 * m);
  for (std::size_t i = 0; i < U.dim(); ++i) {
    Vec x = U.vector(i);
    Vec a = B.transpose() * x;
    for (std::size_t k = 0; k < m; ++k) {
      rows(i, k) = x[k];
      rows(i, m + k) = a[k];
    }
  }
  for (std::size_t i = 0; i < ann.dim(); ++i)
    for (std::size_t k = 0; k < m; ++k) rows(U.dim() + i, m + k) = ann.basis()(i, k);
  return dirac_from_rows(m, rows);
}

namespace {

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim(), k = b.dim();
  LieAlgebra s(n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) s.c(i, j, l) = a.c(i, j, l);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) s.c(n + i, n + j, n + l) = b.c(i, j, l);
  return s;
}

LieAlgebra aff2() {
  LieAlgebra L(2);
  L.set_bracket(0, 1, {0, 1});
  return L;
}

LieAlgebra oscillator() {
  LieAlgebra L(4);
  L.set_bracket(3, 0, {0, 1, 0, 0});
  L.set_bracket(3, 1, {-1, 0, 0, 0});
  L.set_bracket(0, 1, {0, 0, 1, 0});
  return L;
}

Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Rational nonzero_small(Rng& rng) {
  static const int vals[] = {-2, -1, 1, 2};
  std::uniform_int_distribution<int> d(0, 3);
  return Rational(vals[d(rng)]);
}

}  // namespace

std::vector<LieAlgebra> small_lie_algebras(std::size_t dim) {
  switch (dim) {
    case 2:
      return {abelian(2), aff2()};
    case 3:
      return {abelian(3), so3(), sl2(), heis3(), direct_sum(aff2(), abelian(1))};
    case 4:
      return {abelian(4),
              direct_sum(so3(), abelian(1)),
              direct_sum(sl2(), abelian(1)),
              direct_sum(heis3(), abelian(1)),
              direct_sum(aff2(), aff2()),
              oscillator()};
    default:
      throw std::invalid_argument("random quasi-bialgebras are drawn in dimensions 2..4");
  }
}

LqbInstance random_lqb(Rng& rng, std::size_t dim) {
  LqbInstance out;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> third(0, 2);
  LieQuasiBialgebra base;
  if (dim == 3 && third(rng) == 0) {
    const auto& cat = catalog();
    std::uniform_int_distribution<std::size_t> dc(0, cat.size() - 1);
    const auto& entry = cat[dc(rng)];
    std::uniform_int_distribution<std::size_t> ds(0, entry.splittings.size() - 1);
    base = split_to_lqb(entry.splittings[ds(rng)].split);
  } else {
    auto pool = small_lie_algebras(dim);
    std::uniform_int_distribution<std::size_t> dp(0, pool.size() - 1);
    base = LieQuasiBialgebra(pool[dp(rng)]);
  }
  out.q = twist_transform(base, random_antisymmetric(rng, dim));
  if (coin(rng) == 1) {
    out.perturbed = true;
    std::uniform_int_distribution<std::size_t> di(0, dim - 1);
    std::size_t a = di(rng), b = di(rng), c = di(rng);
    while (b == a) b = di(rng);
    Rational delta = nonzero_small(rng);
    switch (third(rng)) {
      case 0: {
        Vec v(dim);
        for (std::size_t k = 0; k < dim; ++k) v[k] = out.q.g.c(a, b, k);
        v[c] += delta;
        out.q.g.set_bracket(a, b, v);
        break;
      }
      case 1:
        out.q.set_Fs(a, b, c, out.q.Fs(a, b, c) + delta);
        break;
      default:
        if (dim >= 3) {
          while (c == a || c == b) c = di(rng);
          out.q.set_chi(a, b, c, out.q.chi(a, b, c) + delta);
        } else {
          out.q.set_Fs(a, b, c, out.q.Fs(a, b, c) + delta);
        }
    }
  }
  return out;
}

std::optional<Mat> solve_bivector(Rng& rng, const Mat& J, const Mat& N) {
  const std::size_t m = J.cols(), w = J.rows();
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) idx.push_back({a, b});
  // (Pi^T J^T)(i,k) = sum_a Pi(a,i) J(k,a) = N(i,k)
  Mat sys(m * w, idx.size());
  Vec rhs(m * w);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < w; ++k) {
      std::size_t row = i * w + k;
      rhs[row] = N(i, k);
      for (std::size_t u = 0; u < idx.size(); ++u) {
        auto [a, b] = idx[u];
        if (b == i) sys(row, u) += J(k, a);   // Pi(a,i) = p
        if (a == i) sys(row, u) -= J(k, b);   // Pi(b,i) = -p
      }
    }
  Vec p;
  try {
    p = solve(sys, rhs);
  } catch (const InconsistentSystem&) {
    return std::nullopt;
  }
  Subspace ker = kernel(sys);
  for (std::size_t r = 0; r < ker.dim(); ++r) p = vec_add(p, vec_scale(random_small(rng, -2, 2), ker.vector(r)));
  Mat Pi(m, m);
  for (std::size_t u = 0; u < idx.size(); ++u) {
    Pi(idx[u].first, idx[u].second) = p[u];
    Pi(idx[u].second, idx[u].first) = -p[u];
  }
  return Pi;
}

StrongMapInstance random_strong_map(Rng& rng, std::size_t max_dim) {
  if (max_dim < 1) throw std::invalid_argument("max_dim must be positive");
  std::uniform_int_distribution<std::size_t> dw(1, max_dim);
  StrongMapInstance s;
  const std::size_t w = dw(rng);
  std::uniform_int_distribution<std::size_t> dm(w, max_dim);
  const std::size_t m = dm(rng);
  do {
    s.J = random_mat(rng, w, m);
  } while (rank(s.J) != w);
  s.LW = random_lagrangian(rng, w);
  do {
    s.CW = random_lagrangian(rng, w);
  } while (intersect(s.LW.L, s.CW.L).dim() != 0);
  Mat sb = sigma_bar(s.LW, s.CW);
  Mat prW = s.LW.L.basis().block(0, 0, w, w).transpose();
  Mat rho = solve(s.J, prW);
  Subspace kJ = kernel(s.J);
  if (kJ.dim() > 0) rho = rho + kJ.basis().transpose() * random_mat(rng, kJ.dim(), w);
  s.quasi.rho_V = rho;
  auto pi = solve_bivector(rng, s.J, rho * sb);
  if (!pi) throw std::logic_error("moment equation for the bivector is inconsistent");
  s.quasi.pi = *pi;
  s.L = from_quasi(s.J, s.quasi, s.LW, s.CW);
  return s;
}

json strong_map_to_json(const StrongMapInstance& s) {
  return {{"J", mat_to_json(s.J)},
          {"L_W", dirac_to_json(s.LW)},
          {"C_W", dirac_to_json(s.CW)},
          {"pi", mat_to_json(s.quasi.pi)},
          {"rho_V", mat_to_json(s.quasi.rho_V)},
          {"L", dirac_to_json(s.L)}};
}

StrongMapInstance strong_map_from_json(const json& j) {
  StrongMapInstance s;
  s.LW = dirac_from_json(j.at("L_W"));
  s.CW = dirac_from_json(j.at("C_W"));
  s.L = dirac_from_json(j.at("L"));
  s.J = mat_from_json(j.at("J"), s.L.m);
  s.quasi.pi = mat_from_json(j.at("pi"), s.L.m);
  s.quasi.rho_V = mat_from_json(j.at("rho_V"), s.LW.m);
  return s;
}

RoundTripVerdict check_round_trip(const StrongMapInstance& s, bool mutate) {
  RoundTripVerdict v;
  v.strong = is_strong(s.J, s.L, s.LW).strong();
  if (!v.strong) return v;
  QuasiData q = to_quasi(s.J, s.L, s.LW, s.CW);
  v.invariants = check_quasi_invariants(s.J, q, s.LW, s.CW).pass();
  v.reverse = q == s.quasi;
  if (v.invariants) {
    try {
      v.forward = from_quasi(s.J, q, s.LW, s.CW, mutate) == s.L;
    } catch (const std::logic_error&) {
      v.forward = false;  // a corrupted reconstruction need not even be Lagrangian
    }
  }
  return v;
}

bool check_gauge_compatibility(const StrongMapInstance& s, const Mat& B, const DiracSpace& other_L) {
  Mat JBJ = s.J.transpose() * B * s.J;
  DiracSpace LWB = gauge(s.LW, B);
  for (const DiracSpace* L : {&s.L, &other_L}) {
    bool before = is_strong(s.J, *L, s.LW).strong();
    bool after = is_strong(s.J, gauge(*L, JBJ), LWB).strong();
    if (before != after) return false;
  }
  return is_strong(s.J, s.L, s.LW).strong();
}

FunctorialCase random_functorial_case(Rng& rng, const StrongMapInstance& base) {
  FunctorialCase fc;
  const std::size_t w = base.J.rows(), m2 = base.J.cols();
  std::uniform_int_distribution<std::size_t> dk(1, 2);
  const std::size_t k = dk(rng), m1 = m2 + k;
  fc.f = Mat(m2, m1);
  fc.f.set_block(0, 0, Mat::identity(m2));
  Mat J1 = base.J * fc.f;
  Mat sb = sigma_bar(base.LW, base.CW);
  Mat Z = random_mat(rng, k, w);
  Mat A = solve(base.J, (Z * sb).transpose());
  Mat Pi1(m1, m1);
  Pi1.set_block(0, 0, base.quasi.pi);
  Pi1.set_block(0, m2, A);
  Pi1.set_block(m2, 0, -A.transpose());
  Pi1.set_block(m2, m2, random_antisymmetric(rng, k));
  QuasiData q1{Pi1, vstack(base.quasi.rho_V, Z)};
  fc.source = {J1, from_quasi(J1, q1, base.LW, base.CW), base.LW, base.CW};
  fc.target = {base.J, base.L, base.LW, base.CW};
  Subspace kJ = kernel(base.J);
  if (kJ.dim() > 0) {
    Vec u = kJ.vector(0);
    Mat z = random_mat(rng, 1, w);
    while (z.is_zero()) z = random_mat(rng, 1, w);
    Mat U(m2, 1);
    U.set_col(0, u);
    QuasiData q2;
    q2.rho_V = base.quasi.rho_V + U * z;
    auto pi = solve_bivector(rng, base.J, q2.rho_V * sb);
    if (pi) {
      q2.pi = *pi;
      fc.perturbed_target = {base.J, from_quasi(base.J, q2, base.LW, base.CW), base.LW, base.CW};
      fc.has_perturbation = true;
    }
  }
  return fc;
}

json FuzzReport::to_json(const FuzzConfig& cfg) const {
  json j = {{"seed", cfg.seed},
            {"max_dim", cfg.max_dim},
            {"instances", instances},
            {"mutation_mode", cfg.mutate},
            {"failures",
             {{"round_trip", round_trip_failures},
              {"gauge_compatibility", gauge_failures},
              {"functoriality", functorial_failures},
              {"twist", twist_failures},
              {"q_axioms_vs_jacobi", lqb_disagreements}}},
            {"pass", pass()}};
  j["first_counterexample"] = first_counterexample ? *first_counterexample : json(nullptr);
  return j;
}

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  FuzzReport rep;
  auto record = [&](std::size_t i, const std::string& prop, json payload) {
    if (!rep.first_counterexample) {
      payload["property"] = prop;
      payload["index"] = i;
      payload["seed"] = cfg.seed;
      payload["mutation_mode"] = cfg.mutate;
      rep.first_counterexample = payload;
      rep.first_failure_index = i;
    }
  };
  const auto& cat = catalog();
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Rng rng = derived_rng(cfg.seed, i);
    StrongMapInstance s = random_strong_map(rng, cfg.max_dim);
    ++rep.instances;
    RoundTripVerdict rt = check_round_trip(s, cfg.mutate);
    if (!rt.pass()) {
      ++rep.round_trip_failures;
      record(i, "round_trip", {{"instance", strong_map_to_json(s)}});
    }
    Mat B = random_antisymmetric(rng, s.J.rows());
    DiracSpace other = random_lagrangian(rng, s.J.cols());
    if (!check_gauge_compatibility(s, B, other)) {
      ++rep.gauge_failures;
      record(i, "gauge_compatibility",
             {{"instance", strong_map_to_json(s)}, {"B", mat_to_json(B)}, {"other_L", dirac_to_json(other)}});
    }
    FunctorialCase fc = random_functorial_case(rng, s);
    FunctorialReport fr = check_functorial(fc.f, fc.source, fc.target);
    bool ok = fr.consistent() && fr.f_dirac;
    if (fc.has_perturbation) {
      FunctorialReport pr = check_functorial(fc.f, fc.source, fc.perturbed_target);
      ok = ok && pr.consistent() && !pr.f_dirac;
    }
    if (!ok) {
      ++rep.functorial_failures;
      record(i, "functoriality", {{"instance", strong_map_to_json(s)}});
    }
    const auto& entry = cat[i % cat.size()];
    const auto& js = entry.splittings[(i / cat.size()) % entry.splittings.size()].split;
    Mat t = random_antisymmetric(rng, js.n());
    IsotropicSplitting j2 = shift_splitting(js, t);
    if (!(twist(js, j2) == t) || !(twist_transform(split_to_lqb(js), t) == split_to_lqb(j2))) {
      ++rep.twist_failures;
      record(i, "twist", {{"family", entry.tag}, {"t", mat_to_json(t)}});
    }
    std::uniform_int_distribution<std::size_t> dd(2, std::min<std::size_t>(4, std::max<std::size_t>(2, cfg.max_dim)));
    LqbInstance li = random_lqb(rng, dd(rng));
    bool axioms = check_q_axioms(li.q).pass();
    bool jac = sgn(jacobi_defect(drinfeld_double(li.q).d)) == 0;
    if (axioms != jac) {
      ++rep.lqb_disagreements;
      record(i, "q_axioms_vs_jacobi", {{"lqb", lqb_to_json(li.q)}});
    }
  }
  return rep;
}

json replay_counterexample(const json& ce) {
  const std::string prop = ce.at("property").get<std::string>();
  json out = {{"property", prop}};
  if (prop == "round_trip") {
    StrongMapInstance s = strong_map_from_json(ce.at("instance"));
    RoundTripVerdict v = check_round_trip(s, ce.value("mutation_mode", false));
    out["pass"] = v.pass();
    out["strong"] = v.strong;
    out["invariants"] = v.invariants;
    out["forward"] = v.forward;
    out["reverse"] = v.reverse;
  } else if (prop == "gauge_compatibility") {
    StrongMapInstance s = strong_map_from_json(ce.at("instance"));
    out["pass"] = check_gauge_compatibility(s, mat_from_json(ce.at("B")), dirac_from_json(ce.at("other_L")));
  } else if (prop == "q_axioms_vs_jacobi") {
    LieQuasiBialgebra q = lqb_from_json(ce.at("lqb"));
    out["pass"] = check_q_axioms(q).pass() == (sgn(jacobi_defect(drinfeld_double(q).d)) == 0);
  } else if (prop == "twist") {
    const auto& entry = catalog_entry(ce.at("family").get<std::string>());
    Mat t = mat_from_json(ce.at("t"));
    bool ok = true;
    for (const auto& sp : entry.splittings)
      ok = ok && twist_transform(split_to_lqb(sp.split), t) == split_to_lqb(shift_splitting(sp.split, t));
    out["pass"] = ok;
  } else {
    throw ParseError("cannot replay property '" + prop + "'");
  }
  return out;
}

}  // namespace maninkit
