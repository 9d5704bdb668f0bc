#include "maninkit/serialize.hpp"

#include <regex>
#include <string>

namespace maninkit {

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("expected a rational string, got " + j.dump());
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(rational_to_json(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

Mat mat_from_json(const json& j, std::size_t cols_hint) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  if (j.empty()) return Mat(0, cols_hint);
  std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

json lie_to_json(const LieAlgebra& L) {
  json br = json::array();
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      json coeffs = json::object();
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(L.c(i, j, k)) != 0) coeffs[std::to_string(k)] = rational_to_json(L.c(i, j, k));
      if (!coeffs.empty()) br.push_back({{"i", i}, {"j", j}, {"coeffs", coeffs}});
    }
  return {{"dim", n}, {"brackets", br}};
}

LieAlgebra lie_from_json(const json& j) {
  try {
    const std::size_t n = j.at("dim").get<std::size_t>();
    LieAlgebra L(n);
    for (const auto& b : j.value("brackets", json::array())) {
      std::size_t i = b.at("i").get<std::size_t>(), jj = b.at("j").get<std::size_t>();
      if (i >= n || jj >= n) throw ParseError("bracket index out of range");
      Vec v(n);
      for (auto it = b.at("coeffs").begin(); it != b.at("coeffs").end(); ++it) {
        std::size_t k = std::stoul(it.key());
        if (k >= n) throw ParseError("coefficient index out of range");
        v[k] = rational_from_json(it.value());
      }
      L.set_bracket(i, jj, v);
    }
    return L;
  } catch (const json::exception& e) {
    throw ParseError(std::string("Lie algebra: ") + e.what());
  }
}

json manin_to_json(const ManinPair& P) {
  return {{"d", lie_to_json(P.d)}, {"Q", mat_to_json(P.Q)}, {"g", mat_to_json(P.g.basis())}};
}

ManinPair manin_from_json(const json& j) {
  try {
    ManinPair P;
    P.d = lie_from_json(j.at("d"));
    P.Q = mat_from_json(j.at("Q"), P.d.dim());
    P.g = canonicalize(mat_from_json(j.at("g"), P.d.dim()), P.d.dim());
    return P;
  } catch (const json::exception& e) {
    throw ParseError(std::string("Manin pair: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("Manin pair: ") + e.what());
  }
}

json lqb_to_json(const LieQuasiBialgebra& q) {
  const std::size_t n = q.dim();
  json F = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json jk = json::object();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (sgn(q.Fs(a, b, i)) != 0)
          jk["(" + std::to_string(a) + "," + std::to_string(b) + ")"] = rational_to_json(q.Fs(a, b, i));
    F.push_back({{"i", i}, {"jk", jk}});
  }
  json chi = json::object();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (sgn(q.chi(a, b, c)) != 0)
          chi["(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")"] =
              rational_to_json(q.chi(a, b, c));
  return {{"g", lie_to_json(q.g)}, {"F", F}, {"chi", chi}};
}

namespace {
std::vector<std::size_t> parse_index_tuple(const std::string& key, std::size_t arity, std::size_t n) {
  static const std::regex re(R"(^\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?(?:,\s*(\d+)\s*)?\)$)");
  std::smatch m;
  if (!std::regex_match(key, m, re)) throw ParseError("bad index tuple '" + key + "'");
  std::vector<std::size_t> out;
  for (std::size_t g = 1; g <= 3; ++g)
    if (m[g].matched) out.push_back(std::stoul(m[g].str()));
  if (out.size() != arity) throw ParseError("index tuple '" + key + "' has wrong arity");
  for (auto v : out)
    if (v >= n) throw ParseError("index out of range in '" + key + "'");
  return out;
}
}  // namespace

LieQuasiBialgebra lqb_from_json(const json& j) {
  try {
    LieQuasiBialgebra q(lie_from_json(j.at("g")));
    const std::size_t n = q.dim();
    for (const auto& f : j.value("F", json::array())) {
      std::size_t i = f.at("i").get<std::size_t>();
      if (i >= n) throw ParseError("F index out of range");
      for (auto it = f.at("jk").begin(); it != f.at("jk").end(); ++it) {
        auto idx = parse_index_tuple(it.key(), 2, n);
        q.set_Fs(idx[0], idx[1], i, rational_from_json(it.value()));
      }
    }
    const json chi = j.value("chi", json::object());
    for (auto it = chi.begin(); it != chi.end(); ++it) {
      auto idx = parse_index_tuple(it.key(), 3, n);
      q.set_chi(idx[0], idx[1], idx[2], rational_from_json(it.value()));
    }
    return q;
  } catch (const json::exception& e) {
    throw ParseError(std::string("Lie quasi-bialgebra: ") + e.what());
  }
}

json dirac_to_json(const DiracSpace& D) { return {{"dim", D.m}, {"L", mat_to_json(D.L.basis())}}; }

DiracSpace dirac_from_json(const json& j) {
  try {
    std::size_t m = j.at("dim").get<std::size_t>();
    Subspace L = canonicalize(mat_from_json(j.at("L"), 2 * m), 2 * m);
    if (!is_lagrangian(m, L)) throw ParseError("Dirac space: rows do not span a Lagrangian subspace");
    return DiracSpace(m, std::move(L));
  } catch (const json::exception& e) {
    throw ParseError(std::string("Dirac space: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("Dirac space: ") + e.what());
  }
}

json report_to_json(const CheckReport& r) {
  json items = json::array();
  for (const auto& it : r.items) items.push_back({{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
  return {{"pass", r.pass()}, {"checks", items}};
}

}  // namespace maninkit
