#include "maninkit/catalog.hpp"

#include <stdexcept>

namespace maninkit {

Mat so3_form() { return Mat::identity(3); }

Mat sl2_trace_form() { return Mat{{2, 0, 0}, {0, 0, 1}, {0, 1, 0}}; }

Mat catalog_twist() { return Mat{{0, 1, 0}, {-1, 0, 2}, {0, -2, 0}}; }

IsotropicSplitting shift_splitting(const IsotropicSplitting& j, const Mat& t) {
  const std::size_t n = j.n();
  if (!t.is_antisymmetric() || t.rows() != n) throw std::invalid_argument("twist must be antisymmetric n x n");
  // t^sharp eps^a = sum_c t(a,c) b_c
  Mat tsharp = j.iota() * t.transpose();
  Mat H = j.j() - tsharp;
  return IsotropicSplitting(j.pair(), canonicalize(H.transpose(), 2 * n));
}

namespace {

Subspace block_rows(std::size_t n, std::size_t offset, int sign_second = 0) {
  Mat rows(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    rows(i, offset + i) = 1;
    if (sign_second != 0) rows(i, n + i) = sign_second;
  }
  return canonicalize(rows, 2 * n);
}

CatalogPair make_pair_family(const std::string& tag, const LieAlgebra& g, const Mat& B, const std::string& desc) {
  CatalogPair c;
  c.tag = tag;
  c.kind = FamilyKind::Pair;
  c.description = desc;
  c.instantiates = "G-valued moment maps: d = g + g with pairing B + (-B), g embedded diagonally, S = G";
  c.g = g;
  c.B = B;
  c.pair = pair_direct_sum(g, B);
  const std::size_t n = g.dim();
  IsotropicSplitting anti(c.pair, block_rows(n, 0, -1));
  c.splittings.push_back({"antidiagonal", anti});
  c.splittings.push_back({"second_factor", make_isotropic(c.pair, block_rows(n, n))});
  c.splittings.push_back({"first_factor", make_isotropic(c.pair, block_rows(n, 0))});
  c.splittings.push_back({"antidiagonal_twisted", shift_splitting(anti, catalog_twist())});
  return c;
}

CatalogPair make_cotangent_family(const std::string& tag, const LieAlgebra& g, const std::string& desc) {
  CatalogPair c;
  c.tag = tag;
  c.kind = FamilyKind::Cotangent;
  c.description = desc;
  c.instantiates = "g*-valued moment maps: d = g semidirect g* with canonical pairing, S = g*";
  c.g = g;
  c.pair = cotangent_pair(g);
  const std::size_t n = g.dim();
  IsotropicSplitting dual(c.pair, block_rows(n, n));
  c.splittings.push_back({"dual", dual});
  c.splittings.push_back({"dual_sheared", shift_splitting(dual, catalog_twist())});
  return c;
}

std::vector<CatalogPair> build_catalog() {
  std::vector<CatalogPair> out;
  out.push_back(make_pair_family("pair_so3", so3(), so3_form(), "so(3) + so(3), B = identity, G = SO(3)"));
  out.push_back(make_pair_family("pair_sl2", sl2(), sl2_trace_form(), "sl(2,R) + sl(2,R), B = trace form, G = SL(2,R)"));
  out.push_back(make_cotangent_family("cotangent_so3", so3(), "so(3) semidirect so(3)*, D = T*SO(3)"));
  out.push_back(make_cotangent_family("cotangent_heis3", heis3(), "heis(3) semidirect heis(3)*, D = T*H3"));
  return out;
}

}  // namespace

const std::vector<CatalogPair>& catalog() {
  static const std::vector<CatalogPair> entries = build_catalog();
  return entries;
}

const CatalogPair& catalog_entry(const std::string& tag) {
  for (const auto& c : catalog())
    if (c.tag == tag) return c;
  throw std::out_of_range("unknown family '" + tag + "'");
}

std::vector<std::string> catalog_tags() {
  std::vector<std::string> tags;
  for (const auto& c : catalog()) tags.push_back(c.tag);
  return tags;
}

const IsotropicSplitting& catalog_splitting(const CatalogPair& c, const std::string& name) {
  for (const auto& s : c.splittings)
    if (s.name == name) return s.split;
  throw std::out_of_range("unknown splitting '" + name + "' for " + c.tag);
}

}  // namespace maninkit
