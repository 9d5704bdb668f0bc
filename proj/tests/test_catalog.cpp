#include <doctest.h>

#include "maninkit/catalog.hpp"

using namespace maninkit;

TEST_CASE("catalog families") {
  const std::vector<std::string> tags{"pair_so3", "pair_sl2", "cotangent_so3", "cotangent_heis3"};
  CHECK(catalog_tags() == tags);
  for (const auto& c : catalog()) {
    CAPTURE(c.tag);
    CHECK(c.pair.d.dim() == 6);
    CHECK(validate_manin_pair(c.pair).pass());
    CHECK_FALSE(c.splittings.empty());
    CHECK(c.B.has_value() == (c.kind == FamilyKind::Pair));
    for (const auto& ns : c.splittings) {
      CHECK(&catalog_splitting(c, ns.name) == &ns.split);
      CHECK(sum(ns.split.h(), c.pair.g) == full_space(6));
    }
  }
  CHECK(catalog_entry("pair_so3").splittings.front().name == "antidiagonal");
  CHECK(catalog_entry("cotangent_so3").splittings.front().name == "dual");
  CHECK_THROWS_AS(catalog_entry("pair_su2"), std::out_of_range);
  CHECK_THROWS_AS(catalog_splitting(catalog_entry("pair_so3"), "dual"), std::out_of_range);
}

TEST_CASE("invariant forms") {
  CHECK(invariance_defect(so3(), so3_form()) == 0);
  CHECK(invariance_defect(sl2(), sl2_trace_form()) == 0);
  CHECK(signature(sl2_trace_form()) == Signature{2, 1, 0});
  CHECK(catalog_twist().is_antisymmetric());
  CHECK_FALSE(catalog_twist().is_zero());
}

TEST_CASE("shifted splittings move j by the twist") {
  const IsotropicSplitting& a = catalog_splitting(catalog_entry("pair_sl2"), "antidiagonal");
  const Mat t = catalog_twist();
  const IsotropicSplitting b = shift_splitting(a, t);
  CHECK(twist(a, b) == t);
  CHECK(twist(b, a) == -t);
  CHECK((b.j().transpose() * b.pair().Q * b.j()).is_zero());
}
