#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maninkit/quasibialg.hpp"

namespace maninkit {

struct NamedSplitting {
  std::string name;
  IsotropicSplitting split;
};

enum class FamilyKind { Pair, Cotangent };

struct CatalogPair {
  std::string tag;          // pair_so3, pair_sl2, cotangent_so3, cotangent_heis3
  FamilyKind kind = FamilyKind::Pair;
  std::string description;
  std::string instantiates;  // which worked example the family realizes
  LieAlgebra g;
  std::optional<Mat> B;     // invariant form on g (pair families only)
  ManinPair pair;
  std::vector<NamedSplitting> splittings;  // first entry is the default one
};

const std::vector<CatalogPair>& catalog();
const CatalogPair& catalog_entry(const std::string& tag);
std::vector<std::string> catalog_tags();
const IsotropicSplitting& catalog_splitting(const CatalogPair& c, const std::string& name);

Mat so3_form();
Mat sl2_trace_form();
// The fixed twist used to build the sheared catalog splittings.
Mat catalog_twist();

// A splitting j2 with j2 = j - t^sharp for antisymmetric t.
IsotropicSplitting shift_splitting(const IsotropicSplitting& j, const Mat& t);

}  // namespace maninkit
