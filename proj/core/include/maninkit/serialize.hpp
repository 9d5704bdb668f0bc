#pragma once

#include <json.hpp>

#include "maninkit/diraclin.hpp"
#include "maninkit/quasibialg.hpp"

namespace maninkit {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rationals travel as strings "p/q"; plain JSON integers are also accepted on input.
json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j, std::size_t cols_hint = 0);

json lie_to_json(const LieAlgebra& L);
LieAlgebra lie_from_json(const json& j);

json manin_to_json(const ManinPair& P);
ManinPair manin_from_json(const json& j);

json lqb_to_json(const LieQuasiBialgebra& q);
LieQuasiBialgebra lqb_from_json(const json& j);

json dirac_to_json(const DiracSpace& D);
DiracSpace dirac_from_json(const json& j);

json report_to_json(const CheckReport& r);

}  // namespace maninkit
