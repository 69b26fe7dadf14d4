#pragma once

#include <string>

#include "json.hpp"
#include "relclass/bound.hpp"

namespace relclass {

using json = nlohmann::ordered_json;

// 12 significant digits, so reports do not depend on the last bits
json num(double x);
json iv_json(const Iv& a);

std::string field_label(const Field& F);
std::string cm_label(const CMField& K);

json field_report(const Field& F);
json cm_report(const CMField& K);
json classification_report(const CMField& K, const Classification& C);
json lattice_json(const LatticeConstants& L);
json bound_params_json(const BoundParams& bp);
json g_json(const GConst& G);
json bundle_json(const Bundle& b);
json lambda_row_json(const LambdaRow& r);
json final_bound_json(const FinalBound& fb);

}  // namespace relclass
