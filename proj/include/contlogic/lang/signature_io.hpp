#pragma once

#include "contlogic/lang/signature.hpp"
#include "json.hpp"

namespace contlogic {

/// {"sorts": [...], "functions": [...], "predicates": [...]}. A sort is a name or
/// {"name", "metric"}; symbols list "name", "arg_sorts", ("target_sort") and
/// optional "moduli", one list of [input, output] rational-string pairs per argument.
Signature signature_from_json(const nlohmann::json& j);
nlohmann::json signature_to_json(const Signature& sig);

nlohmann::json pl_to_json(const PLMonotone& f);
PLMonotone pl_from_json(const nlohmann::json& j);

}  // namespace contlogic
