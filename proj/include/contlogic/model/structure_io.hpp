#pragma once

#include <filesystem>

#include "contlogic/model/structure.hpp"
#include "json.hpp"

namespace contlogic {

/// Structure file:
///   {"signature": {...} | "path/to/signature.json",
///    "carriers":   {"Sort": ["a", "b", ...]},
///    "metric":     {"Sort": [["0", "1"], ["1", "0"]]},
///    "functions":  {"f": nested table of element names},
///    "predicates": {"P": nested table of rational strings}}
/// A nested table has one list level per argument; 0-ary symbols are scalars. A sort
/// missing from "metric" gets the discrete metric. Signature paths resolve against
/// `base_dir`.
FiniteStructure structure_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
/// Always writes the signature inline.
nlohmann::json structure_to_json(const FiniteStructure& M);

}  // namespace contlogic
