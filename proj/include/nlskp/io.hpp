#pragma once

#include "nlskp/boundaries.hpp"
#include "nlskp/genpaths.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace nlskp {

/// Boundary JSON:
///   {"family":"linear"|"scaled"|"sine",
///    "offset":{"const":x} | {"file":"path.csv"} | {"times":[...],"values":[...]},
///    "a":x, "eps":x, "omega":x}
/// Relative offset files resolve against `base_dir`.
BoundaryFunction boundary_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json boundary_to_json(const BoundaryFunction& g);

/// Pair JSON: {"L": <boundary>, "R": <boundary>}. Rejects pairs whose gap depends on x or whose
/// separation is not positive.
BoundaryPair pair_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {},
                            const Tolerances& tol = {});
BoundaryPair load_pair_file(const std::string& filename, const Tolerances& tol = {});
nlohmann::json pair_to_json(const BoundaryPair& pair);

/// Inline path object {"times":[...],"values":[...]}.
CadlagPath path_from_json(const nlohmann::json& j);
nlohmann::json path_to_json(const CadlagPath& path);

/// GenSpec JSON: {"kind":..., "seed":u64, "n":int, "horizon":x, "volatility":x, "intensity":x,
/// "jump_scale":x, "amplitude":x, "period":x}; omitted fields keep their defaults.
GenSpec genspec_from_json(const nlohmann::json& j);
nlohmann::json genspec_to_json(const GenSpec& spec);

nlohmann::json read_json_file(const std::string& filename);

}  // namespace nlskp
