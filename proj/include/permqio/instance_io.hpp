#pragma once

#include <filesystem>
#include <string>

#include "permqio/problem.hpp"

namespace permqio {

/// Instance document:
///   {"kind": "espdp"|"tsp", "n": int, "vehicle_weight": real, "parcel_weights": [real],
///    "coeff": [[real]], "resistance": [[real]], "coordinates": [[x,y]]?, "seed": int?}
/// Matrices are (n+1)x(n+1) row-major with index 0 the depot. TSP documents carry the
/// distance matrix in "coeff" and omit the ESPDP-only fields.
std::string serialize_instance(const Instance& inst);

/// Throws SchemaError naming the offending field on a malformed document or a
/// loaded instance that violates its invariants.
Instance deserialize_instance(const std::string& text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace permqio
