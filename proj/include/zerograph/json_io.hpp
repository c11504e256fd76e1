#pragma once

// JSON encodings shared by the library and the CLI.
//
//   CMat            {"rows": r, "cols": c, "data": [[re, im], ...]}  (row-major)
//   channel         {"dim_in": n, "dim_out": m, "kraus": [CMat, ...]}
//   positive basis  {"ops": [CMat, ...]}
//   observable      {"dim": n, "effects": [CMat, ...]}
//   graph           {"ambient_dim": n, "generators": [CMat, ...]}
//   violation       {"graph_dim", "best_value", "phi", "psi", "starts", "seed",
//                    "converged_fraction"}
//   report          {"schema": "1", "construction", "checks", "violation",
//                    "capacity_bound_bits"}
//
// Doubles are written in shortest round-trip form.

#include <json.hpp>

#include "zerograph/channel.hpp"
#include "zerograph/graphcap.hpp"
#include "zerograph/povm.hpp"
#include "zerograph/superact.hpp"

namespace zerograph::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

json to_json(const CMat& m);
CMat cmat_from_json(const json& j);

json to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const json& j);

json to_json(const PositiveBasis& basis);
PositiveBasis positive_basis_from_json(const json& j);

json to_json(const Observable& obs);
Observable observable_from_json(const json& j);

json graph_to_json(int ambient_dim, const std::vector<CMat>& generators);
/// Reads a graph file and spans its generators.
OperatorSpace graph_from_json(const json& j);

json to_json(const ViolationReport& report);
json to_json(const Report& report);

}  // namespace zerograph::io
