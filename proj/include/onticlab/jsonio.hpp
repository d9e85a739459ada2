#pragma once

#include <json.hpp>

#include "onticlab/ensembles.hpp"
#include "onticlab/onticmodel.hpp"
#include "onticlab/pncheck.hpp"
#include "onticlab/qstate.hpp"
#include "onticlab/steering.hpp"

namespace onticlab {

using Json = nlohmann::json;

// Conventions: complex numbers are [re, im] pairs, matrices row-major
// nested arrays. Always-sorted object keys make serialization byte-stable.
// The shipped schemas (schemas/v1) document every shape below.

Json complex_to_json(const Cplx& z);
Cplx complex_from_json(const Json& j);
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);
Json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);

Json to_json(const PureState& s);
PureState pure_state_from_json(const Json& j);

Json to_json(const DensityOperator& rho);
DensityOperator density_from_json(const Json& j);

Json to_json(const Povm& povm);

Json to_json(const BipartiteState& psi);
BipartiteState bipartite_from_json(const Json& j);

Json to_json(const Decomposition& d);
/// `target` may be omitted in the input; it is then derived from the members.
Decomposition decomposition_from_json(const Json& j);

Json to_json(const FeasibilityReport& report, const PncInstance& instance,
             bool include_explanations);

Json to_json(const SteerResult& result);
Json to_json(const WitnessReport& report);
Json to_json(const BornReport& report);

/// FNV-1a of a byte string; stable content fingerprint for reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace onticlab
