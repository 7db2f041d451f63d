// JSON (de)serialization for the file formats the CLI reads and writes.
// Matrices: {"rows":N,"cols":M,"entries":[[re,im],...]} row-major; states
// add {"dA":..,"dB":..,"normalized":..}; Choi maps add {"dIn":..,"dOut":..}.

#pragma once

#include <json.hpp>

#include "bentlab/canonical.hpp"
#include "bentlab/core.hpp"
#include "bentlab/sepcert.hpp"

namespace bentlab {

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const CanonicalParams& p);
CanonicalParams params_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

// {"members":[{"w":...,"a":[[re,im],...],"b":[[re,im],...]}, ...]}
nlohmann::json ensemble_to_json(const ProductEnsemble& e);
ProductEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace bentlab
