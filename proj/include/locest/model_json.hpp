#pragma once

#include <string>

#include "json.hpp"
#include "locest/distributions.hpp"

namespace locest {

nlohmann::json model_to_json(const DensityModel& model);
/// Accepts {"kind": ..., "center"|"mu": ..., family parameters}.
DensityModel model_from_json(const nlohmann::json& j);
/// Parses either inline JSON text or a path to a JSON file.
DensityModel load_model(const std::string& text_or_path);

}  // namespace locest
