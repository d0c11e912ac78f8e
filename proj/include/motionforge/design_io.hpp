#pragma once

#include <json.hpp>
#include <string>

#include "motionforge/types.hpp"

namespace motionforge {

/// Parses and validates a motion design document.
/// Throws SchemaError (with JSON path) for missing or mistyped fields and
/// ValidationError for violated invariants.
MotionDesign parse_design(const std::string& text);
MotionDesign design_from_json(const nlohmann::json& doc);

nlohmann::json design_to_json(const MotionDesign& design);
std::string serialize_design(const MotionDesign& design);

nlohmann::json intrinsics_to_json(const Intrinsics& k);

}  // namespace motionforge
