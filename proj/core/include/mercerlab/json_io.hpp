#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace mercerlab {

/// Compact JSON with sorted keys and doubles printed with 17 significant
/// digits. Parsing the output and dumping it again reproduces it exactly.
/// Non-finite doubles are written as null.
std::string canonical_json(const nlohmann::json& value);

}  // namespace mercerlab
