#pragma once

#include <string>

#include <json.hpp>

#include "hilop/measure.hpp"

namespace hilop {

// Wire format:
//   {"kind":"density","p":1.0,"q":0.0}
//   {"kind":"atomic","atoms":[[0.5,1.0],[0.9,0.25]]}
//   {"kind":"mixture","parts":[[0.5,{...}],[0.5,{...}]]}
// Malformed input raises invalid_measure with a message naming the offence.
MeasureSpec measure_from_json(const nlohmann::json& j);
MeasureSpec measure_from_string(const std::string& text);
nlohmann::json measure_to_json(const MeasureSpec& mu);

}  // namespace hilop
