#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "asym/pseudometric.hpp"
#include "asym/sequence.hpp"
#include "asym/set_model.hpp"

namespace asym {

using Json = nlohmann::ordered_json;

/// Config errors name the JSON path of the offending field, e.g. "/Y/q".
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

Rational rational_from_json(const Json& j, const std::string& path);
std::vector<Rational> rationals_from_json(const Json& j, const std::string& path);
Interval interval_from_json(const Json& j, const std::string& path);
SetModel model_from_json(const Json& j, const std::string& path);
AmbientPoint point_from_json(const Json& j, const std::string& path);
IndexMap index_map_from_json(const Json& j, const std::string& path);
ScalingSequence scaling_from_json(const Json& j, const std::string& path);
PointSequenceSpec spec_from_json(const Json& j, const std::string& path);
FinitePseudometricSpace space_from_json(const Json& j, const std::string& path);

/// A list of rationals, or {"start", "growth", "count"} / {"start", "step", "count"}.
std::vector<Rational> grid_from_json(const Json& j, const std::string& path);

Json interval_to_json(const Interval& iv);
Json space_to_json(const FinitePseudometricSpace& space);
/// {"exact": "1/3", "decimal": "0.333333333333"}
Json number_json(const Rational& value);
Json number_json(const Distance& value);

}  // namespace asym
