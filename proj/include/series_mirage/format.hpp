#pragma once

#include <string>

#include <json.hpp>

#include "series_mirage/expsum.hpp"

namespace series_mirage {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

nlohmann::json to_json(const ExpSum& s);
nlohmann::json to_json(const TimePoly& p);
/// Throws InvalidInputError on malformed documents.
ExpSum expsum_from_json(const nlohmann::json& j);
TimePoly timepoly_from_json(const nlohmann::json& j);

}  // namespace series_mirage
