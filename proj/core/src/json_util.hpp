#pragma once

// Internal JSON/file helpers shared by the serialization code. Not installed.

#include <string>

#include <json.hpp>

#include "netprice/params.hpp"

namespace netprice::detail {

std::string slurp_file(const std::string& path, const char* what);

/// Writes via a temp file + rename, so failures never leave partial output.
void write_file(const std::string& path, const std::string& content, const char* what);

nlohmann::ordered_json param_map_to_json(const ParamMap& params);
ParamMap param_map_from_json(const nlohmann::json& doc);
ParamMap::Value param_value_from_json(const nlohmann::json& value, const std::string& key);

} // namespace netprice::detail
