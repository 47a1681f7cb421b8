#include "json_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netprice/errors.hpp"

namespace netprice::detail {

std::string slurp_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + what + ": " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content, const char* what) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(std::string("cannot write ") + what + ": " + path);
        out << content;
        if (!out) throw IoError(std::string("failed writing ") + what + ": " + path);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError(std::string("cannot finalize ") + what + ": " + path + ": " + ec.message());
}

nlohmann::ordered_json param_map_to_json(const ParamMap& params) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [key, value] : params.values()) {
        if (const auto* i = std::get_if<std::int64_t>(&value)) {
            out[key] = *i;
        } else if (const auto* d = std::get_if<double>(&value)) {
            out[key] = *d;
        } else if (const auto* b = std::get_if<bool>(&value)) {
            out[key] = *b;
        } else {
            out[key] = std::get<std::string>(value);
        }
    }
    return out;
}

ParamMap::Value param_value_from_json(const nlohmann::json& value, const std::string& key) {
    if (value.is_boolean()) return value.get<bool>();
    if (value.is_number_integer() || value.is_number_unsigned()) return value.get<std::int64_t>();
    if (value.is_number_float()) return value.get<double>();
    if (value.is_string()) return value.get<std::string>();
    throw ConfigError("hyperparameter '" + key + "' has unsupported JSON type");
}

ParamMap param_map_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("hyperparameters must be a JSON object");
    ParamMap params;
    for (const auto& [key, value] : doc.items()) params.set(key, param_value_from_json(value, key));
    return params;
}

} // namespace netprice::detail
