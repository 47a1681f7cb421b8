#include "netprice/params.hpp"

#include <cmath>
#include <sstream>

#include "netprice/errors.hpp"

namespace netprice {

namespace {

[[noreturn]] void type_error(const std::string& key, const char* wanted) {
    throw ConfigError("hyperparameter '" + key + "' is not " + wanted);
}

} // namespace

std::int64_t ParamMap::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
    if (const auto* d = std::get_if<double>(&it->second)) {
        if (std::floor(*d) == *d) return static_cast<std::int64_t>(*d);
    }
    type_error(key, "an integer");
}

double ParamMap::get_real(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const auto* d = std::get_if<double>(&it->second)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
    type_error(key, "a number");
}

bool ParamMap::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const auto* b = std::get_if<bool>(&it->second)) return *b;
    type_error(key, "a boolean");
}

std::string ParamMap::get_str(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    type_error(key, "a string");
}

void ParamMap::validate() const {
    if (max_bins() < 2) throw ConfigError("maxBins must be >= 2");
    if (max_depth() < 1) throw ConfigError("max_depth must be >= 1");
    if (n_estimators() < 1) throw ConfigError("n_estimators must be >= 1");
    if (max_iter(0) < 0) throw ConfigError("maxIter must be >= 0");
    if (min_info_gain() < 0.0) throw ConfigError("minInfoGain must be >= 0");
    if (reg_param() < 0.0) throw ConfigError("regParam must be >= 0");
    const double alpha = elastic_net_param();
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("elasticNetParam must lie in [0, 1]");
    const double lr = learning_rate();
    if (!(lr > 0.0 && lr <= 1.0)) throw ConfigError("learning_rate must lie in (0, 1]");
    const std::string subset = feature_subset();
    if (subset != "all" && subset != "onethird" && subset != "sqrt")
        throw ConfigError("feature_subset must be one of all|onethird|sqrt, got \"" + subset + "\"");
}

std::string param_value_to_string(const ParamMap::Value& value) {
    std::ostringstream out;
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
        out << *i;
    } else if (const auto* d = std::get_if<double>(&value)) {
        out << *d;
    } else if (const auto* b = std::get_if<bool>(&value)) {
        out << (*b ? "true" : "false");
    } else {
        out << std::get<std::string>(value);
    }
    return out.str();
}

} // namespace netprice
