#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace netprice {

/// Named hyperparameter assignments. Only keys relevant to an estimator
/// need to be set; the typed accessors fill in the documented defaults.
class ParamMap {
public:
    using Value = std::variant<std::int64_t, double, bool, std::string>;

    ParamMap() = default;

    void set(const std::string& key, Value value) { values_[key] = std::move(value); }
    void set_int(const std::string& key, std::int64_t v) { values_[key] = v; }
    void set_real(const std::string& key, double v) { values_[key] = v; }
    void set_bool(const std::string& key, bool v) { values_[key] = v; }
    void set_str(const std::string& key, std::string v) { values_[key] = std::move(v); }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_real(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;

    // Canonical accessors with the toolkit defaults.
    int max_depth() const { return static_cast<int>(get_int("max_depth", 5)); }
    int max_bins() const { return static_cast<int>(get_int("maxBins", 32)); }
    double min_info_gain() const { return get_real("minInfoGain", 0.0); }
    int n_estimators() const { return static_cast<int>(get_int("n_estimators", 20)); }
    int max_iter(int fallback) const { return static_cast<int>(get_int("maxIter", fallback)); }
    double reg_param() const { return get_real("regParam", 0.0); }
    double elastic_net_param() const { return get_real("elasticNetParam", 0.0); }
    bool standardization() const { return get_bool("standardization", true); }
    double learning_rate() const { return get_real("learning_rate", 0.1); }
    std::string feature_subset() const { return get_str("feature_subset", "onethird"); }
    bool bootstrap() const { return get_bool("bootstrap", true); }
    std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int("seed", 42)); }

    /// Range checks for every key that is present. Throws ConfigError.
    void validate() const;

    /// Sorted key -> value view, for reports and serialization.
    const std::map<std::string, Value>& values() const { return values_; }

    bool operator==(const ParamMap& other) const { return values_ == other.values_; }

private:
    std::map<std::string, Value> values_;
};

std::string param_value_to_string(const ParamMap::Value& value);

} // namespace netprice
