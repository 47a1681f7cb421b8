#include "netprice/runspec.hpp"

#include <filesystem>

#include <json.hpp>

#include "netprice/errors.hpp"
#include "json_util.hpp"

namespace fs = std::filesystem;

namespace netprice {

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty()) return path;
    fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(base_dir) / p).lexically_normal().string();
}

ParamGrid grid_from_json(const nlohmann::json& doc, const std::string& estimator) {
    if (!doc.is_object())
        throw ConfigError("grid for " + estimator + " must be a JSON object of key -> values");
    ParamGrid grid;
    for (const auto& [key, value] : doc.items()) {
        std::vector<ParamMap::Value> values;
        if (value.is_array()) {
            if (value.empty())
                throw GridError("grid key '" + key + "' for " + estimator + " has no candidates");
            for (const auto& v : value) values.push_back(detail::param_value_from_json(v, key));
        } else {
            values.push_back(detail::param_value_from_json(value, key)); // scalar = singleton
        }
        grid.add(key, std::move(values));
    }
    return grid;
}

} // namespace

RunSpec RunSpec::load(const std::string& path) {
    const std::string text = detail::slurp_file(path, "run spec");
    return parse_json(text, fs::path(path).parent_path().string());
}

RunSpec RunSpec::parse_json(const std::string& json_text, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("run spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("run spec must be a JSON object");

    RunSpec spec;
    spec.spec_version = doc.value("spec_version", 1);
    if (spec.spec_version != 1)
        throw ConfigError("unsupported spec_version: " + std::to_string(spec.spec_version));

    if (!doc.contains("inputs") || !doc.at("inputs").is_array() || doc.at("inputs").empty())
        throw ConfigError("run spec needs a non-empty \"inputs\" list");
    for (const auto& item : doc.at("inputs")) {
        if (!item.contains("path") || !item.contains("year"))
            throw ConfigError("each input needs {path, year}");
        SourceFile src;
        src.path = resolve(base_dir, item.at("path").get<std::string>());
        src.year = item.at("year").get<int>();
        if (!fs::exists(src.path)) throw ConfigError("input file does not exist: " + src.path);
        spec.inputs.push_back(std::move(src));
    }

    if (doc.contains("column_spec")) {
        spec.column_spec_path = resolve(base_dir, doc.at("column_spec").get<std::string>());
        if (!fs::exists(spec.column_spec_path))
            throw ConfigError("column-spec file does not exist: " + spec.column_spec_path);
    }

    spec.label_policy = ingest::label_policy_from_name(doc.value("label_policy", "combined"));

    if (doc.contains("split")) {
        const auto& split = doc.at("split");
        spec.split_ratio = split.value("ratio", 0.7);
        spec.seed = split.value("seed", std::uint64_t{42});
    }
    if (!(spec.split_ratio > 0.0 && spec.split_ratio < 1.0))
        throw ConfigError("split.ratio must lie in (0, 1)");
    spec.standardize_features = doc.value("standardize_features", false);

    if (!doc.contains("estimators") || !doc.at("estimators").is_object() ||
        doc.at("estimators").empty())
        throw ConfigError("run spec needs at least one estimator under \"estimators\"");
    for (const EstimatorKind kind : kEstimatorOrder) {
        const std::string name(estimator_name(kind));
        if (doc.at("estimators").contains(name))
            spec.estimators.emplace_back(kind, grid_from_json(doc.at("estimators").at(name), name));
    }
    for (const auto& item : doc.at("estimators").items()) {
        if (!estimator_from_name(item.key()))
            throw ConfigError("unknown estimator \"" + item.key() + "\" (use RF, GBT, DT, LR)");
    }

    if (!doc.contains("validators") || !doc.at("validators").is_object() ||
        doc.at("validators").empty())
        throw ConfigError("run spec needs at least one validator under \"validators\"");
    for (const auto& [name, config] : doc.at("validators").items()) {
        if (name == "tvs") {
            spec.run_tvs = true;
            spec.inner_ratio = config.value("inner_ratio", 0.75);
            if (!(spec.inner_ratio > 0.0 && spec.inner_ratio < 1.0))
                throw ConfigError("validators.tvs.inner_ratio must lie in (0, 1)");
        } else if (name == "cv") {
            spec.run_cv = true;
            spec.cv_k = config.value("k", std::size_t{3});
            if (spec.cv_k < 2) throw ConfigError("validators.cv.k must be >= 2");
        } else {
            throw ConfigError("unknown validator \"" + name + "\" (use tvs, cv)");
        }
    }

    spec.out_dir = resolve(base_dir, doc.value("out_dir", "out"));
    if (doc.contains("importance"))
        spec.importance_repeats = doc.at("importance").value("repeats", std::size_t{5});
    if (spec.importance_repeats < 1) throw ConfigError("importance.repeats must be >= 1");
    spec.overfit_threshold = doc.value("overfit_threshold", 0.05);
    spec.jobs = doc.value("jobs", 1u);
    if (spec.jobs < 1) throw ConfigError("jobs must be >= 1");
    return spec;
}

ColumnSpec RunSpec::column_spec() const {
    if (column_spec_path.empty()) return ColumnSpec::defaults();
    return ColumnSpec::load(column_spec_path);
}

std::string RunSpec::snapshot_path() const { return (fs::path(out_dir) / "snapshot.json").string(); }
std::string RunSpec::ingest_report_path() const {
    return (fs::path(out_dir) / "ingest_report.json").string();
}
std::string RunSpec::eval_report_path() const {
    return (fs::path(out_dir) / "eval_report.json").string();
}
std::string RunSpec::transform_path() const {
    return (fs::path(out_dir) / "transform.json").string();
}
std::string RunSpec::comparison_json_path() const {
    return (fs::path(out_dir) / "comparison.json").string();
}
std::string RunSpec::comparison_text_path() const {
    return (fs::path(out_dir) / "comparison.txt").string();
}
std::string RunSpec::models_dir() const { return (fs::path(out_dir) / "models").string(); }

std::string RunSpec::model_path(EstimatorKind kind, ValidatorKind validator) const {
    const std::string name = "model_" + std::string(estimator_name(kind)) + "_" +
                             std::string(validator_name(validator)) + ".json";
    return (fs::path(models_dir()) / name).string();
}

std::string RunSpec::importance_path(const std::string& model_stem, bool text) const {
    return (fs::path(out_dir) / ("importance_" + model_stem + (text ? ".txt" : ".json"))).string();
}

} // namespace netprice
