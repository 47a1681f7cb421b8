#include "netprice/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netprice/binning.hpp"
#include "netprice/errors.hpp"
#include "json_util.hpp"

namespace netprice {

std::string_view estimator_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Forest: return "RF";
        case EstimatorKind::Gbt: return "GBT";
        case EstimatorKind::Tree: return "DT";
        case EstimatorKind::Linear: return "LR";
    }
    return "?";
}

std::optional<EstimatorKind> estimator_from_name(const std::string& name) {
    if (name == "RF") return EstimatorKind::Forest;
    if (name == "GBT") return EstimatorKind::Gbt;
    if (name == "DT") return EstimatorKind::Tree;
    if (name == "LR") return EstimatorKind::Linear;
    return std::nullopt;
}

Model::Model(TreeModel tree, ParamMap params, std::vector<std::string> feature_names)
    : impl_(std::move(tree)), params_(std::move(params)), feature_names_(std::move(feature_names)) {
    n_features_ = std::get<TreeModel>(impl_).n_features();
}

Model::Model(ForestModel forest, ParamMap params, std::vector<std::string> feature_names)
    : impl_(std::move(forest)), params_(std::move(params)),
      feature_names_(std::move(feature_names)) {
    n_features_ = std::get<ForestModel>(impl_).n_features();
}

Model::Model(GbtModel gbt, ParamMap params, std::vector<std::string> feature_names)
    : impl_(std::move(gbt)), params_(std::move(params)), feature_names_(std::move(feature_names)) {
    n_features_ = std::get<GbtModel>(impl_).n_features();
}

Model::Model(LinearModel linear, ParamMap params, std::vector<std::string> feature_names)
    : impl_(std::move(linear)), params_(std::move(params)),
      feature_names_(std::move(feature_names)) {
    n_features_ = std::get<LinearModel>(impl_).n_features();
}

EstimatorKind Model::kind() const {
    if (std::holds_alternative<ForestModel>(impl_)) return EstimatorKind::Forest;
    if (std::holds_alternative<GbtModel>(impl_)) return EstimatorKind::Gbt;
    if (std::holds_alternative<TreeModel>(impl_)) return EstimatorKind::Tree;
    return EstimatorKind::Linear;
}

double Model::predict(std::span<const double> x) const {
    if (x.size() != n_features_)
        throw ShapeError("predict: expected " + std::to_string(n_features_) + " features, got " +
                         std::to_string(x.size()));
    return std::visit([&](const auto& model) { return model.predict(x); }, impl_);
}

std::vector<double> Model::predict_all(const Dataset& data) const {
    std::vector<double> out(data.n_rows());
    for (std::size_t r = 0; r < data.n_rows(); ++r) out[r] = predict(data.row(r));
    return out;
}

Model fit_model(EstimatorKind kind, const Dataset& train, const ParamMap& params) {
    switch (kind) {
        case EstimatorKind::Forest:
            return Model(fit_forest(train, params), params, train.feature_names());
        case EstimatorKind::Gbt:
            return Model(fit_gbt(train, params), params, train.feature_names());
        case EstimatorKind::Tree: {
            const BinningSpec bins = compute_bins(train, params.max_bins());
            return Model(fit_tree(train, params, bins), params, train.feature_names());
        }
        case EstimatorKind::Linear:
            return Model(fit_linear(train, params), params, train.feature_names());
    }
    throw ConfigError("unknown estimator kind");
}

namespace {

nlohmann::ordered_json tree_to_json(const TreeModel& tree) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& node : tree.nodes()) {
        if (node.is_leaf()) {
            nodes.push_back({{"value", node.value}, {"n", node.n_train}});
        } else {
            nodes.push_back({{"feature", node.feature},
                             {"threshold", node.threshold},
                             {"left", node.left},
                             {"right", node.right}});
        }
    }
    return {{"depth", tree.depth()}, {"n_features", tree.n_features()}, {"nodes", std::move(nodes)}};
}

TreeModel tree_from_json(const nlohmann::json& doc) {
    std::vector<TreeNode> nodes;
    for (const auto& item : doc.at("nodes")) {
        TreeNode node;
        if (item.contains("feature")) {
            node.feature = item.at("feature").get<std::int32_t>();
            node.threshold = item.at("threshold").get<double>();
            node.left = item.at("left").get<std::int32_t>();
            node.right = item.at("right").get<std::int32_t>();
        } else {
            node.value = item.at("value").get<double>();
            node.n_train = item.at("n").get<std::int64_t>();
        }
        nodes.push_back(node);
    }
    return TreeModel(std::move(nodes), doc.at("depth").get<int>(),
                     doc.at("n_features").get<std::size_t>());
}

} // namespace

std::string Model::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-model";
    doc["version"] = 1;
    doc["kind"] = std::string(estimator_name(kind()));
    doc["params"] = detail::param_map_to_json(params_);
    doc["feature_names"] = feature_names_;
    switch (kind()) {
        case EstimatorKind::Tree: doc["tree"] = tree_to_json(tree()); break;
        case EstimatorKind::Forest: {
            nlohmann::ordered_json trees = nlohmann::ordered_json::array();
            for (const auto& t : forest().trees()) trees.push_back(tree_to_json(t));
            doc["forest"] = {{"trees", std::move(trees)}, {"tree_seeds", forest().tree_seeds()}};
            break;
        }
        case EstimatorKind::Gbt: {
            nlohmann::ordered_json stages = nlohmann::ordered_json::array();
            for (const auto& stage : gbt().stages())
                stages.push_back(
                    {{"learning_rate", stage.learning_rate}, {"tree", tree_to_json(stage.tree)}});
            doc["gbt"] = {{"base_prediction", gbt().base_prediction()},
                          {"n_features", gbt().n_features()},
                          {"stages", std::move(stages)}};
            break;
        }
        case EstimatorKind::Linear: {
            doc["linear"] = {{"weights", std::vector<double>(linear().weights().begin(),
                                                             linear().weights().end())},
                             {"intercept", linear().intercept()},
                             {"standardized_fit", linear().standardized_fit()},
                             {"converged", linear().converged()}};
            break;
        }
    }
    return doc.dump(2) + "\n";
}

Model Model::from_json_string(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "netprice-model") throw SchemaError("not a netprice model file");

    const auto kind = estimator_from_name(doc.at("kind").get<std::string>());
    if (!kind) throw SchemaError("unknown model kind: " + doc.at("kind").get<std::string>());
    ParamMap params = detail::param_map_from_json(doc.at("params"));
    auto names = doc.at("feature_names").get<std::vector<std::string>>();

    switch (*kind) {
        case EstimatorKind::Tree:
            return Model(tree_from_json(doc.at("tree")), std::move(params), std::move(names));
        case EstimatorKind::Forest: {
            std::vector<TreeModel> trees;
            for (const auto& t : doc.at("forest").at("trees")) trees.push_back(tree_from_json(t));
            auto seeds = doc.at("forest").at("tree_seeds").get<std::vector<std::uint64_t>>();
            return Model(ForestModel(std::move(trees), std::move(seeds)), std::move(params),
                         std::move(names));
        }
        case EstimatorKind::Gbt: {
            const auto& g = doc.at("gbt");
            std::vector<GbtModel::Stage> stages;
            for (const auto& s : g.at("stages"))
                stages.push_back({tree_from_json(s.at("tree")), s.at("learning_rate").get<double>()});
            return Model(GbtModel(g.at("base_prediction").get<double>(), std::move(stages),
                                  g.at("n_features").get<std::size_t>()),
                         std::move(params), std::move(names));
        }
        case EstimatorKind::Linear: {
            const auto& l = doc.at("linear");
            return Model(LinearModel(l.at("weights").get<std::vector<double>>(),
                                     l.at("intercept").get<double>(),
                                     l.at("standardized_fit").get<bool>(),
                                     l.at("converged").get<bool>()),
                         std::move(params), std::move(names));
        }
    }
    throw SchemaError("unknown model kind");
}

void Model::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file: " + path);
    out << to_json_string();
    if (!out) throw IoError("failed writing model file: " + path);
}

Model Model::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

} // namespace netprice
