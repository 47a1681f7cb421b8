#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/forest.hpp"
#include "netprice/gbt.hpp"
#include "netprice/linear.hpp"
#include "netprice/params.hpp"
#include "netprice/tree.hpp"

namespace netprice {

enum class EstimatorKind { Forest, Gbt, Tree, Linear };

/// Report names, matching the comparison table: RF, GBT, DT, LR.
std::string_view estimator_name(EstimatorKind kind);
std::optional<EstimatorKind> estimator_from_name(const std::string& name);

/// The four estimator kinds in fixed report order.
inline constexpr EstimatorKind kEstimatorOrder[] = {EstimatorKind::Forest, EstimatorKind::Gbt,
                                                    EstimatorKind::Tree, EstimatorKind::Linear};

/// Immutable fitted predictor with a uniform predict contract. Carries the
/// hyperparameters and feature names it was fit with, and persists to a
/// self-describing JSON document that round-trips to identical predictions.
class Model {
public:
    Model() = default;
    Model(TreeModel tree, ParamMap params, std::vector<std::string> feature_names);
    Model(ForestModel forest, ParamMap params, std::vector<std::string> feature_names);
    Model(GbtModel gbt, ParamMap params, std::vector<std::string> feature_names);
    Model(LinearModel linear, ParamMap params, std::vector<std::string> feature_names);

    EstimatorKind kind() const;
    std::size_t n_features() const { return n_features_; }
    const ParamMap& params() const { return params_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    double predict(std::span<const double> x) const;
    std::vector<double> predict_all(const Dataset& data) const;

    const TreeModel& tree() const { return std::get<TreeModel>(impl_); }
    const ForestModel& forest() const { return std::get<ForestModel>(impl_); }
    const GbtModel& gbt() const { return std::get<GbtModel>(impl_); }
    const LinearModel& linear() const { return std::get<LinearModel>(impl_); }

    std::string to_json_string() const;
    static Model from_json_string(const std::string& json_text);
    void save(const std::string& path) const;
    static Model load(const std::string& path);

private:
    std::variant<ForestModel, GbtModel, TreeModel, LinearModel> impl_;
    ParamMap params_;
    std::vector<std::string> feature_names_;
    std::size_t n_features_ = 0;
};

/// Dispatches to the matching fit_* operation.
Model fit_model(EstimatorKind kind, const Dataset& train, const ParamMap& params);

} // namespace netprice
