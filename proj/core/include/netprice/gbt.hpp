#pragma once

#include <span>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/params.hpp"
#include "netprice/tree.hpp"

namespace netprice {

/// Gradient-boosted trees for squared error: a base prediction (the training
/// label mean) plus learning-rate-scaled trees fit to running residuals.
class GbtModel {
public:
    struct Stage {
        TreeModel tree;
        double learning_rate = 0.1;
    };

    GbtModel() = default;
    GbtModel(double base_prediction, std::vector<Stage> stages, std::size_t n_features)
        : base_(base_prediction), stages_(std::move(stages)), n_features_(n_features) {}

    double predict(std::span<const double> x) const { return predict_prefix(x, stages_.size()); }

    /// Prediction of the first n_stages boosting stages (diagnostics).
    double predict_prefix(std::span<const double> x, std::size_t n_stages) const {
        double out = base_;
        for (std::size_t m = 0; m < n_stages && m < stages_.size(); ++m)
            out += stages_[m].learning_rate * stages_[m].tree.predict(x);
        return out;
    }

    double base_prediction() const { return base_; }
    const std::vector<Stage>& stages() const { return stages_; }
    std::size_t n_features() const { return n_features_; }

private:
    double base_ = 0.0;
    std::vector<Stage> stages_;
    std::size_t n_features_ = 0;
};

/// Boosts maxIter trees against squared-error residuals. maxIter = 0 yields
/// the constant mean predictor. Training MSE is nonincreasing per stage for
/// any learning_rate in (0, 1].
GbtModel fit_gbt(const Dataset& train, const ParamMap& params);

} // namespace netprice
