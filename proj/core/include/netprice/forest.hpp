#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/params.hpp"
#include "netprice/tree.hpp"

namespace netprice {

/// Bagged ensemble of regression trees; predicts the mean of its members.
class ForestModel {
public:
    ForestModel() = default;
    ForestModel(std::vector<TreeModel> trees, std::vector<std::uint64_t> tree_seeds)
        : trees_(std::move(trees)), tree_seeds_(std::move(tree_seeds)) {}

    double predict(std::span<const double> x) const {
        double sum = 0.0;
        for (const auto& tree : trees_) sum += tree.predict(x);
        return sum / static_cast<double>(trees_.size());
    }

    const std::vector<TreeModel>& trees() const { return trees_; }
    const std::vector<std::uint64_t>& tree_seeds() const { return tree_seeds_; }
    std::size_t n_features() const { return trees_.empty() ? 0 : trees_.front().n_features(); }

private:
    std::vector<TreeModel> trees_;
    std::vector<std::uint64_t> tree_seeds_;
};

/// Trains n_estimators trees, each on a bootstrap resample (when bootstrap)
/// with a per-node random feature subset. Per-tree seeds derive from
/// params.seed, so results do not depend on thread scheduling.
ForestModel fit_forest(const Dataset& train, const ParamMap& params);

} // namespace netprice
