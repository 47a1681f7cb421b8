#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netprice/binning.hpp"
#include "netprice/dataset.hpp"
#include "netprice/params.hpp"

namespace netprice {

/// One node of a regression tree. Internal nodes route on
/// "x[feature] <= threshold"; leaves carry the mean training label.
struct TreeNode {
    std::int32_t feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;      // leaf prediction
    std::int64_t n_train = 0; // training rows that reached the leaf

    bool is_leaf() const { return feature < 0; }
};

class TreeModel {
public:
    TreeModel() = default;
    TreeModel(std::vector<TreeNode> nodes, int depth, std::size_t n_features)
        : nodes_(std::move(nodes)), depth_(depth), n_features_(n_features) {}

    double predict(std::span<const double> x) const {
        std::size_t i = 0;
        while (!nodes_[i].is_leaf()) {
            const TreeNode& node = nodes_[i];
            i = x[static_cast<std::size_t>(node.feature)] <= node.threshold
                    ? static_cast<std::size_t>(node.left)
                    : static_cast<std::size_t>(node.right);
        }
        return nodes_[i].value;
    }

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int depth() const { return depth_; }
    std::size_t n_features() const { return n_features_; }
    std::size_t n_leaves() const {
        std::size_t count = 0;
        for (const auto& node : nodes_) count += node.is_leaf() ? 1 : 0;
        return count;
    }

private:
    std::vector<TreeNode> nodes_;
    int depth_ = 0;
    std::size_t n_features_ = 0;
};

/// Greedy variance-reduction tree over the binned split candidates.
/// Optional row weights (e.g. bootstrap counts) must be non-negative with a
/// positive total; rows with zero weight are ignored.
TreeModel fit_tree(const Dataset& train, const ParamMap& params, const BinningSpec& bins,
                   std::span<const double> row_weights = {});

} // namespace netprice
