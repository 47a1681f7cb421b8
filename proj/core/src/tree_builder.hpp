#pragma once

// Internal tree-growing machinery shared by fit_tree, fit_forest and
// fit_gbt. Not installed.

#include <cstdint>
#include <span>
#include <vector>

#include "netprice/binning.hpp"
#include "netprice/dataset.hpp"
#include "netprice/random.hpp"
#include "netprice/tree.hpp"

namespace netprice::detail {

/// Bin index of every (row, feature) cell against a BinningSpec. Built once
/// per dataset and shared across all trees of a forest / stages of a GBT.
/// bin(r, f) = index of the first threshold >= x, so a split at threshold
/// index k sends bins [0, k] left.
class BinnedMatrix {
public:
    BinnedMatrix(const Dataset& data, const BinningSpec& bins);

    std::uint32_t bin(std::size_t row, std::size_t feature) const {
        return bins_[row * n_features_ + feature];
    }
    std::size_t n_bins(std::size_t feature) const { return n_bins_[feature]; }
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_features() const { return n_features_; }

private:
    std::size_t n_rows_ = 0;
    std::size_t n_features_ = 0;
    std::vector<std::uint32_t> bins_;
    std::vector<std::size_t> n_bins_;
};

struct TreeBuildConfig {
    int max_depth = 5;
    double min_info_gain = 0.0;
    std::size_t features_per_node = 0; // 0 = consider every feature
};

/// Grows one tree on (targets, weights). feature_rng drives the per-node
/// feature subsample when features_per_node > 0; it must be null otherwise.
TreeModel build_tree(const BinnedMatrix& binned, const BinningSpec& bins,
                     std::span<const double> targets, std::span<const double> weights,
                     const TreeBuildConfig& config, rng::SplitMix64* feature_rng);

} // namespace netprice::detail
