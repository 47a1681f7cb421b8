#include "tree_builder.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "netprice/errors.hpp"

namespace netprice::detail {

BinnedMatrix::BinnedMatrix(const Dataset& data, const BinningSpec& bins)
    : n_rows_(data.n_rows()), n_features_(data.n_features()) {
    if (bins.n_features() != n_features_)
        throw ShapeError("binning spec width does not match dataset");
    bins_.resize(n_rows_ * n_features_);
    n_bins_.resize(n_features_);
    for (std::size_t f = 0; f < n_features_; ++f) {
        const auto& thresholds = bins.thresholds[f];
        n_bins_[f] = thresholds.size() + 1;
        for (std::size_t r = 0; r < n_rows_; ++r) {
            const double x = data.at(r, f);
            const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), x);
            bins_[r * n_features_ + f] = static_cast<std::uint32_t>(it - thresholds.begin());
        }
    }
}

namespace {

struct BinAccum {
    double weight = 0.0;
    double wy = 0.0;
    double wyy = 0.0;
    std::size_t rows = 0;

    void add(double w, double y) {
        weight += w;
        wy += w * y;
        wyy += w * y * y;
        ++rows;
    }
};

class TreeBuilder {
public:
    TreeBuilder(const BinnedMatrix& binned, const BinningSpec& bins,
                std::span<const double> targets, std::span<const double> weights,
                const TreeBuildConfig& config, rng::SplitMix64* feature_rng)
        : binned_(binned), bins_(bins), targets_(targets), weights_(weights), config_(config),
          rng_(feature_rng) {}

    TreeModel build() {
        rows_.reserve(binned_.n_rows());
        for (std::size_t r = 0; r < binned_.n_rows(); ++r) {
            if (weights_.empty() || weights_[r] > 0.0) rows_.push_back(static_cast<std::uint32_t>(r));
        }
        if (rows_.empty()) throw FitError("fit_tree: no rows with positive weight");
        scratch_.resize(rows_.size());
        grow(0, rows_.size(), 0);
        return TreeModel(std::move(nodes_), depth_, binned_.n_features());
    }

private:
    double weight_of(std::uint32_t row) const { return weights_.empty() ? 1.0 : weights_[row]; }

    struct NodeStats {
        double weight = 0.0;
        double wy = 0.0;
        double wyy = 0.0;
        double y_min = std::numeric_limits<double>::infinity();
        double y_max = -std::numeric_limits<double>::infinity();

        double mean() const { return wy / weight; }
        double variance() const {
            const double v = wyy / weight - mean() * mean();
            return v > 0.0 ? v : 0.0;
        }
    };

    struct BestSplit {
        double gain = -1.0;
        std::int32_t feature = -1;
        double threshold = 0.0;
        std::uint32_t bin = 0;
    };

    std::int32_t make_leaf(const NodeStats& stats, std::size_t n_rows, int depth) {
        TreeNode leaf;
        leaf.value = stats.mean();
        leaf.n_train = static_cast<std::int64_t>(n_rows);
        nodes_.push_back(leaf);
        depth_ = std::max(depth_, depth);
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    /// Candidate features in ascending order (the tie-break order).
    std::vector<std::size_t> candidate_features() {
        const std::size_t d = binned_.n_features();
        std::vector<std::size_t> features(d);
        std::iota(features.begin(), features.end(), 0);
        const std::size_t k = config_.features_per_node;
        if (k == 0 || k >= d || rng_ == nullptr) return features;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng_->below(d - i));
            std::swap(features[i], features[j]);
        }
        features.resize(k);
        std::sort(features.begin(), features.end());
        return features;
    }

    std::int32_t grow(std::size_t begin, std::size_t end, int depth) {
        NodeStats stats;
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t r = rows_[i];
            const double w = weight_of(r);
            const double y = targets_[r];
            stats.weight += w;
            stats.wy += w * y;
            stats.wyy += w * y * y;
            stats.y_min = std::min(stats.y_min, y);
            stats.y_max = std::max(stats.y_max, y);
        }

        const bool pure = stats.y_min == stats.y_max;
        if (depth >= config_.max_depth || pure) return make_leaf(stats, end - begin, depth);

        const double parent_variance = stats.variance();
        BestSplit best;
        for (std::size_t f : candidate_features()) {
            const auto& thresholds = bins_.thresholds[f];
            if (thresholds.empty()) continue;
            accum_.assign(binned_.n_bins(f), BinAccum{});
            for (std::size_t i = begin; i < end; ++i) {
                const std::uint32_t r = rows_[i];
                accum_[binned_.bin(r, f)].add(weight_of(r), targets_[r]);
            }
            BinAccum left;
            for (std::uint32_t k = 0; k < thresholds.size(); ++k) {
                left.weight += accum_[k].weight;
                left.wy += accum_[k].wy;
                left.wyy += accum_[k].wyy;
                left.rows += accum_[k].rows;
                if (left.rows == 0) continue;
                const std::size_t right_rows = (end - begin) - left.rows;
                if (right_rows == 0) break; // all later thresholds keep everything left
                const double wl = left.weight;
                const double wr = stats.weight - left.weight;
                if (wl <= 0.0 || wr <= 0.0) continue;
                const double mean_l = left.wy / wl;
                const double mean_r = (stats.wy - left.wy) / wr;
                double var_l = left.wyy / wl - mean_l * mean_l;
                double var_r = (stats.wyy - left.wyy) / wr - mean_r * mean_r;
                if (var_l < 0.0) var_l = 0.0;
                if (var_r < 0.0) var_r = 0.0;
                const double gain = parent_variance - (wl * var_l + wr * var_r) / stats.weight;
                if (gain > best.gain) {
                    best.gain = gain;
                    best.feature = static_cast<std::int32_t>(f);
                    best.threshold = thresholds[k];
                    best.bin = k;
                }
            }
        }

        if (best.feature < 0 || best.gain < config_.min_info_gain)
            return make_leaf(stats, end - begin, depth);

        // Stable two-way partition keeps row order deterministic.
        std::size_t lo = begin;
        std::size_t hi = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t r = rows_[i];
            if (binned_.bin(r, static_cast<std::size_t>(best.feature)) <= best.bin) {
                rows_[lo++] = r;
            } else {
                scratch_[hi++] = r;
            }
        }
        std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(hi),
                  rows_.begin() + static_cast<std::ptrdiff_t>(lo));

        const std::size_t node_index = nodes_.size();
        nodes_.emplace_back();
        nodes_[node_index].feature = best.feature;
        nodes_[node_index].threshold = best.threshold;
        const std::int32_t left = grow(begin, lo, depth + 1);
        const std::int32_t right = grow(lo, end, depth + 1);
        nodes_[node_index].left = left;
        nodes_[node_index].right = right;
        return static_cast<std::int32_t>(node_index);
    }

    const BinnedMatrix& binned_;
    const BinningSpec& bins_;
    std::span<const double> targets_;
    std::span<const double> weights_;
    TreeBuildConfig config_;
    rng::SplitMix64* rng_;

    std::vector<TreeNode> nodes_;
    std::vector<std::uint32_t> rows_;
    std::vector<std::uint32_t> scratch_;
    std::vector<BinAccum> accum_;
    int depth_ = 0;
};

} // namespace

TreeModel build_tree(const BinnedMatrix& binned, const BinningSpec& bins,
                     std::span<const double> targets, std::span<const double> weights,
                     const TreeBuildConfig& config, rng::SplitMix64* feature_rng) {
    if (targets.size() != binned.n_rows()) throw ShapeError("targets length must equal n_rows");
    if (!weights.empty() && weights.size() != binned.n_rows())
        throw ShapeError("row_weights length must equal n_rows");
    TreeBuilder builder(binned, bins, targets, weights, config, feature_rng);
    return builder.build();
}

} // namespace netprice::detail
