#include "netprice/forest.hpp"

#include <cmath>

#include "netprice/binning.hpp"
#include "netprice/errors.hpp"
#include "netprice/parallel.hpp"
#include "netprice/random.hpp"
#include "tree_builder.hpp"

namespace netprice {

namespace {

std::size_t subset_size(const std::string& mode, std::size_t n_features) {
    if (mode == "all") return 0;
    double k = 0.0;
    if (mode == "onethird") {
        k = std::ceil(static_cast<double>(n_features) / 3.0);
    } else { // "sqrt"
        k = std::ceil(std::sqrt(static_cast<double>(n_features)));
    }
    const auto size = static_cast<std::size_t>(k);
    return size < 1 ? 1 : size;
}

} // namespace

ForestModel fit_forest(const Dataset& train, const ParamMap& params) {
    if (train.n_rows() == 0) throw FitError("fit_forest: empty training set");
    params.validate();

    const auto n_trees = static_cast<std::size_t>(params.n_estimators());
    const std::size_t n = train.n_rows();

    const BinningSpec bins = compute_bins(train, params.max_bins());
    const detail::BinnedMatrix binned(train, bins);

    detail::TreeBuildConfig config;
    config.max_depth = params.max_depth();
    config.min_info_gain = params.min_info_gain();
    config.features_per_node = subset_size(params.feature_subset(), train.n_features());

    std::vector<std::uint64_t> seeds(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t) seeds[t] = rng::derive_seed(params.seed(), t);

    std::vector<TreeModel> trees(n_trees);
    const bool bootstrap = params.bootstrap();
    par::parallel_for(n_trees, [&](std::size_t t) {
        rng::SplitMix64 gen(seeds[t]);
        std::vector<double> weights;
        if (bootstrap) {
            // Resample n rows with replacement; counts double as row weights.
            weights.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) weights[gen.below(n)] += 1.0;
        }
        trees[t] = detail::build_tree(binned, bins, train.labels(), weights, config,
                                      config.features_per_node > 0 ? &gen : nullptr);
    });

    return ForestModel(std::move(trees), std::move(seeds));
}

} // namespace netprice
