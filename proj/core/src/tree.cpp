#include "netprice/tree.hpp"

#include "netprice/errors.hpp"
#include "tree_builder.hpp"

namespace netprice {

TreeModel fit_tree(const Dataset& train, const ParamMap& params, const BinningSpec& bins,
                   std::span<const double> row_weights) {
    if (train.n_rows() == 0) throw FitError("fit_tree: empty training set");
    params.validate();
    for (const double w : row_weights) {
        if (!(w >= 0.0)) throw FitError("fit_tree: row weights must be non-negative");
    }

    detail::BinnedMatrix binned(train, bins);
    detail::TreeBuildConfig config;
    config.max_depth = params.max_depth();
    config.min_info_gain = params.min_info_gain();
    return detail::build_tree(binned, bins, train.labels(), row_weights, config, nullptr);
}

} // namespace netprice
