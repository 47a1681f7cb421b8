#include "netprice/gbt.hpp"

#include "netprice/binning.hpp"
#include "netprice/errors.hpp"
#include "tree_builder.hpp"

namespace netprice {

GbtModel fit_gbt(const Dataset& train, const ParamMap& params) {
    if (train.n_rows() == 0) throw FitError("fit_gbt: empty training set");
    params.validate();

    const std::size_t n = train.n_rows();
    const auto max_iter = static_cast<std::size_t>(params.max_iter(20));
    const double learning_rate = params.learning_rate();

    double base = 0.0;
    for (const double y : train.labels()) base += y;
    base /= static_cast<double>(n);

    if (max_iter == 0) return GbtModel(base, {}, train.n_features());

    const BinningSpec bins = compute_bins(train, params.max_bins());
    const detail::BinnedMatrix binned(train, bins);

    detail::TreeBuildConfig config;
    config.max_depth = params.max_depth();
    config.min_info_gain = params.min_info_gain();

    std::vector<double> residuals(n);
    for (std::size_t r = 0; r < n; ++r) residuals[r] = train.label(r) - base;

    std::vector<GbtModel::Stage> stages;
    stages.reserve(max_iter);
    for (std::size_t m = 0; m < max_iter; ++m) {
        TreeModel tree = detail::build_tree(binned, bins, residuals, {}, config, nullptr);
        for (std::size_t r = 0; r < n; ++r)
            residuals[r] -= learning_rate * tree.predict(train.row(r));
        stages.push_back({std::move(tree), learning_rate});
    }
    return GbtModel(base, std::move(stages), train.n_features());
}

} // namespace netprice
