#include "netprice/binning.hpp"

#include <algorithm>
#include <numeric>

#include "netprice/errors.hpp"

namespace netprice {

namespace {

std::vector<double> feature_thresholds(std::vector<double> values, std::size_t max_bins) {
    std::sort(values.begin(), values.end());
    std::vector<double> distinct = values;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) return {};

    auto midpoint = [](double lo, double hi) { return std::midpoint(lo, hi); };

    std::vector<double> thresholds;
    if (distinct.size() <= max_bins) {
        thresholds.reserve(distinct.size() - 1);
        for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
            thresholds.push_back(midpoint(distinct[i], distinct[i + 1]));
    } else {
        // Equal-frequency cuts: rank i*n/max_bins for i = 1..max_bins-1,
        // each shifted to the midpoint below the distinct value at the cut.
        const std::size_t n = values.size();
        for (std::size_t i = 1; i < max_bins; ++i) {
            const std::size_t rank = i * n / max_bins;
            const double q = values[rank];
            auto it = std::lower_bound(distinct.begin(), distinct.end(), q);
            if (it == distinct.begin()) continue; // cut at the minimum separates nothing
            thresholds.push_back(midpoint(*(it - 1), *it));
        }
        std::sort(thresholds.begin(), thresholds.end());
        thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    }
    return thresholds;
}

} // namespace

BinningSpec compute_bins(const Dataset& train, int max_bins) {
    if (train.n_rows() == 0) throw FitError("compute_bins: empty training set");
    if (max_bins < 2) throw ConfigError("maxBins must be >= 2");

    BinningSpec spec;
    spec.thresholds.resize(train.n_features());
    for (std::size_t f = 0; f < train.n_features(); ++f)
        spec.thresholds[f] =
            feature_thresholds(train.feature_column(f), static_cast<std::size_t>(max_bins));
    return spec;
}

} // namespace netprice
