#pragma once

#include <cstddef>
#include <vector>

#include "netprice/dataset.hpp"

namespace netprice {

/// Per-feature candidate split thresholds, strictly increasing. Trees only
/// ever test "x <= t" at these values.
struct BinningSpec {
    std::vector<std::vector<double>> thresholds;

    std::size_t n_features() const { return thresholds.size(); }
};

/// Equal-frequency candidate thresholds capped at max_bins bins per feature.
/// Features with at most max_bins distinct values get every midpoint between
/// consecutive distinct values; denser features get midpoints at the
/// 1/max_bins .. (max_bins-1)/max_bins sample quantiles. Constant features
/// get an empty list (unsplittable).
BinningSpec compute_bins(const Dataset& train, int max_bins);

} // namespace netprice
