#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/model.hpp"

namespace netprice {

struct FeatureImportance {
    std::string name;
    double rmse_increase = 0.0; // mean over repeats of (permuted RMSE - baseline)
    double stddev = 0.0;        // across repeats
};

/// Permutation feature importance, sorted by descending RMSE increase.
struct ImportanceReport {
    std::vector<FeatureImportance> features;
    double baseline_rmse = 0.0;
    std::size_t repeats = 0;
    std::uint64_t seed = 0;

    std::string to_json_string() const;
    std::string to_text() const;
};

/// Shuffles one feature column at a time (seeded per feature and repeat, so
/// output is schedule-independent) and measures the RMSE increase. The
/// baseline is computed exactly once on unpermuted data.
ImportanceReport permutation_importance(const Model& model, const Dataset& data,
                                        std::size_t repeats, std::uint64_t seed);

} // namespace netprice
