#pragma once

#include <string>

#include "netprice/dataset.hpp"
#include "netprice/metrics.hpp"
#include "netprice/model.hpp"

namespace netprice {

/// Train-vs-test generalization diagnostic.
struct OverfitReport {
    MetricPair train;
    MetricPair test;
    double r2_gap = 0.0; // train.r2 - test.r2
    double threshold = 0.0;
    bool flagged = false;

    std::string to_json_string() const;
};

OverfitReport overfit_check(const Model& model, const Dataset& train, const Dataset& test,
                            double threshold);

} // namespace netprice
