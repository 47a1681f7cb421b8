#pragma once

#include <cstddef>
#include <span>

#include "netprice/dataset.hpp"
#include "netprice/model.hpp"

namespace netprice {

/// Accuracy summary for one scored set (RMSE in label units, USD/year).
struct MetricPair {
    double rmse = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

/// Root mean squared error: sqrt(sum (y - yhat)^2 / n).
double rmse(std::span<const double> y, std::span<const double> yhat);

/// Coefficient of determination: 1 - SS_res/SS_tot. Constant y is an
/// explicit error rather than a silent NaN.
double r2(std::span<const double> y, std::span<const double> yhat);

MetricPair evaluate(const Model& model, const Dataset& data);

} // namespace netprice
