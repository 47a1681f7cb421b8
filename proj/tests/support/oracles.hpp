#pragma once

// Independent reference implementations used only to check the library.
// They deliberately share no code with the paths they verify: metrics use
// long-double Kahan sums, the tree oracle scans raw rows per candidate
// split, and the ridge oracle solves the normal equations directly.

#include <span>
#include <vector>

#include "netprice/binning.hpp"
#include "netprice/dataset.hpp"

namespace netprice::testing {

double oracle_rmse(std::span<const double> y, std::span<const double> yhat);
double oracle_r2(std::span<const double> y, std::span<const double> yhat);

/// Training SSE of a greedy variance-reduction tree grown by exhaustive
/// search over the same candidate thresholds, same stopping rules and the
/// same (feature index, threshold) tie-break as fit_tree.
double exhaustive_tree_sse(const Dataset& data, const BinningSpec& bins, int max_depth,
                           double min_info_gain);

/// Closed-form ridge on centered data: (X^T X + n*lambda*I) w = X^T y.
/// Returns weights then the intercept as the last element.
std::vector<double> ridge_closed_form(const Dataset& data, double lambda);

} // namespace netprice::testing
