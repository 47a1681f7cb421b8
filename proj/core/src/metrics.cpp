#include "netprice/metrics.hpp"

#include <cmath>

#include "netprice/errors.hpp"

namespace netprice {

namespace {

void check_shapes(std::span<const double> y, std::span<const double> yhat) {
    if (y.empty()) throw ShapeError("metrics need at least one scored row");
    if (y.size() != yhat.size())
        throw ShapeError("metrics length mismatch: " + std::to_string(y.size()) + " vs " +
                         std::to_string(yhat.size()));
}

} // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
    check_shapes(y, yhat);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double diff = y[i] - yhat[i];
        sum_sq += diff * diff;
    }
    return std::sqrt(sum_sq / static_cast<double>(y.size()));
}

double r2(std::span<const double> y, std::span<const double> yhat) {
    check_shapes(y, yhat);
    double mean = 0.0;
    for (const double v : y) mean += v;
    mean /= static_cast<double>(y.size());

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double res = y[i] - yhat[i];
        const double dev = y[i] - mean;
        ss_res += res * res;
        ss_tot += dev * dev;
    }
    if (ss_tot == 0.0)
        throw ShapeError("r2 is undefined for constant labels (zero variance)");
    return 1.0 - ss_res / ss_tot;
}

MetricPair evaluate(const Model& model, const Dataset& data) {
    const std::vector<double> predictions = model.predict_all(data);
    MetricPair out;
    out.n = data.n_rows();
    out.rmse = rmse(data.labels(), predictions);
    out.r2 = r2(data.labels(), predictions);
    return out;
}

} // namespace netprice
