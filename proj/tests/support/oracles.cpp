#include "oracles.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netprice::testing {

namespace {

long double kahan_sum(std::span<const long double> values) {
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (const long double v : values) {
        const long double t = v - carry;
        const long double next = sum + t;
        carry = (next - sum) - t;
        sum = next;
    }
    return sum;
}

} // namespace

double oracle_rmse(std::span<const double> y, std::span<const double> yhat) {
    std::vector<long double> squares(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const long double diff = static_cast<long double>(y[i]) - yhat[i];
        squares[i] = diff * diff;
    }
    return static_cast<double>(
        std::sqrt(kahan_sum(squares) / static_cast<long double>(y.size())));
}

double oracle_r2(std::span<const double> y, std::span<const double> yhat) {
    std::vector<long double> values(y.begin(), y.end());
    const long double mean = kahan_sum(values) / static_cast<long double>(y.size());
    std::vector<long double> res(y.size()), tot(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const long double r = static_cast<long double>(y[i]) - yhat[i];
        const long double d = static_cast<long double>(y[i]) - mean;
        res[i] = r * r;
        tot[i] = d * d;
    }
    return static_cast<double>(1.0L - kahan_sum(res) / kahan_sum(tot));
}

namespace {

struct OracleNode {
    std::vector<std::size_t> rows;
};

double mean_of(const Dataset& data, const std::vector<std::size_t>& rows) {
    double sum = 0.0;
    for (const std::size_t r : rows) sum += data.label(r);
    return sum / static_cast<double>(rows.size());
}

double variance_of(const Dataset& data, const std::vector<std::size_t>& rows) {
    const double mean = mean_of(data, rows);
    double sum = 0.0;
    for (const std::size_t r : rows) {
        const double d = data.label(r) - mean;
        sum += d * d;
    }
    return sum / static_cast<double>(rows.size());
}

double grow_sse(const Dataset& data, const BinningSpec& bins, const std::vector<std::size_t>& rows,
                int depth, int max_depth, double min_info_gain) {
    double y_min = data.label(rows.front());
    double y_max = y_min;
    for (const std::size_t r : rows) {
        y_min = std::min(y_min, data.label(r));
        y_max = std::max(y_max, data.label(r));
    }
    auto leaf_sse = [&] {
        const double mean = mean_of(data, rows);
        double sse = 0.0;
        for (const std::size_t r : rows) {
            const double d = data.label(r) - mean;
            sse += d * d;
        }
        return sse;
    };
    if (depth >= max_depth || y_min == y_max) return leaf_sse();

    const double parent_var = variance_of(data, rows);
    double best_gain = -1.0;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;
    for (std::size_t f = 0; f < bins.n_features(); ++f) {
        for (const double t : bins.thresholds[f]) {
            std::vector<std::size_t> left, right;
            for (const std::size_t r : rows) (data.at(r, f) <= t ? left : right).push_back(r);
            if (left.empty() || right.empty()) continue;
            const double var_l = variance_of(data, left);
            const double var_r = variance_of(data, right);
            const double n = static_cast<double>(rows.size());
            const double gain =
                parent_var - (static_cast<double>(left.size()) * var_l +
                              static_cast<double>(right.size()) * var_r) /
                                 n;
            if (gain > best_gain) {
                best_gain = gain;
                best_feature = f;
                best_threshold = t;
                found = true;
            }
        }
    }
    if (!found || best_gain < min_info_gain) return leaf_sse();

    std::vector<std::size_t> left, right;
    for (const std::size_t r : rows)
        (data.at(r, best_feature) <= best_threshold ? left : right).push_back(r);
    return grow_sse(data, bins, left, depth + 1, max_depth, min_info_gain) +
           grow_sse(data, bins, right, depth + 1, max_depth, min_info_gain);
}

} // namespace

double exhaustive_tree_sse(const Dataset& data, const BinningSpec& bins, int max_depth,
                           double min_info_gain) {
    std::vector<std::size_t> rows(data.n_rows());
    std::iota(rows.begin(), rows.end(), 0);
    return grow_sse(data, bins, rows, 0, max_depth, min_info_gain);
}

std::vector<double> ridge_closed_form(const Dataset& data, double lambda) {
    const std::size_t n = data.n_rows();
    const std::size_t d = data.n_features();

    std::vector<double> x_mean(d, 0.0);
    double y_mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        y_mean += data.label(r);
        for (std::size_t j = 0; j < d; ++j) x_mean[j] += data.at(r, j);
    }
    y_mean /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) x_mean[j] /= static_cast<double>(n);

    // Normal equations on centered data, then Gaussian elimination with
    // partial pivoting (d is tiny in every test).
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = data.at(r, i) - x_mean[i];
            for (std::size_t j = 0; j < d; ++j) a[i][j] += xi * (data.at(r, j) - x_mean[j]);
            a[i][d] += xi * (data.label(r) - y_mean);
        }
    }
    for (std::size_t i = 0; i < d; ++i) a[i][i] += static_cast<double>(n) * lambda;

    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < d; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        std::swap(a[col], a[pivot]);
        if (a[col][col] == 0.0) throw std::runtime_error("ridge oracle: singular system");
        for (std::size_t row = 0; row < d; ++row) {
            if (row == col) continue;
            const double factor = a[row][col] / a[col][col];
            for (std::size_t j = col; j <= d; ++j) a[row][j] -= factor * a[col][j];
        }
    }

    std::vector<double> out(d + 1, 0.0);
    double intercept = y_mean;
    for (std::size_t j = 0; j < d; ++j) {
        out[j] = a[j][d] / a[j][j];
        intercept -= out[j] * x_mean[j];
    }
    out[d] = intercept;
    return out;
}

} // namespace netprice::testing
