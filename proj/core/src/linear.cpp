#include "netprice/linear.hpp"

#include <cmath>

#include "netprice/errors.hpp"

namespace netprice {

namespace {

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

constexpr double kTolerance = 1e-7; // max coefficient change per sweep

} // namespace

LinearModel fit_linear(const Dataset& train, const ParamMap& params) {
    if (train.n_rows() == 0) throw FitError("fit_linear: empty training set");
    params.validate();

    const std::size_t n = train.n_rows();
    const std::size_t d = train.n_features();
    const double lambda = params.reg_param();
    const double alpha = params.elastic_net_param();
    const bool standardize = params.standardization();
    const int max_sweeps = params.max_iter(100);

    // Center features and label so the intercept drops out of the descent;
    // optionally scale to unit stddev so the penalty acts per standardized
    // coordinate.
    std::vector<double> mean(d, 0.0), scale(d, 1.0);
    double y_mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        y_mean += train.label(r);
        for (std::size_t j = 0; j < d; ++j) mean[j] += train.at(r, j);
    }
    y_mean /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);

    // Column-major working copy of the centered (and scaled) features.
    std::vector<double> z(n * d);
    std::vector<double> col_sq_mean(d, 0.0); // (1/n) sum z_ij^2
    for (std::size_t j = 0; j < d; ++j) {
        double sumsq = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double v = train.at(r, j) - mean[j];
            z[j * n + r] = v;
            sumsq += v * v;
        }
        if (standardize) {
            const double stddev = std::sqrt(sumsq / static_cast<double>(n));
            scale[j] = stddev;
            if (stddev > 0.0) {
                for (std::size_t r = 0; r < n; ++r) z[j * n + r] /= stddev;
                col_sq_mean[j] = 1.0;
            }
        } else {
            col_sq_mean[j] = sumsq / static_cast<double>(n);
        }
    }

    std::vector<double> w(d, 0.0);
    std::vector<double> residual(n);
    for (std::size_t r = 0; r < n; ++r) residual[r] = train.label(r) - y_mean;

    const double l1 = lambda * alpha;
    const double l2 = lambda * (1.0 - alpha);
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double max_delta = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (col_sq_mean[j] == 0.0) continue; // constant column stays at weight 0
            const double* zj = &z[j * n];
            double rho = 0.0;
            for (std::size_t r = 0; r < n; ++r) rho += zj[r] * residual[r];
            rho = rho / static_cast<double>(n) + col_sq_mean[j] * w[j];
            const double w_new = soft_threshold(rho, l1) / (col_sq_mean[j] + l2);
            const double delta = w_new - w[j];
            if (delta != 0.0) {
                for (std::size_t r = 0; r < n; ++r) residual[r] -= delta * zj[r];
                w[j] = w_new;
            }
            max_delta = std::max(max_delta, std::abs(delta));
        }
        converged = max_delta < kTolerance;
    }

    // Back-transform to original units.
    std::vector<double> weights(d, 0.0);
    double intercept = y_mean;
    for (std::size_t j = 0; j < d; ++j) {
        const double wj = (standardize && scale[j] > 0.0) ? w[j] / scale[j] : w[j];
        weights[j] = wj;
        intercept -= wj * mean[j];
    }
    return LinearModel(std::move(weights), intercept, standardize, converged);
}

} // namespace netprice
