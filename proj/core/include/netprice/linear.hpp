#pragma once

#include <span>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/params.hpp"

namespace netprice {

/// Elastic-net linear regression. Weights are stored in original feature
/// units regardless of whether the fit ran in standardized coordinates.
class LinearModel {
public:
    LinearModel() = default;
    LinearModel(std::vector<double> weights, double intercept, bool standardized_fit,
                bool converged)
        : weights_(std::move(weights)), intercept_(intercept), standardized_fit_(standardized_fit),
          converged_(converged) {}

    double predict(std::span<const double> x) const {
        double out = intercept_;
        for (std::size_t j = 0; j < weights_.size(); ++j) out += weights_[j] * x[j];
        return out;
    }

    std::span<const double> weights() const { return weights_; }
    double intercept() const { return intercept_; }
    bool standardized_fit() const { return standardized_fit_; }
    /// False when coordinate descent hit the sweep cap before the tolerance.
    bool converged() const { return converged_; }
    std::size_t n_features() const { return weights_.size(); }

private:
    std::vector<double> weights_;
    double intercept_ = 0.0;
    bool standardized_fit_ = false;
    bool converged_ = true;
};

/// Minimizes (1/2n)*sum (y - b - w.x)^2
///           + regParam * (elasticNetParam*|w|_1 + (1-elasticNetParam)/2*|w|_2^2)
/// by cyclic coordinate descent with soft thresholding. The intercept is
/// unpenalized. With standardization the penalty applies in standardized
/// coordinates and weights are back-transformed afterwards.
LinearModel fit_linear(const Dataset& train, const ParamMap& params);

} // namespace netprice
