#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "netprice/errors.hpp"

namespace netprice {

/// Dense row-major numeric feature matrix plus label vector; the input to
/// every estimator. Cells are always finite (imputation happens upstream).
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t n_rows, std::size_t n_features)
        : n_rows_(n_rows), n_features_(n_features), values_(n_rows * n_features, 0.0),
          labels_(n_rows, 0.0) {}

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_features() const { return n_features_; }

    double at(std::size_t row, std::size_t col) const { return values_[row * n_features_ + col]; }
    void set(std::size_t row, std::size_t col, double value) {
        values_[row * n_features_ + col] = value;
    }

    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * n_features_, n_features_};
    }

    double label(std::size_t r) const { return labels_[r]; }
    void set_label(std::size_t r, double value) { labels_[r] = value; }
    std::span<const double> labels() const { return labels_; }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    void set_feature_names(std::vector<std::string> names) {
        if (!names.empty() && names.size() != n_features_)
            throw ShapeError("feature_names length must equal n_features");
        feature_names_ = std::move(names);
    }

    std::vector<double> feature_column(std::size_t col) const {
        std::vector<double> out(n_rows_);
        for (std::size_t r = 0; r < n_rows_; ++r) out[r] = at(r, col);
        return out;
    }
    void set_feature_column(std::size_t col, std::span<const double> values) {
        if (values.size() != n_rows_) throw ShapeError("column length must equal n_rows");
        for (std::size_t r = 0; r < n_rows_; ++r) set(r, col, values[r]);
    }

    Dataset select_rows(std::span<const std::size_t> indices) const {
        Dataset out(indices.size(), n_features_);
        out.feature_names_ = feature_names_;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const std::size_t r = indices[i];
            for (std::size_t c = 0; c < n_features_; ++c) out.set(i, c, at(r, c));
            out.set_label(i, labels_[r]);
        }
        return out;
    }

private:
    std::size_t n_rows_ = 0;
    std::size_t n_features_ = 0;
    std::vector<double> values_;
    std::vector<double> labels_;
    std::vector<std::string> feature_names_;
};

} // namespace netprice
