#pragma once

#include <string>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/table.hpp"

namespace netprice {

/// Train-fitted feature transform: median imputation for numerics, one-hot
/// expansion for categoricals, optional standardization. Immutable once
/// fitted; applying it to test rows uses only training statistics.
class FittedTransform {
public:
    struct NumericColumn {
        std::string name;
        double impute_value = 0.0; // median of observed training values
    };
    struct CategoricalColumn {
        std::string name;
        std::vector<std::string> categories; // distinct observed, sorted
    };
    struct OutputScaling {
        double mean = 0.0;
        double stddev = 1.0;
    };

    FittedTransform() = default; // empty; fit() or from_json_string() populate

    static FittedTransform fit(const LabeledTable& train_rows, bool standardize);

    Dataset apply(const LabeledTable& rows) const;

    bool standardize() const { return standardize_; }
    const std::vector<NumericColumn>& numeric_columns() const { return numeric_; }
    const std::vector<CategoricalColumn>& categorical_columns() const { return categorical_; }
    /// Output columns removed for zero training variance under standardization.
    const std::vector<std::string>& dropped_columns() const { return dropped_; }
    /// Names of the retained output columns, in matrix order.
    const std::vector<std::string>& output_names() const { return output_names_; }
    const std::vector<OutputScaling>& scalings() const { return scalings_; }

    std::string to_json_string() const;
    static FittedTransform from_json_string(const std::string& json_text);
    void save(const std::string& path) const;
    static FittedTransform load(const std::string& path);

private:
    /// Encodes one table into the pre-drop, pre-scaling matrix.
    std::vector<double> encode_row(const std::vector<const Column*>& columns, std::size_t row) const;
    std::vector<const Column*> match_columns(const LabeledTable& rows) const;
    std::vector<std::string> raw_output_names() const;

    bool standardize_ = false;
    std::vector<NumericColumn> numeric_;
    std::vector<CategoricalColumn> categorical_;
    std::vector<std::size_t> kept_outputs_;  // indices into the raw encoded row
    std::vector<std::string> output_names_;  // names of kept outputs
    std::vector<std::string> dropped_;
    std::vector<OutputScaling> scalings_; // per kept output; identity when !standardize_
};

/// Spec-level names for the two transform operations.
FittedTransform fit_transform_spec(const LabeledTable& train_rows, bool standardize);
Dataset apply_transform(const FittedTransform& spec, const LabeledTable& rows);

} // namespace netprice
