#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netprice/csv.hpp"
#include "netprice/table.hpp"

namespace netprice::ingest {

inline constexpr const char* kPublicLabelColumn = "NPT4_PUB";
inline constexpr const char* kPrivateLabelColumn = "NPT4_PRIV";

/// Parse kind for a header name: declared kind if present, numeric for the
/// two label columns, categorical otherwise (undeclared columns are only
/// carried until selection, so text is a safe default).
ColumnKind effective_kind(const ColumnSpec& schema, const std::string& name);

/// Row-wise concatenation over the union of column names, ordered by first
/// appearance after a stable sort of the inputs by year. Columns absent from
/// a source table are filled with Missing(empty) for its rows.
RawTable concat_years(const std::vector<RawTable>& tables);

enum class LabelPolicy { Combined, PublicOnly, PrivateOnly };

std::string_view label_policy_name(LabelPolicy policy);
LabelPolicy label_policy_from_name(const std::string& name);

struct BuildLabeledResult {
    LabeledTable labeled;
    std::size_t rows_in = 0;
    std::size_t dropped_no_label = 0;
    std::size_t dropped_negative_label = 0;
};

/// Coalesces the label (NPT4_PUB first, then NPT4_PRIV), drops unlabeled
/// rows, and restricts the table to `feature_columns` in the given order.
BuildLabeledResult build_labeled(const RawTable& table,
                                 const std::vector<std::string>& feature_columns);

/// Keeps only rows whose label came from the requested institution type.
LabeledTable filter_by_policy(const LabeledTable& labeled, LabelPolicy policy);

struct SparseColumnReport {
    std::vector<std::string> kept;
    std::vector<std::string> dropped; // missing fraction above the threshold
};

/// Splits candidate feature columns by missingness. Columns that are mostly
/// missing would be mostly imputation, so they are dropped with a warning.
SparseColumnReport filter_sparse_columns(const RawTable& table,
                                         const std::vector<std::string>& candidates,
                                         double max_missing_fraction = 0.5);

/// Columnar snapshot of a labeled table (the ingest -> features handoff).
void save_labeled(const LabeledTable& labeled, const std::string& path);
LabeledTable load_labeled(const std::string& path);
std::string labeled_to_json_string(const LabeledTable& labeled);
LabeledTable labeled_from_json_string(const std::string& json_text);

} // namespace netprice::ingest
