#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netprice/cell.hpp"

namespace netprice {

enum class ColumnKind { Numeric, Categorical };

std::string_view column_kind_name(ColumnKind kind);

/// One declared feature column.
struct ColumnSpecEntry {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
};

/// The declared schema: which columns to keep and how to parse them.
/// Order here fixes the feature order everywhere downstream.
class ColumnSpec {
public:
    ColumnSpec() = default;
    explicit ColumnSpec(std::vector<ColumnSpecEntry> entries);

    static ColumnSpec load(const std::string& path);
    static ColumnSpec parse_json(const std::string& json_text);

    /// The shipped default: attendance cost, ownership type, tuition, year.
    static ColumnSpec defaults();

    const std::vector<ColumnSpecEntry>& entries() const { return entries_; }
    std::optional<ColumnKind> kind_of(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::vector<ColumnSpecEntry> entries_;
};

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Categorical;
    std::vector<CellValue> cells;
};

/// (source path, academic year) of one ingested file.
struct SourceFile {
    std::string path;
    int year = 0;
};

/// String-celled columnar table with per-cell missingness; the post-ingest
/// form of the scorecard CSVs. Columns always have exactly n_rows cells and
/// unique names; ops that build tables enforce this.
struct RawTable {
    std::vector<Column> columns;
    std::size_t n_rows = 0;
    std::vector<SourceFile> provenance;

    const Column* find(const std::string& name) const;
    bool has_column(const std::string& name) const { return find(name) != nullptr; }

    /// Appends a column, enforcing name uniqueness and the row count.
    void add_column(Column column);
};

enum class LabelSource { Public, Private };

std::string_view label_source_name(LabelSource source);

/// Feature columns plus the coalesced net-price label. Labels are complete
/// and non-negative by construction (build_labeled drops offending rows).
struct LabeledTable {
    RawTable table; // feature columns only, in column-spec order
    std::vector<double> label;            // USD per year
    std::vector<LabelSource> label_source;

    std::size_t n_rows() const { return label.size(); }

    LabeledTable select_rows(std::span<const std::size_t> indices) const;
};

} // namespace netprice
