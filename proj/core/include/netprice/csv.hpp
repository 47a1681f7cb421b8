#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "netprice/table.hpp"

namespace netprice {

/// Tally of missing cells by reason across one or more loads.
/// Unparseable counts double as the ingest warning counter.
struct ParseCounters {
    std::array<std::size_t, 4> by_reason{}; // indexed by MissingReason

    std::size_t& operator[](MissingReason reason) {
        return by_reason[static_cast<std::size_t>(reason)];
    }
    std::size_t count(MissingReason reason) const {
        return by_reason[static_cast<std::size_t>(reason)];
    }
    void merge(const ParseCounters& other) {
        for (std::size_t i = 0; i < by_reason.size(); ++i) by_reason[i] += other.by_reason[i];
    }
};

/// Classifies one raw cell. Total: every input maps to exactly one value.
/// "", "NULL" and "PrivacySuppressed" (case-sensitive) are missing; numeric
/// columns parse decimal text and degrade to Missing(unparseable).
CellValue parse_cell(std::string_view text, ColumnKind kind);

/// Reads one per-year scorecard CSV. Keeps every header column (kinds come
/// from the schema; undeclared columns load as categorical) and appends a
/// YEAR column filled with `year`. The two net-price label columns are
/// always parsed numeric.
RawTable load_table(const std::string& path, int year, const ColumnSpec& schema);
RawTable load_table(const std::string& path, int year, const ColumnSpec& schema,
                    ParseCounters& counters);

} // namespace netprice
