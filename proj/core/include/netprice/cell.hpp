#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <variant>

#include "netprice/errors.hpp"

namespace netprice {

/// Why a cell carries no value. The scorecard files mark suppressed data
/// with literal sentinels; everything else that fails to parse is kept as
/// a distinct reason so the ingest report can break warnings down.
enum class MissingReason { Empty, NullSentinel, PrivacySuppressed, Unparseable };

std::string_view missing_reason_name(MissingReason reason);

/// One parsed cell: a finite number, verbatim text, or a tagged missing value.
class CellValue {
public:
    static CellValue numeric(double value) {
        if (!std::isfinite(value)) throw Error("numeric cell must be finite");
        return CellValue(value);
    }
    static CellValue text(std::string value) { return CellValue(std::move(value)); }
    static CellValue missing(MissingReason reason) { return CellValue(reason); }

    bool is_numeric() const { return std::holds_alternative<double>(value_); }
    bool is_text() const { return std::holds_alternative<std::string>(value_); }
    bool is_missing() const { return std::holds_alternative<MissingReason>(value_); }

    double number() const { return std::get<double>(value_); }
    const std::string& str() const { return std::get<std::string>(value_); }
    MissingReason reason() const { return std::get<MissingReason>(value_); }

    bool operator==(const CellValue&) const = default;

private:
    explicit CellValue(double v) : value_(v) {}
    explicit CellValue(std::string v) : value_(std::move(v)) {}
    explicit CellValue(MissingReason r) : value_(r) {}

    std::variant<double, std::string, MissingReason> value_;
};

} // namespace netprice
