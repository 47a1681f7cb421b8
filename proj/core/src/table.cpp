#include "netprice/table.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "netprice/errors.hpp"

namespace netprice {

std::string_view missing_reason_name(MissingReason reason) {
    switch (reason) {
        case MissingReason::Empty: return "empty";
        case MissingReason::NullSentinel: return "null-sentinel";
        case MissingReason::PrivacySuppressed: return "privacy-suppressed";
        case MissingReason::Unparseable: return "unparseable";
    }
    return "unknown";
}

std::string_view column_kind_name(ColumnKind kind) {
    return kind == ColumnKind::Numeric ? "numeric" : "categorical";
}

std::string_view label_source_name(LabelSource source) {
    return source == LabelSource::Public ? "public" : "private";
}

ColumnSpec::ColumnSpec(std::vector<ColumnSpecEntry> entries) : entries_(std::move(entries)) {
    std::unordered_set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.name.empty()) throw ConfigError("column-spec entry with empty name");
        if (!seen.insert(e.name).second)
            throw ConfigError("column-spec declares '" + e.name + "' twice");
    }
}

ColumnSpec ColumnSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open column-spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

ColumnSpec ColumnSpec::parse_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("column-spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ConfigError("column-spec must be a JSON list");
    std::vector<ColumnSpecEntry> entries;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("name") || !item.contains("kind"))
            throw ConfigError("column-spec entries need {name, kind}");
        ColumnSpecEntry entry;
        entry.name = item.at("name").get<std::string>();
        const std::string kind = item.at("kind").get<std::string>();
        if (kind == "numeric") {
            entry.kind = ColumnKind::Numeric;
        } else if (kind == "categorical") {
            entry.kind = ColumnKind::Categorical;
        } else {
            throw ConfigError("column kind must be \"numeric\" or \"categorical\", got \"" + kind + "\"");
        }
        entries.push_back(std::move(entry));
    }
    return ColumnSpec(std::move(entries));
}

ColumnSpec ColumnSpec::defaults() {
    return ColumnSpec({
        {"COSTT4_A", ColumnKind::Numeric},
        {"CONTROL", ColumnKind::Categorical},
        {"TUITIONFEE_IN", ColumnKind::Numeric},
        {"TUITIONFEE_OUT", ColumnKind::Numeric},
        {"YEAR", ColumnKind::Numeric},
    });
}

std::optional<ColumnKind> ColumnSpec::kind_of(const std::string& name) const {
    for (const auto& e : entries_) {
        if (e.name == name) return e.kind;
    }
    return std::nullopt;
}

std::vector<std::string> ColumnSpec::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

const Column* RawTable::find(const std::string& name) const {
    for (const auto& c : columns) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

void RawTable::add_column(Column column) {
    if (has_column(column.name))
        throw SchemaError("duplicate column name: " + column.name);
    if (!columns.empty() && column.cells.size() != n_rows)
        throw SchemaError("column '" + column.name + "' has " +
                          std::to_string(column.cells.size()) + " cells, table has " +
                          std::to_string(n_rows) + " rows");
    if (columns.empty()) n_rows = column.cells.size();
    columns.push_back(std::move(column));
}

LabeledTable LabeledTable::select_rows(std::span<const std::size_t> indices) const {
    LabeledTable out;
    out.table.provenance = table.provenance;
    out.table.n_rows = indices.size();
    for (const auto& column : table.columns) {
        Column selected;
        selected.name = column.name;
        selected.kind = column.kind;
        selected.cells.reserve(indices.size());
        for (std::size_t i : indices) selected.cells.push_back(column.cells.at(i));
        out.table.columns.push_back(std::move(selected));
    }
    out.label.reserve(indices.size());
    out.label_source.reserve(indices.size());
    for (std::size_t i : indices) {
        out.label.push_back(label.at(i));
        out.label_source.push_back(label_source.at(i));
    }
    return out;
}

} // namespace netprice
