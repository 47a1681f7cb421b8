#include "netprice/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "netprice/errors.hpp"

namespace netprice::ingest {

ColumnKind effective_kind(const ColumnSpec& schema, const std::string& name) {
    if (auto declared = schema.kind_of(name)) return *declared;
    if (name == kPublicLabelColumn || name == kPrivateLabelColumn) return ColumnKind::Numeric;
    return ColumnKind::Categorical;
}

RawTable concat_years(const std::vector<RawTable>& tables) {
    if (tables.empty()) throw SchemaError("concat_years: no input tables");

    std::vector<std::size_t> order(tables.size());
    std::iota(order.begin(), order.end(), 0);
    auto year_of = [&](std::size_t i) {
        const Column* year = tables[i].find("YEAR");
        if (year == nullptr) throw SchemaError("concat_years: input table lacks a YEAR column");
        if (!year->cells.empty() && !year->cells.front().is_numeric())
            throw SchemaError("concat_years: YEAR column has non-numeric cells");
        // Year also lives in provenance; prefer it so empty tables still sort.
        return tables[i].provenance.empty() ? 0 : tables[i].provenance.front().year;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return year_of(a) < year_of(b); });

    // Union of columns in first-appearance order over the sorted inputs,
    // checking that shared names agree on kind.
    std::vector<Column> merged;
    std::unordered_map<std::string, std::size_t> position;
    std::size_t total_rows = 0;
    for (std::size_t i : order) total_rows += tables[i].n_rows;
    for (std::size_t i : order) {
        for (const auto& column : tables[i].columns) {
            auto it = position.find(column.name);
            if (it == position.end()) {
                position.emplace(column.name, merged.size());
                Column fresh{column.name, column.kind, {}};
                fresh.cells.reserve(total_rows);
                merged.push_back(std::move(fresh));
            } else if (merged[it->second].kind != column.kind) {
                throw SchemaError("column '" + column.name +
                                  "' declared with conflicting kinds across years");
            }
        }
    }

    RawTable out;
    out.n_rows = total_rows;
    for (std::size_t i : order) {
        const RawTable& t = tables[i];
        for (auto& m : merged) {
            const Column* src = t.find(m.name);
            if (src != nullptr) {
                m.cells.insert(m.cells.end(), src->cells.begin(), src->cells.end());
            } else {
                m.cells.insert(m.cells.end(), t.n_rows, CellValue::missing(MissingReason::Empty));
            }
        }
        out.provenance.insert(out.provenance.end(), t.provenance.begin(), t.provenance.end());
    }
    out.columns = std::move(merged);
    return out;
}

std::string_view label_policy_name(LabelPolicy policy) {
    switch (policy) {
        case LabelPolicy::Combined: return "combined";
        case LabelPolicy::PublicOnly: return "public_only";
        case LabelPolicy::PrivateOnly: return "private_only";
    }
    return "combined";
}

LabelPolicy label_policy_from_name(const std::string& name) {
    if (name == "combined") return LabelPolicy::Combined;
    if (name == "public_only") return LabelPolicy::PublicOnly;
    if (name == "private_only") return LabelPolicy::PrivateOnly;
    throw ConfigError("unknown label policy: \"" + name + "\"");
}

BuildLabeledResult build_labeled(const RawTable& table,
                                 const std::vector<std::string>& feature_columns) {
    const Column* pub = table.find(kPublicLabelColumn);
    const Column* priv = table.find(kPrivateLabelColumn);
    if (pub == nullptr || priv == nullptr)
        throw SchemaError("build_labeled: table needs both NPT4_PUB and NPT4_PRIV columns");

    std::vector<const Column*> features;
    features.reserve(feature_columns.size());
    for (const auto& name : feature_columns) {
        if (name == kPublicLabelColumn || name == kPrivateLabelColumn)
            throw ConfigError("label column '" + name + "' cannot be used as a feature");
        const Column* c = table.find(name);
        if (c == nullptr) throw SchemaError("feature column '" + name + "' not found in table");
        features.push_back(c);
    }

    BuildLabeledResult result;
    result.rows_in = table.n_rows;
    std::vector<std::size_t> kept;
    kept.reserve(table.n_rows);
    for (std::size_t r = 0; r < table.n_rows; ++r) {
        double label = 0.0;
        LabelSource source = LabelSource::Public;
        if (pub->cells[r].is_numeric()) {
            label = pub->cells[r].number();
        } else if (priv->cells[r].is_numeric()) {
            label = priv->cells[r].number();
            source = LabelSource::Private;
        } else {
            ++result.dropped_no_label;
            continue;
        }
        if (label < 0.0) {
            ++result.dropped_negative_label;
            continue;
        }
        kept.push_back(r);
        result.labeled.label.push_back(label);
        result.labeled.label_source.push_back(source);
    }
    if (kept.empty())
        throw FitError("build_labeled: no rows carry a usable net-price label");

    result.labeled.table.n_rows = kept.size();
    result.labeled.table.provenance = table.provenance;
    for (const Column* src : features) {
        Column out{src->name, src->kind, {}};
        out.cells.reserve(kept.size());
        for (std::size_t r : kept) out.cells.push_back(src->cells[r]);
        result.labeled.table.columns.push_back(std::move(out));
    }
    return result;
}

LabeledTable filter_by_policy(const LabeledTable& labeled, LabelPolicy policy) {
    if (policy == LabelPolicy::Combined) return labeled;
    const LabelSource wanted =
        policy == LabelPolicy::PublicOnly ? LabelSource::Public : LabelSource::Private;
    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < labeled.n_rows(); ++r) {
        if (labeled.label_source[r] == wanted) kept.push_back(r);
    }
    return labeled.select_rows(kept);
}

SparseColumnReport filter_sparse_columns(const RawTable& table,
                                         const std::vector<std::string>& candidates,
                                         double max_missing_fraction) {
    SparseColumnReport report;
    for (const auto& name : candidates) {
        const Column* c = table.find(name);
        if (c == nullptr) throw SchemaError("column '" + name + "' not found in table");
        std::size_t missing = 0;
        for (const auto& cell : c->cells) {
            if (cell.is_missing()) ++missing;
        }
        const double fraction =
            table.n_rows == 0 ? 0.0 : static_cast<double>(missing) / static_cast<double>(table.n_rows);
        if (fraction > max_missing_fraction) {
            report.dropped.push_back(name);
        } else {
            report.kept.push_back(name);
        }
    }
    return report;
}

namespace {

nlohmann::ordered_json cell_to_json(const CellValue& cell) {
    if (cell.is_numeric()) return cell.number();
    if (cell.is_text()) return cell.str();
    return nlohmann::ordered_json{{"missing", std::string(missing_reason_name(cell.reason()))}};
}

CellValue cell_from_json(const nlohmann::json& value, ColumnKind kind) {
    if (value.is_number()) return CellValue::numeric(value.get<double>());
    if (value.is_string()) return kind == ColumnKind::Numeric
                                      ? parse_cell(value.get<std::string>(), kind)
                                      : CellValue::text(value.get<std::string>());
    if (value.is_object() && value.contains("missing")) {
        const std::string reason = value.at("missing").get<std::string>();
        if (reason == "empty") return CellValue::missing(MissingReason::Empty);
        if (reason == "null-sentinel") return CellValue::missing(MissingReason::NullSentinel);
        if (reason == "privacy-suppressed")
            return CellValue::missing(MissingReason::PrivacySuppressed);
        if (reason == "unparseable") return CellValue::missing(MissingReason::Unparseable);
        throw SchemaError("snapshot has unknown missing reason: " + reason);
    }
    throw SchemaError("snapshot cell is neither value nor missing marker");
}

} // namespace

std::string labeled_to_json_string(const LabeledTable& labeled) {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-snapshot";
    doc["version"] = 1;
    auto provenance = nlohmann::ordered_json::array();
    for (const auto& src : labeled.table.provenance)
        provenance.push_back({{"path", src.path}, {"year", src.year}});
    doc["provenance"] = std::move(provenance);
    auto columns = nlohmann::ordered_json::array();
    for (const auto& column : labeled.table.columns) {
        nlohmann::ordered_json col;
        col["name"] = column.name;
        col["kind"] = std::string(column_kind_name(column.kind));
        auto cells = nlohmann::ordered_json::array();
        for (const auto& cell : column.cells) cells.push_back(cell_to_json(cell));
        col["cells"] = std::move(cells);
        columns.push_back(std::move(col));
    }
    doc["columns"] = std::move(columns);
    doc["label"] = labeled.label;
    auto sources = nlohmann::ordered_json::array();
    for (LabelSource s : labeled.label_source) sources.push_back(std::string(label_source_name(s)));
    doc["label_source"] = std::move(sources);
    return doc.dump(2) + "\n";
}

LabeledTable labeled_from_json_string(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("snapshot is not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "netprice-snapshot")
        throw SchemaError("not a netprice snapshot file");

    LabeledTable out;
    for (const auto& src : doc.value("provenance", nlohmann::json::array()))
        out.table.provenance.push_back({src.at("path").get<std::string>(), src.at("year").get<int>()});
    out.label = doc.at("label").get<std::vector<double>>();
    for (const auto& s : doc.at("label_source")) {
        out.label_source.push_back(s.get<std::string>() == "public" ? LabelSource::Public
                                                                    : LabelSource::Private);
    }
    out.table.n_rows = out.label.size();
    for (const auto& col : doc.at("columns")) {
        Column column;
        column.name = col.at("name").get<std::string>();
        column.kind =
            col.at("kind").get<std::string>() == "numeric" ? ColumnKind::Numeric : ColumnKind::Categorical;
        for (const auto& cell : col.at("cells")) column.cells.push_back(cell_from_json(cell, column.kind));
        if (column.cells.size() != out.table.n_rows)
            throw SchemaError("snapshot column '" + column.name + "' row count mismatch");
        out.table.columns.push_back(std::move(column));
    }
    if (out.label_source.size() != out.label.size())
        throw SchemaError("snapshot label_source length mismatch");
    return out;
}

void save_labeled(const LabeledTable& labeled, const std::string& path) {
    std::ofstream outfile(path, std::ios::binary);
    if (!outfile) throw IoError("cannot write snapshot: " + path);
    outfile << labeled_to_json_string(labeled);
    if (!outfile) throw IoError("failed writing snapshot: " + path);
}

LabeledTable load_labeled(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return labeled_from_json_string(buffer.str());
}

} // namespace netprice::ingest
