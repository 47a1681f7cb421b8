#include "netprice/csv.hpp"

#include <charconv>
#include <fstream>
#include <unordered_set>

#include "netprice/errors.hpp"
#include "netprice/ingest.hpp"

namespace netprice {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// Splits one CSV record. Handles quoted fields with embedded commas and
/// doubled-quote escapes; quoted fields may not span lines.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (in_quotes) throw RowError("unterminated quoted field", line_no);
    fields.push_back(std::move(current));
    return fields;
}

} // namespace

CellValue parse_cell(std::string_view text, ColumnKind kind) {
    if (text.empty()) return CellValue::missing(MissingReason::Empty);
    if (text == "NULL") return CellValue::missing(MissingReason::NullSentinel);
    if (text == "PrivacySuppressed") return CellValue::missing(MissingReason::PrivacySuppressed);
    if (kind == ColumnKind::Categorical) return CellValue::text(std::string(text));

    std::string_view t = trim(text);
    if (t.empty()) return CellValue::missing(MissingReason::Empty);
    double value = 0.0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || end != t.data() + t.size() || !std::isfinite(value))
        return CellValue::missing(MissingReason::Unparseable);
    return CellValue::numeric(value);
}

RawTable load_table(const std::string& path, int year, const ColumnSpec& schema) {
    ParseCounters counters;
    return load_table(path, year, schema, counters);
}

RawTable load_table(const std::string& path, int year, const ColumnSpec& schema,
                    ParseCounters& counters) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("file has no header row: " + path);
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3); // UTF-8 BOM
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_record(line, 1);
    std::unordered_set<std::string> seen;
    for (const auto& name : header) {
        if (name.empty()) throw SchemaError("empty header name in " + path);
        if (!seen.insert(name).second)
            throw SchemaError("duplicate header name '" + name + "' in " + path);
    }
    if (seen.contains("YEAR"))
        throw SchemaError("input file already has a YEAR column: " + path);

    RawTable table;
    table.provenance.push_back({path, year});
    std::vector<ColumnKind> kinds(header.size());
    table.columns.reserve(header.size() + 1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        kinds[c] = ingest::effective_kind(schema, header[c]);
        table.columns.push_back({header[c], kinds[c], {}});
    }

    std::size_t line_no = 1;
    std::size_t n_rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break; // trailing newline
        const std::vector<std::string> fields = split_record(line, line_no);
        if (fields.size() != header.size())
            throw RowError("expected " + std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()),
                           line_no);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            CellValue cell = parse_cell(fields[c], kinds[c]);
            if (cell.is_missing()) ++counters[cell.reason()];
            table.columns[c].cells.push_back(std::move(cell));
        }
        ++n_rows;
    }
    table.n_rows = n_rows;

    Column year_col{"YEAR", ColumnKind::Numeric, {}};
    year_col.cells.assign(n_rows, CellValue::numeric(static_cast<double>(year)));
    table.columns.push_back(std::move(year_col));
    return table;
}

} // namespace netprice
