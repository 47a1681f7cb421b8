#include "netprice/transform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "netprice/errors.hpp"

namespace netprice {

namespace {

double median_of_sorted(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

} // namespace

FittedTransform FittedTransform::fit(const LabeledTable& train_rows, bool standardize) {
    if (train_rows.n_rows() == 0) throw FitError("cannot fit a transform on zero rows");

    FittedTransform t;
    t.standardize_ = standardize;
    for (const auto& column : train_rows.table.columns) {
        if (column.kind == ColumnKind::Numeric) {
            std::vector<double> observed;
            observed.reserve(column.cells.size());
            for (const auto& cell : column.cells) {
                if (cell.is_numeric()) observed.push_back(cell.number());
            }
            if (observed.empty())
                throw FitError("numeric column '" + column.name + "' has no observed values");
            std::sort(observed.begin(), observed.end());
            t.numeric_.push_back({column.name, median_of_sorted(observed)});
        } else {
            std::set<std::string> observed;
            for (const auto& cell : column.cells) {
                if (cell.is_text()) observed.insert(cell.str());
            }
            if (observed.empty())
                throw FitError("categorical column '" + column.name + "' has no observed values");
            t.categorical_.push_back(
                {column.name, std::vector<std::string>(observed.begin(), observed.end())});
        }
    }

    const std::vector<std::string> raw_names = t.raw_output_names();
    const std::size_t raw_width = raw_names.size();

    if (!standardize) {
        t.kept_outputs_.resize(raw_width);
        for (std::size_t i = 0; i < raw_width; ++i) t.kept_outputs_[i] = i;
        t.output_names_ = raw_names;
        t.scalings_.assign(raw_width, OutputScaling{0.0, 1.0});
        return t;
    }

    // Standardization statistics come from the imputed, encoded training
    // matrix; zero-variance outputs are dropped rather than divided by zero.
    const auto columns = t.match_columns(train_rows);
    const std::size_t n = train_rows.n_rows();
    std::vector<double> sum(raw_width, 0.0), sumsq(raw_width, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::vector<double> row = t.encode_row(columns, r);
        for (std::size_t c = 0; c < raw_width; ++c) {
            sum[c] += row[c];
            sumsq[c] += row[c] * row[c];
        }
    }
    for (std::size_t c = 0; c < raw_width; ++c) {
        const double mean = sum[c] / static_cast<double>(n);
        double var = sumsq[c] / static_cast<double>(n) - mean * mean;
        if (var < 0.0) var = 0.0;
        const double stddev = std::sqrt(var);
        if (stddev == 0.0) {
            t.dropped_.push_back(raw_names[c]);
        } else {
            t.kept_outputs_.push_back(c);
            t.output_names_.push_back(raw_names[c]);
            t.scalings_.push_back({mean, stddev});
        }
    }
    if (t.kept_outputs_.empty())
        throw FitError("standardization dropped every feature column (all constant)");
    return t;
}

std::vector<std::string> FittedTransform::raw_output_names() const {
    std::vector<std::string> names;
    for (const auto& nc : numeric_) names.push_back(nc.name);
    for (const auto& cc : categorical_) {
        for (const auto& category : cc.categories) names.push_back(cc.name + "=" + category);
    }
    return names;
}

std::vector<const Column*> FittedTransform::match_columns(const LabeledTable& rows) const {
    std::vector<const Column*> columns;
    columns.reserve(numeric_.size() + categorical_.size());
    for (const auto& nc : numeric_) {
        const Column* c = rows.table.find(nc.name);
        if (c == nullptr) throw SchemaError("transform expects numeric column '" + nc.name + "'");
        columns.push_back(c);
    }
    for (const auto& cc : categorical_) {
        const Column* c = rows.table.find(cc.name);
        if (c == nullptr)
            throw SchemaError("transform expects categorical column '" + cc.name + "'");
        columns.push_back(c);
    }
    return columns;
}

std::vector<double> FittedTransform::encode_row(const std::vector<const Column*>& columns,
                                                std::size_t row) const {
    std::vector<double> out;
    out.reserve(kept_outputs_.empty() ? columns.size() : kept_outputs_.size());
    std::size_t slot = 0;
    for (std::size_t i = 0; i < numeric_.size(); ++i, ++slot) {
        const CellValue& cell = columns[slot]->cells[row];
        out.push_back(cell.is_numeric() ? cell.number() : numeric_[i].impute_value);
    }
    for (std::size_t i = 0; i < categorical_.size(); ++i, ++slot) {
        const CellValue& cell = columns[slot]->cells[row];
        const auto& categories = categorical_[i].categories;
        // Unseen or missing categories encode as all zeros.
        std::size_t hot = categories.size();
        if (cell.is_text()) {
            auto it = std::lower_bound(categories.begin(), categories.end(), cell.str());
            if (it != categories.end() && *it == cell.str())
                hot = static_cast<std::size_t>(it - categories.begin());
        }
        for (std::size_t k = 0; k < categories.size(); ++k) out.push_back(k == hot ? 1.0 : 0.0);
    }
    return out;
}

Dataset FittedTransform::apply(const LabeledTable& rows) const {
    const auto columns = match_columns(rows);
    const std::size_t n = rows.n_rows();
    Dataset out(n, kept_outputs_.size());
    out.set_feature_names(output_names_);
    for (std::size_t r = 0; r < n; ++r) {
        const std::vector<double> raw = encode_row(columns, r);
        for (std::size_t c = 0; c < kept_outputs_.size(); ++c) {
            double v = raw[kept_outputs_[c]];
            if (standardize_) v = (v - scalings_[c].mean) / scalings_[c].stddev;
            out.set(r, c, v);
        }
        out.set_label(r, rows.label[r]);
    }
    return out;
}

std::string FittedTransform::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-transform";
    doc["version"] = 1;
    doc["standardize"] = standardize_;
    auto numeric = nlohmann::ordered_json::array();
    for (const auto& nc : numeric_)
        numeric.push_back({{"name", nc.name}, {"impute", nc.impute_value}});
    doc["numeric"] = std::move(numeric);
    auto categorical = nlohmann::ordered_json::array();
    for (const auto& cc : categorical_)
        categorical.push_back({{"name", cc.name}, {"categories", cc.categories}});
    doc["categorical"] = std::move(categorical);
    doc["dropped"] = dropped_;
    auto outputs = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < output_names_.size(); ++c) {
        nlohmann::ordered_json o;
        o["name"] = output_names_[c];
        o["raw_index"] = kept_outputs_[c];
        if (standardize_) {
            o["mean"] = scalings_[c].mean;
            o["stddev"] = scalings_[c].stddev;
        }
        outputs.push_back(std::move(o));
    }
    doc["outputs"] = std::move(outputs);
    return doc.dump(2) + "\n";
}

FittedTransform FittedTransform::from_json_string(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("transform spec is not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "netprice-transform")
        throw SchemaError("not a netprice transform file");
    FittedTransform t;
    t.standardize_ = doc.at("standardize").get<bool>();
    for (const auto& nc : doc.at("numeric"))
        t.numeric_.push_back({nc.at("name").get<std::string>(), nc.at("impute").get<double>()});
    for (const auto& cc : doc.at("categorical"))
        t.categorical_.push_back({cc.at("name").get<std::string>(),
                                  cc.at("categories").get<std::vector<std::string>>()});
    t.dropped_ = doc.at("dropped").get<std::vector<std::string>>();
    for (const auto& o : doc.at("outputs")) {
        t.output_names_.push_back(o.at("name").get<std::string>());
        t.kept_outputs_.push_back(o.at("raw_index").get<std::size_t>());
        if (t.standardize_) {
            t.scalings_.push_back({o.at("mean").get<double>(), o.at("stddev").get<double>()});
        } else {
            t.scalings_.push_back({0.0, 1.0});
        }
    }
    return t;
}

void FittedTransform::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write transform spec: " + path);
    out << to_json_string();
}

FittedTransform FittedTransform::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open transform spec: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

FittedTransform fit_transform_spec(const LabeledTable& train_rows, bool standardize) {
    return FittedTransform::fit(train_rows, standardize);
}

Dataset apply_transform(const FittedTransform& spec, const LabeledTable& rows) {
    return spec.apply(rows);
}

} // namespace netprice
