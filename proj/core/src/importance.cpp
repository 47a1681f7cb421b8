#include "netprice/importance.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "netprice/errors.hpp"
#include "netprice/metrics.hpp"
#include "netprice/parallel.hpp"
#include "netprice/random.hpp"

namespace netprice {

ImportanceReport permutation_importance(const Model& model, const Dataset& data,
                                        std::size_t repeats, std::uint64_t seed) {
    if (repeats < 1) throw ConfigError("permutation importance needs repeats >= 1");
    if (data.n_rows() == 0) throw ShapeError("permutation importance needs a non-empty dataset");
    if (data.n_features() != model.n_features())
        throw ShapeError("dataset width does not match the model");

    const double baseline = rmse(data.labels(), model.predict_all(data));

    const std::size_t d = data.n_features();
    std::vector<FeatureImportance> features(d);
    par::parallel_for(d, [&](std::size_t f) {
        Dataset scratch = data; // per-feature copy so features permute independently
        const std::vector<double> original = data.feature_column(f);
        std::vector<double> increases(repeats);
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            std::vector<double> permuted = original;
            rng::SplitMix64 gen(rng::derive_seed(seed, f, rep));
            rng::shuffle(permuted, gen);
            scratch.set_feature_column(f, permuted);
            increases[rep] = rmse(scratch.labels(), model.predict_all(scratch)) - baseline;
        }
        double mean = 0.0;
        for (const double v : increases) mean += v;
        mean /= static_cast<double>(repeats);
        double var = 0.0;
        for (const double v : increases) var += (v - mean) * (v - mean);
        var /= static_cast<double>(repeats);
        FeatureImportance& out = features[f];
        out.name = data.feature_names().empty() ? "f" + std::to_string(f) : data.feature_names()[f];
        out.rmse_increase = mean;
        out.stddev = std::sqrt(var);
    });

    std::stable_sort(features.begin(), features.end(),
                     [](const FeatureImportance& a, const FeatureImportance& b) {
                         return a.rmse_increase > b.rmse_increase;
                     });

    ImportanceReport report;
    report.features = std::move(features);
    report.baseline_rmse = baseline;
    report.repeats = repeats;
    report.seed = seed;
    return report;
}

std::string ImportanceReport::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-importance";
    doc["version"] = 1;
    doc["baseline_rmse"] = baseline_rmse;
    doc["repeats"] = repeats;
    doc["seed"] = seed;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& f : features)
        rows.push_back(
            {{"name", f.name}, {"rmse_increase", f.rmse_increase}, {"stddev", f.stddev}});
    doc["features"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string ImportanceReport::to_text() const {
    std::size_t width = 7;
    for (const auto& f : features) width = std::max(width, f.name.size());
    std::ostringstream out;
    out << "Permutation importance (baseline RMSE " << std::fixed << std::setprecision(4)
        << baseline_rmse << ", " << repeats << " repeats)\n";
    out << std::left << std::setw(static_cast<int>(width) + 2) << "Feature" << std::right
        << std::setw(14) << "RMSE increase" << std::setw(12) << "Stddev" << "\n";
    for (const auto& f : features) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << f.name << std::right
            << std::setw(14) << std::setprecision(4) << f.rmse_increase << std::setw(12)
            << f.stddev << "\n";
    }
    return out.str();
}

} // namespace netprice
