#include "netprice/overfit.hpp"

#include <json.hpp>

#include "netprice/errors.hpp"

namespace netprice {

OverfitReport overfit_check(const Model& model, const Dataset& train, const Dataset& test,
                            double threshold) {
    if (train.n_rows() == 0 || test.n_rows() == 0)
        throw ShapeError("overfit_check needs non-empty train and test sets");
    if (train.n_features() != test.n_features())
        throw ShapeError("overfit_check: train and test widths differ");

    OverfitReport report;
    report.train = evaluate(model, train);
    report.test = evaluate(model, test);
    report.r2_gap = report.train.r2 - report.test.r2;
    report.threshold = threshold;
    report.flagged = report.r2_gap > threshold;
    return report;
}

std::string OverfitReport::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-overfit";
    doc["version"] = 1;
    doc["train"] = {{"rmse", train.rmse}, {"r2", train.r2}, {"n", train.n}};
    doc["test"] = {{"rmse", test.rmse}, {"r2", test.r2}, {"n", test.n}};
    doc["r2_gap"] = r2_gap;
    doc["threshold"] = threshold;
    doc["flagged"] = flagged;
    return doc.dump(2) + "\n";
}

} // namespace netprice
