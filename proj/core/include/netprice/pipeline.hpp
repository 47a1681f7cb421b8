#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "netprice/importance.hpp"
#include "netprice/runspec.hpp"
#include "netprice/tuning.hpp"

namespace netprice {

/// Summary of one ingest run; also written to the JSON ingest report.
struct IngestOutcome {
    std::size_t rows_read = 0;
    std::size_t rows_labeled = 0;
    std::size_t dropped_no_label = 0;
    std::size_t dropped_negative_label = 0;
    std::size_t dropped_by_policy = 0;
    std::map<std::string, std::size_t> warnings; // missing counts by reason
    std::vector<std::string> columns_dropped_missingness;
    std::string snapshot_path;
    std::string report_path;
};

/// Load + concat + select + label, then persist the snapshot and report.
/// Nothing is written if any stage fails.
IngestOutcome cmd_ingest(const RunSpec& spec, std::ostream* status = nullptr);

/// One (algorithm, validator) cell of the benchmark matrix. Each trained
/// model also gets the train-vs-test overfit diagnostic at the spec's
/// threshold.
struct EvalRow {
    EstimatorKind kind = EstimatorKind::Linear;
    ValidatorKind validator = ValidatorKind::TVS;
    bool ok = false;
    std::string error;
    double test_r2 = 0.0;
    double test_rmse = 0.0;
    double train_r2 = 0.0;
    double r2_gap = 0.0;
    bool overfit_flagged = false;
    double fit_time_sec = 0.0;
    ParamMap best_params;
    std::size_t grid_size = 0;
    std::string model_file; // relative to out_dir
};

struct TrainOutcome {
    std::vector<EvalRow> rows;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t n_features = 0;
    std::uint64_t seed = 0;
    std::string report_path;

    bool all_failed() const;
};

/// Tunes, refits and evaluates every enabled (estimator, validator) pair on
/// the outer split, persisting models and the eval report. Runs ingest
/// first when the snapshot is missing. All randomness derives from the
/// spec seed, so reruns reproduce everything except fit times.
TrainOutcome cmd_train(const RunSpec& spec, std::ostream* status = nullptr);

struct ComparisonRow {
    std::string algorithm;
    std::string validator;
    double r2 = 0.0;
    double rmse = 0.0;
    double fit_time_sec = 0.0;
    ParamMap best_params;
};

struct RankEntry {
    std::string algorithm;
    std::string validator;

    bool operator==(const RankEntry&) const = default;
};

/// Table-style comparison with three rankings: accuracy (descending R2,
/// ties to lower RMSE), RMSE (ascending) and fit time (ascending). The R2
/// and RMSE orderings can disagree, so both are reported.
struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::vector<RankEntry> accuracy_ranking;
    std::vector<RankEntry> rmse_ranking;
    std::vector<RankEntry> time_ranking;

    std::string to_json_string() const;
    std::string to_text() const;
};

ComparisonReport make_comparison(std::vector<ComparisonRow> rows);

/// Reads successful rows from an eval report and builds the comparison.
ComparisonReport cmd_compare(const std::string& eval_report_path);

/// Permutation importance of a persisted model on the outer test partition,
/// written as JSON plus a ranked text listing.
ImportanceReport cmd_importance(const std::string& model_path, const RunSpec& spec,
                                std::ostream* status = nullptr);

} // namespace netprice
