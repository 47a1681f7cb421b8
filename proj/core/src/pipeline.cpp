#include "netprice/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "netprice/csv.hpp"
#include "netprice/errors.hpp"
#include "netprice/metrics.hpp"
#include "netprice/overfit.hpp"
#include "netprice/parallel.hpp"
#include "netprice/random.hpp"
#include "netprice/split.hpp"
#include "json_util.hpp"

namespace fs = std::filesystem;

namespace netprice {

namespace {

constexpr std::uint64_t kImportanceStream = 0x1a9;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir + ": " + ec.message());
}

std::size_t estimator_index(EstimatorKind kind) {
    for (std::size_t i = 0; i < std::size(kEstimatorOrder); ++i) {
        if (kEstimatorOrder[i] == kind) return i;
    }
    return 0;
}

std::string format_metric(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << value;
    return out.str();
}

std::string format_time(double seconds) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << seconds;
    return out.str();
}

} // namespace

IngestOutcome cmd_ingest(const RunSpec& spec, std::ostream* status) {
    const ColumnSpec schema = spec.column_spec();
    par::set_max_jobs(spec.jobs);

    // Per-file loads are independent; counters merge afterwards.
    std::vector<RawTable> tables(spec.inputs.size());
    std::vector<ParseCounters> counters(spec.inputs.size());
    par::parallel_for(spec.inputs.size(), [&](std::size_t i) {
        tables[i] = load_table(spec.inputs[i].path, spec.inputs[i].year, schema, counters[i]);
    });
    ParseCounters warnings;
    for (const auto& c : counters) warnings.merge(c);

    const RawTable combined = ingest::concat_years(tables);
    for (const auto& name : schema.names()) {
        if (!combined.has_column(name))
            throw SchemaError("declared column '" + name + "' is missing from every input file");
    }

    const ingest::SparseColumnReport sparse = ingest::filter_sparse_columns(combined, schema.names());
    if (sparse.kept.empty())
        throw FitError("every declared feature column exceeds the missingness limit");

    ingest::BuildLabeledResult built = ingest::build_labeled(combined, sparse.kept);
    const LabeledTable labeled = ingest::filter_by_policy(built.labeled, spec.label_policy);
    if (labeled.n_rows() == 0)
        throw FitError("label policy '" + std::string(ingest::label_policy_name(spec.label_policy)) +
                       "' keeps no rows");

    IngestOutcome outcome;
    outcome.rows_read = built.rows_in;
    outcome.rows_labeled = labeled.n_rows();
    outcome.dropped_no_label = built.dropped_no_label;
    outcome.dropped_negative_label = built.dropped_negative_label;
    outcome.dropped_by_policy = built.labeled.n_rows() - labeled.n_rows();
    for (const MissingReason reason :
         {MissingReason::Empty, MissingReason::NullSentinel, MissingReason::PrivacySuppressed,
          MissingReason::Unparseable})
        outcome.warnings[std::string(missing_reason_name(reason))] = warnings.count(reason);
    outcome.columns_dropped_missingness = sparse.dropped;
    outcome.snapshot_path = spec.snapshot_path();
    outcome.report_path = spec.ingest_report_path();

    ensure_dir(spec.out_dir);
    detail::write_file(outcome.snapshot_path, ingest::labeled_to_json_string(labeled), "snapshot");

    nlohmann::ordered_json report;
    report["format"] = "netprice-ingest-report";
    report["version"] = 1;
    report["rows_read"] = outcome.rows_read;
    report["rows_labeled"] = outcome.rows_labeled;
    report["rows_dropped_no_label"] = outcome.dropped_no_label;
    report["rows_dropped_negative_label"] = outcome.dropped_negative_label;
    report["rows_dropped_by_policy"] = outcome.dropped_by_policy;
    report["warnings"] = outcome.warnings;
    report["columns_dropped_missingness"] = outcome.columns_dropped_missingness;
    report["label_policy"] = std::string(ingest::label_policy_name(spec.label_policy));
    auto inputs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < spec.inputs.size(); ++i)
        inputs.push_back({{"path", spec.inputs[i].path},
                          {"year", spec.inputs[i].year},
                          {"rows", tables[i].n_rows}});
    report["inputs"] = std::move(inputs);
    detail::write_file(outcome.report_path, report.dump(2) + "\n", "ingest report");

    if (status != nullptr) {
        *status << "ingest: read " << outcome.rows_read << " rows, labeled "
                << outcome.rows_labeled << " (dropped " << outcome.dropped_no_label
                << " without label, " << outcome.dropped_negative_label << " negative, "
                << outcome.dropped_by_policy << " by policy)\n";
        for (const auto& name : sparse.dropped)
            *status << "ingest: dropped mostly-missing column " << name << "\n";
        *status << "ingest: wrote " << outcome.snapshot_path << "\n";
    }
    return outcome;
}

bool TrainOutcome::all_failed() const {
    return std::none_of(rows.begin(), rows.end(), [](const EvalRow& row) { return row.ok; });
}

namespace {

nlohmann::ordered_json eval_rows_to_json(const TrainOutcome& outcome) {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-eval-report";
    doc["version"] = 1;
    doc["seed"] = outcome.seed;
    doc["dataset"] = {{"n_train", outcome.n_train},
                      {"n_test", outcome.n_test},
                      {"n_features", outcome.n_features}};
    auto rows = nlohmann::ordered_json::array();
    for (const EvalRow& row : outcome.rows) {
        nlohmann::ordered_json r;
        r["algorithm"] = std::string(estimator_name(row.kind));
        r["validator"] = std::string(validator_name(row.validator));
        if (row.ok) {
            r["status"] = "ok";
            r["r2"] = row.test_r2;
            r["rmse"] = row.test_rmse;
            r["train_r2"] = row.train_r2;
            r["r2_gap"] = row.r2_gap;
            r["overfit_flagged"] = row.overfit_flagged;
            r["fit_time_sec"] = row.fit_time_sec;
            r["grid_size"] = row.grid_size;
            r["best_params"] = detail::param_map_to_json(row.best_params);
            r["model"] = row.model_file;
        } else {
            r["status"] = "failed";
            r["error"] = row.error;
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

} // namespace

TrainOutcome cmd_train(const RunSpec& spec, std::ostream* status) {
    par::set_max_jobs(spec.jobs);
    if (!fs::exists(spec.snapshot_path())) cmd_ingest(spec, status);
    const LabeledTable labeled = ingest::load_labeled(spec.snapshot_path());

    const SplitPair split =
        train_test_split(labeled, spec.split_ratio, spec.seed, spec.standardize_features);
    ensure_dir(spec.models_dir());
    detail::write_file(spec.transform_path(), split.transform.to_json_string(), "transform spec");

    TrainOutcome outcome;
    outcome.n_train = split.train.n_rows();
    outcome.n_test = split.test.n_rows();
    outcome.n_features = split.train.n_features();
    outcome.seed = spec.seed;
    outcome.report_path = spec.eval_report_path();

    std::vector<ValidatorKind> validators;
    if (spec.run_tvs) validators.push_back(ValidatorKind::TVS);
    if (spec.run_cv) validators.push_back(ValidatorKind::CV);

    for (const ValidatorKind validator : validators) {
        for (const auto& [kind, grid] : spec.estimators) {
            EvalRow row;
            row.kind = kind;
            row.validator = validator;
            row.grid_size = grid.size();
            try {
                // Same per-estimator seed for both validators, so a shared
                // winner refits to the same model under TVS and CV.
                const std::uint64_t est_seed = rng::derive_seed(spec.seed, estimator_index(kind));
                TunedResult tuned =
                    validator == ValidatorKind::TVS
                        ? tvs_fit(kind, grid, split.train, spec.inner_ratio, est_seed)
                        : cv_fit(kind, grid, split.train, spec.cv_k, est_seed);
                const OverfitReport diag = overfit_check(tuned.best_model, split.train, split.test,
                                                         spec.overfit_threshold);
                row.test_r2 = diag.test.r2;
                row.test_rmse = diag.test.rmse;
                row.train_r2 = diag.train.r2;
                row.r2_gap = diag.r2_gap;
                row.overfit_flagged = diag.flagged;
                row.fit_time_sec = tuned.fit_time_sec;
                row.best_params = tuned.best_params;
                const std::string path = spec.model_path(kind, validator);
                tuned.best_model.save(path);
                row.model_file = fs::path(path).lexically_relative(spec.out_dir).string();
                row.ok = true;
                if (status != nullptr) {
                    *status << "train: " << estimator_name(kind) << "/" << validator_name(validator)
                            << "  R2 " << format_metric(row.test_r2) << "  RMSE "
                            << format_metric(row.test_rmse) << "  fit " << format_time(row.fit_time_sec)
                            << "s  (grid " << row.grid_size << ")"
                            << (row.overfit_flagged ? "  [overfit: train-test R2 gap " +
                                                          format_metric(row.r2_gap) + "]"
                                                    : "")
                            << "\n";
                }
            } catch (const Error& e) {
                row.ok = false;
                row.error = e.what();
                if (status != nullptr) {
                    *status << "train: " << estimator_name(kind) << "/" << validator_name(validator)
                            << "  FAILED: " << row.error << "\n";
                }
            }
            outcome.rows.push_back(std::move(row));
        }
    }

    detail::write_file(outcome.report_path, eval_rows_to_json(outcome).dump(2) + "\n",
                       "eval report");
    if (status != nullptr) *status << "train: wrote " << outcome.report_path << "\n";
    return outcome;
}

ComparisonReport make_comparison(std::vector<ComparisonRow> rows) {
    if (rows.empty()) throw NoRowsError("comparison needs at least one successful row");

    ComparisonReport report;
    report.rows = std::move(rows);

    std::vector<std::size_t> order(report.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto ranked = [&](auto less) {
        std::vector<std::size_t> sorted = order;
        std::stable_sort(sorted.begin(), sorted.end(), less);
        std::vector<RankEntry> entries;
        entries.reserve(sorted.size());
        for (std::size_t i : sorted)
            entries.push_back({report.rows[i].algorithm, report.rows[i].validator});
        return entries;
    };

    report.accuracy_ranking = ranked([&](std::size_t a, std::size_t b) {
        if (report.rows[a].r2 != report.rows[b].r2) return report.rows[a].r2 > report.rows[b].r2;
        return report.rows[a].rmse < report.rows[b].rmse;
    });
    report.rmse_ranking = ranked(
        [&](std::size_t a, std::size_t b) { return report.rows[a].rmse < report.rows[b].rmse; });
    report.time_ranking = ranked([&](std::size_t a, std::size_t b) {
        return report.rows[a].fit_time_sec < report.rows[b].fit_time_sec;
    });
    return report;
}

ComparisonReport cmd_compare(const std::string& eval_report_path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::slurp_file(eval_report_path, "eval report"));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("eval report is not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "netprice-eval-report")
        throw ConfigError("not a netprice eval report: " + eval_report_path);

    std::vector<ComparisonRow> rows;
    for (const auto& r : doc.at("rows")) {
        if (r.value("status", "") != "ok") continue;
        ComparisonRow row;
        row.algorithm = r.at("algorithm").get<std::string>();
        row.validator = r.at("validator").get<std::string>();
        row.r2 = r.at("r2").get<double>();
        row.rmse = r.at("rmse").get<double>();
        row.fit_time_sec = r.at("fit_time_sec").get<double>();
        if (r.contains("best_params")) row.best_params = detail::param_map_from_json(r.at("best_params"));
        rows.push_back(std::move(row));
    }
    return make_comparison(std::move(rows));
}

std::string ComparisonReport::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["format"] = "netprice-comparison";
    doc["version"] = 1;
    auto table = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        table.push_back({{"algorithm", row.algorithm},
                         {"validator", row.validator},
                         {"r2", row.r2},
                         {"rmse", row.rmse},
                         {"fit_time_sec", row.fit_time_sec},
                         {"best_params", detail::param_map_to_json(row.best_params)}});
    doc["rows"] = std::move(table);
    auto ranking_json = [](const std::vector<RankEntry>& entries) {
        auto out = nlohmann::ordered_json::array();
        for (const auto& e : entries)
            out.push_back({{"algorithm", e.algorithm}, {"validator", e.validator}});
        return out;
    };
    doc["accuracy_ranking"] = ranking_json(accuracy_ranking);
    doc["rmse_ranking"] = ranking_json(rmse_ranking);
    doc["time_ranking"] = ranking_json(time_ranking);
    if (!rmse_ranking.empty())
        doc["best_by_rmse"] = {{"algorithm", rmse_ranking.front().algorithm},
                               {"validator", rmse_ranking.front().validator}};
    return doc.dump(2) + "\n";
}

std::string ComparisonReport::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(11) << "Algorithm" << std::setw(11) << "Validator" << std::right
        << std::setw(9) << "R2" << std::setw(12) << "RMSE" << std::setw(14) << "Fit time (s)"
        << "\n";
    for (const auto& row : rows) {
        out << std::left << std::setw(11) << row.algorithm << std::setw(11) << row.validator
            << std::right << std::setw(9) << format_metric(row.r2) << std::setw(12)
            << format_metric(row.rmse) << std::setw(14) << format_time(row.fit_time_sec) << "\n";
    }
    auto print_ranking = [&](const char* label, const std::vector<RankEntry>& entries,
                             const char* sep) {
        out << label;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i > 0) out << sep;
            out << entries[i].algorithm << "/" << entries[i].validator;
        }
        out << "\n";
    };
    out << "\n";
    print_ranking("Accuracy ranking (R2, best first):  ", accuracy_ranking, " > ");
    print_ranking("RMSE ranking (lowest first):        ", rmse_ranking, " < ");
    print_ranking("Fit time ranking (fastest first):   ", time_ranking, " < ");
    return out.str();
}

ImportanceReport cmd_importance(const std::string& model_path, const RunSpec& spec,
                                std::ostream* status) {
    par::set_max_jobs(spec.jobs);
    const Model model = Model::load(model_path);
    if (!fs::exists(spec.snapshot_path()))
        throw IoError("snapshot not found (run ingest first): " + spec.snapshot_path());
    const LabeledTable labeled = ingest::load_labeled(spec.snapshot_path());
    const SplitPair split =
        train_test_split(labeled, spec.split_ratio, spec.seed, spec.standardize_features);
    if (split.test.n_features() != model.n_features())
        throw ShapeError("model width " + std::to_string(model.n_features()) +
                         " does not match snapshot features " +
                         std::to_string(split.test.n_features()));

    const ImportanceReport report = permutation_importance(
        model, split.test, spec.importance_repeats, rng::derive_seed(spec.seed, kImportanceStream));

    ensure_dir(spec.out_dir);
    const std::string stem = fs::path(model_path).stem().string();
    detail::write_file(spec.importance_path(stem, false), report.to_json_string(),
                       "importance report");
    detail::write_file(spec.importance_path(stem, true), report.to_text(), "importance report");
    if (status != nullptr) {
        *status << report.to_text();
        *status << "importance: wrote " << spec.importance_path(stem, false) << "\n";
    }
    return report;
}

} // namespace netprice
