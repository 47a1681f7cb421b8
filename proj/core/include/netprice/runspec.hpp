#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netprice/grid.hpp"
#include "netprice/ingest.hpp"
#include "netprice/model.hpp"
#include "netprice/table.hpp"
#include "netprice/tuning.hpp"

namespace netprice {

/// Declarative description of one benchmark run: inputs, schema, label
/// policy, split protocol, per-estimator grids, validators, and output
/// locations. Loaded from versioned JSON; relative paths resolve against
/// the spec file's directory.
struct RunSpec {
    int spec_version = 1;
    std::vector<SourceFile> inputs;
    std::string column_spec_path; // empty -> built-in default columns
    ingest::LabelPolicy label_policy = ingest::LabelPolicy::Combined;
    double split_ratio = 0.7;
    std::uint64_t seed = 42;
    bool standardize_features = false;

    /// Estimators to run, in report order, each with its grid.
    std::vector<std::pair<EstimatorKind, ParamGrid>> estimators;

    bool run_tvs = false;
    double inner_ratio = 0.75;
    bool run_cv = false;
    std::size_t cv_k = 3;

    std::string out_dir = "out";
    std::size_t importance_repeats = 5;
    double overfit_threshold = 0.05;
    unsigned jobs = 1;

    static RunSpec load(const std::string& path);
    static RunSpec parse_json(const std::string& json_text, const std::string& base_dir);

    ColumnSpec column_spec() const;

    /// Canonical output locations under out_dir.
    std::string snapshot_path() const;
    std::string ingest_report_path() const;
    std::string eval_report_path() const;
    std::string transform_path() const;
    std::string comparison_json_path() const;
    std::string comparison_text_path() const;
    std::string models_dir() const;
    std::string model_path(EstimatorKind kind, ValidatorKind validator) const;
    std::string importance_path(const std::string& model_stem, bool text) const;
};

} // namespace netprice
