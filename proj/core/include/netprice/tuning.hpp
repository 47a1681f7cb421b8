#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/grid.hpp"
#include "netprice/model.hpp"

namespace netprice {

enum class ValidatorKind { TVS, CV };

std::string_view validator_name(ValidatorKind validator);

struct CandidateScore {
    ParamMap params;
    double rmse = 0.0; // validation RMSE (mean over folds for CV)
};

/// Outcome of one grid search: the winning candidate (ties go to the first
/// in expansion order), its refit on the full training partition, every
/// candidate's validation score, and the wall-clock cost of the whole
/// procedure including the final refit.
struct TunedResult {
    ParamMap best_params;
    Model best_model;
    std::vector<CandidateScore> validation_scores;
    double fit_time_sec = 0.0;
    ValidatorKind validator = ValidatorKind::TVS;
    double k_or_ratio = 0.0;
};

/// Seeded k-fold assignment of rows 0..n-1: disjoint, covering, sizes
/// differing by at most one.
std::vector<std::vector<std::size_t>> cv_folds(std::size_t n, std::size_t k, std::uint64_t seed);

/// Train-validation split: one seeded inner holdout scores every candidate.
/// Candidates without an explicit "seed" key fit with `seed`, so tvs_fit and
/// cv_fit refit identical winners into identical models.
TunedResult tvs_fit(EstimatorKind kind, const ParamGrid& grid, const Dataset& train,
                    double inner_ratio, std::uint64_t seed);

/// k-fold cross-validation: seeded fold assignment (sizes differ by at most
/// one); each candidate's score is the mean held-out RMSE over folds.
TunedResult cv_fit(EstimatorKind kind, const ParamGrid& grid, const Dataset& train, std::size_t k,
                   std::uint64_t seed);

} // namespace netprice
