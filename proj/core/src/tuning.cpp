#include "netprice/tuning.hpp"

#include <chrono>
#include <limits>

#include "netprice/errors.hpp"
#include "netprice/metrics.hpp"
#include "netprice/parallel.hpp"
#include "netprice/random.hpp"
#include "netprice/split.hpp"

namespace netprice {

std::string_view validator_name(ValidatorKind validator) {
    return validator == ValidatorKind::TVS ? "TVS" : "CV";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    const auto elapsed = Clock::now() - start;
    const double sec = std::chrono::duration<double>(elapsed).count();
    return sec > 0.0 ? sec : 1e-9; // fit_time is positive by contract
}

/// Fills the model seed for candidates that do not pin one, keeping the
/// winner's refit identical across validators given the same seed.
ParamMap with_seed(const ParamMap& candidate, std::uint64_t seed) {
    ParamMap out = candidate;
    if (!out.has("seed")) out.set_int("seed", static_cast<std::int64_t>(seed));
    return out;
}

std::size_t pick_winner(const std::vector<CandidateScore>& scores) {
    std::size_t best = 0;
    double best_rmse = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i].rmse < best_rmse) {
            best_rmse = scores[i].rmse;
            best = i;
        }
    }
    return best;
}

TunedResult finish(EstimatorKind kind, const Dataset& train, std::vector<CandidateScore> scores,
                   ValidatorKind validator, double k_or_ratio, Clock::time_point start) {
    const std::size_t winner = pick_winner(scores);
    TunedResult result;
    result.best_params = scores[winner].params;
    result.best_model = fit_model(kind, train, result.best_params);
    result.validation_scores = std::move(scores);
    result.validator = validator;
    result.k_or_ratio = k_or_ratio;
    result.fit_time_sec = seconds_since(start);
    return result;
}

} // namespace

TunedResult tvs_fit(EstimatorKind kind, const ParamGrid& grid, const Dataset& train,
                    double inner_ratio, std::uint64_t seed) {
    const auto start = Clock::now();
    if (!(inner_ratio > 0.0 && inner_ratio < 1.0))
        throw SplitError("inner ratio must lie in (0, 1)");

    auto [inner_train_idx, inner_val_idx] =
        split_indices(train.n_rows(), inner_ratio, rng::derive_seed(seed, 0x7153));
    const Dataset inner_train = train.select_rows(inner_train_idx);
    const Dataset inner_val = train.select_rows(inner_val_idx);

    const std::vector<ParamMap> candidates = expand_grid(grid);
    std::vector<CandidateScore> scores(candidates.size());
    par::parallel_for(candidates.size(), [&](std::size_t i) {
        const ParamMap params = with_seed(candidates[i], seed);
        const Model model = fit_model(kind, inner_train, params);
        scores[i] = {params, rmse(inner_val.labels(), model.predict_all(inner_val))};
    });

    return finish(kind, train, std::move(scores), ValidatorKind::TVS, inner_ratio, start);
}

std::vector<std::vector<std::size_t>> cv_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw FoldError("cross-validation needs k >= 2");
    if (k > n) throw FoldError("cross-validation needs k <= n rows (k=" + std::to_string(k) +
                               ", n=" + std::to_string(n) + ")");
    // Contiguous chunks of a seeded permutation; the first n%k folds get one
    // extra row, so sizes differ by at most one.
    const std::vector<std::size_t> order = rng::shuffled_indices(n, seed);
    std::vector<std::vector<std::size_t>> folds(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t offset = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(offset),
                        order.begin() + static_cast<std::ptrdiff_t>(offset + size));
        offset += size;
    }
    return folds;
}

TunedResult cv_fit(EstimatorKind kind, const ParamGrid& grid, const Dataset& train, std::size_t k,
                   std::uint64_t seed) {
    const auto start = Clock::now();
    const std::size_t n = train.n_rows();
    const std::vector<std::vector<std::size_t>> folds =
        cv_folds(n, k, rng::derive_seed(seed, 0xf01d));

    std::vector<Dataset> fold_train(k), fold_val(k);
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_idx;
        train_idx.reserve(n - folds[f].size());
        for (std::size_t g = 0; g < k; ++g) {
            if (g == f) continue;
            train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
        }
        fold_val[f] = train.select_rows(folds[f]);
        fold_train[f] = train.select_rows(train_idx);
    }

    const std::vector<ParamMap> candidates = expand_grid(grid);
    std::vector<double> cell_rmse(candidates.size() * k, 0.0);
    par::parallel_for(candidates.size() * k, [&](std::size_t cell) {
        const std::size_t i = cell / k;
        const std::size_t f = cell % k;
        const ParamMap params = with_seed(candidates[i], seed);
        const Model model = fit_model(kind, fold_train[f], params);
        cell_rmse[cell] = rmse(fold_val[f].labels(), model.predict_all(fold_val[f]));
    });

    std::vector<CandidateScore> scores(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double mean = 0.0;
        for (std::size_t f = 0; f < k; ++f) mean += cell_rmse[i * k + f];
        mean /= static_cast<double>(k);
        scores[i] = {with_seed(candidates[i], seed), mean};
    }

    return finish(kind, train, std::move(scores), ValidatorKind::CV, static_cast<double>(k), start);
}

} // namespace netprice
