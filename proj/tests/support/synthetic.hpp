#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/random.hpp"

namespace netprice::testing {

/// Standard normal draw via Box-Muller (kept off std::normal_distribution
/// so sequences are identical everywhere).
double gaussian(rng::SplitMix64& gen);

/// Random dataset with uniform features in [0, 1) and labels from an
/// affine signal plus optional noise.
Dataset random_dataset(std::size_t n_rows, std::size_t n_features, std::uint64_t seed,
                       double noise_sigma = 1.0);

/// Random dataset with pure-noise labels (no signal at all).
Dataset noise_dataset(std::size_t n_rows, std::size_t n_features, std::uint64_t seed);

struct ScorecardFiles {
    std::vector<std::string> paths;
    std::vector<int> years;
    std::size_t rows_written = 0;
    std::size_t rows_unlabeled = 0; // rows with both label cells missing
};

/// Writes per-year scorecard-style CSVs under `dir`. The net price follows
///   0.6*COSTT4_A - 1500*[CONTROL=3] + 0.2*TUITIONFEE_IN + N(0, noise_sigma)
/// and lands in NPT4_PUB for public rows (CONTROL=1), NPT4_PRIV otherwise.
/// A small share of cells carries the real files' missingness sentinels.
ScorecardFiles write_scorecard_files(const std::string& dir, std::size_t total_rows,
                                     std::uint64_t seed, double noise_sigma = 500.0,
                                     std::size_t n_years = 3);

/// Run-spec JSON matching write_scorecard_files output. Grids are small but
/// non-trivial; the caller may post-edit the returned JSON text.
std::string scorecard_runspec_json(const ScorecardFiles& files, const std::string& out_dir,
                                   std::uint64_t seed);

} // namespace netprice::testing
