#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netprice/dataset.hpp"
#include "netprice/table.hpp"
#include "netprice/transform.hpp"

namespace netprice {

/// Round-half-up partition size for the train side.
std::size_t train_partition_size(std::size_t n, double ratio);

/// Seeded shuffle-split of row indices 0..n-1 into (train, test).
/// Both partitions must be non-empty.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(std::size_t n, double ratio, std::uint64_t seed);

/// Outer train/test split, already transformed. The transform is fit on the
/// train partition only and applied to both sides.
struct SplitPair {
    Dataset train;
    Dataset test;
    double ratio = 0.0;
    std::uint64_t seed = 0;
    FittedTransform transform;
};

SplitPair train_test_split(const LabeledTable& data, double ratio, std::uint64_t seed,
                           bool standardize = false);

} // namespace netprice
