#include "netprice/split.hpp"

#include <cmath>

#include "netprice/errors.hpp"
#include "netprice/random.hpp"

namespace netprice {

std::size_t train_partition_size(std::size_t n, double ratio) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(std::size_t n, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw SplitError("split ratio must lie in (0, 1)");
    if (n < 2) throw SplitError("cannot split fewer than 2 rows");
    const std::size_t n_train = train_partition_size(n, ratio);
    if (n_train == 0 || n_train == n)
        throw SplitError("split ratio leaves an empty partition for n=" + std::to_string(n));
    std::vector<std::size_t> order = rng::shuffled_indices(n, seed);
    std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    return {std::move(train), std::move(test)};
}

SplitPair train_test_split(const LabeledTable& data, double ratio, std::uint64_t seed,
                           bool standardize) {
    auto [train_idx, test_idx] = split_indices(data.n_rows(), ratio, seed);
    const LabeledTable train_rows = data.select_rows(train_idx);
    const LabeledTable test_rows = data.select_rows(test_idx);

    SplitPair pair;
    pair.ratio = ratio;
    pair.seed = seed;
    pair.transform = FittedTransform::fit(train_rows, standardize);
    pair.train = pair.transform.apply(train_rows);
    pair.test = pair.transform.apply(test_rows);
    return pair;
}

} // namespace netprice
