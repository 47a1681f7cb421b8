#include <doctest.h>

#include <cmath>
#include <limits>

#include "netprice/binning.hpp"
#include "netprice/metrics.hpp"
#include "netprice/tree.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace netprice;
namespace nt = netprice::testing;

namespace {

Dataset step_data() {
    Dataset d(4, 1);
    const double xs[] = {0, 1, 2, 3};
    const double ys[] = {0, 0, 10, 10};
    for (std::size_t r = 0; r < 4; ++r) {
        d.set(r, 0, xs[r]);
        d.set_label(r, ys[r]);
    }
    return d;
}

double train_sse(const TreeModel& tree, const Dataset& data) {
    double sse = 0.0;
    for (std::size_t r = 0; r < data.n_rows(); ++r) {
        const double diff = data.label(r) - tree.predict(data.row(r));
        sse += diff * diff;
    }
    return sse;
}

} // namespace

TEST_CASE("a depth-1 stump splits the step function exactly") {
    const Dataset d = step_data();
    ParamMap params;
    params.set_int("max_depth", 1);
    const BinningSpec bins = compute_bins(d, 32);
    const TreeModel tree = fit_tree(d, params, bins);

    REQUIRE(!tree.nodes().empty());
    const TreeNode& root = tree.nodes()[0];
    CHECK(!root.is_leaf());
    CHECK(root.feature == 0);
    CHECK(root.threshold == doctest::Approx(1.5));
    CHECK(tree.depth() == 1);
    CHECK(tree.predict(std::vector<double>{0.0}) == doctest::Approx(0.0));
    CHECK(tree.predict(std::vector<double>{3.0}) == doctest::Approx(10.0));
    CHECK(train_sse(tree, d) == doctest::Approx(0.0));
}

TEST_CASE("minInfoGain gates the root split") {
    const Dataset d = step_data();
    const BinningSpec bins = compute_bins(d, 32);

    // Var(parent) = 25; the best split leaves zero child variance, gain 25.
    ParamMap blocked;
    blocked.set_int("max_depth", 3);
    blocked.set_real("minInfoGain", 30.0);
    const TreeModel leaf = fit_tree(d, blocked, bins);
    CHECK(leaf.nodes().size() == 1);
    CHECK(leaf.nodes()[0].value == doctest::Approx(5.0));
    CHECK(leaf.nodes()[0].n_train == 4);

    ParamMap infinite;
    infinite.set_real("minInfoGain", std::numeric_limits<double>::infinity());
    const TreeModel constant = fit_tree(d, infinite, bins);
    CHECK(constant.nodes().size() == 1);
    CHECK(constant.predict(std::vector<double>{2.0}) == doctest::Approx(5.0));

    // gain 25 passes a threshold of exactly 25
    ParamMap at_gain;
    at_gain.set_int("max_depth", 1);
    at_gain.set_real("minInfoGain", 25.0);
    CHECK(fit_tree(d, at_gain, bins).nodes().size() == 3);
}

TEST_CASE("tree matches the exhaustive-search oracle on random data") {
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
        rng::SplitMix64 gen(900 + trial);
        const std::size_t n = 5 + gen.below(46);
        const std::size_t d = 1 + gen.below(4);
        const int max_depth = 1 + static_cast<int>(gen.below(3));
        const Dataset data = nt::random_dataset(n, d, 7000 + trial, 0.5);

        const BinningSpec bins = compute_bins(data, 32);
        ParamMap params;
        params.set_int("max_depth", max_depth);
        const TreeModel tree = fit_tree(data, params, bins);
        const double oracle = nt::exhaustive_tree_sse(data, bins, max_depth, 0.0);
        CHECK(train_sse(tree, data) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("tree invariants: depth cap, leaf counts, piecewise constancy") {
    const Dataset data = nt::random_dataset(200, 3, 5, 1.0);
    ParamMap params;
    params.set_int("max_depth", 4);
    const BinningSpec bins = compute_bins(data, 16);
    const TreeModel tree = fit_tree(data, params, bins);

    CHECK(tree.depth() <= 4);
    std::size_t leaf_rows = 0;
    for (const TreeNode& node : tree.nodes()) {
        if (node.is_leaf()) {
            CHECK(node.n_train >= 1);
            leaf_rows += static_cast<std::size_t>(node.n_train);
        }
    }
    CHECK(leaf_rows == data.n_rows()); // leaves partition the training rows

    // two probes that land in the same leaf predict identically
    std::vector<double> a{0.201, 0.5, 0.5};
    std::vector<double> b{0.202, 0.5, 0.5};
    bool same_leaf = true;
    std::size_t i = 0;
    while (!tree.nodes()[i].is_leaf()) {
        const TreeNode& node = tree.nodes()[i];
        const bool la = a[static_cast<std::size_t>(node.feature)] <= node.threshold;
        const bool lb = b[static_cast<std::size_t>(node.feature)] <= node.threshold;
        if (la != lb) {
            same_leaf = false;
            break;
        }
        i = static_cast<std::size_t>(la ? node.left : node.right);
    }
    if (same_leaf) CHECK(tree.predict(a) == tree.predict(b));
}

TEST_CASE("integer row weights behave like duplicated rows") {
    const Dataset base = nt::random_dataset(30, 2, 77, 0.3);
    rng::SplitMix64 gen(5);
    std::vector<double> weights(base.n_rows());
    std::vector<std::size_t> duplicated;
    for (std::size_t r = 0; r < base.n_rows(); ++r) {
        weights[r] = static_cast<double>(gen.below(3)); // 0, 1 or 2 copies
        for (std::size_t c = 0; c < weights[r]; ++c) duplicated.push_back(r);
    }
    REQUIRE(!duplicated.empty());
    const Dataset expanded = base.select_rows(duplicated);

    ParamMap params;
    params.set_int("max_depth", 3);
    const BinningSpec bins = compute_bins(base, 32);
    const TreeModel weighted = fit_tree(base, params, bins, weights);
    const TreeModel duplicated_tree = fit_tree(expanded, params, bins);

    for (std::uint64_t probe = 0; probe < 20; ++probe) {
        rng::SplitMix64 pg(probe);
        const std::vector<double> x{pg.next_double(), pg.next_double()};
        CHECK(weighted.predict(x) == doctest::Approx(duplicated_tree.predict(x)).epsilon(1e-12));
    }

    Dataset one_row(1, 1);
    one_row.set(0, 0, 0.5);
    std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(fit_tree(one_row, params, compute_bins(one_row, 4), bad), Error);
}
