#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace netprice::rng {

/// SplitMix64 generator. Small, fast, and fixed by definition, so seeded
/// results are reproducible across platforms and standard libraries
/// (std::mt19937 + std::shuffle are not).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // Mask-and-reject on the smallest covering power of two.
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        std::uint64_t x;
        do {
            x = next() & mask;
        } while (x >= n);
        return x;
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Deterministic child seed for an independent stream (per tree, per fold,
/// per feature...). Same (master, stream) always gives the same seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 g(master ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL)));
    return g.next();
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(master, a), b);
}

/// Fisher-Yates shuffle with an explicit generator.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(gen.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

/// Seeded permutation of 0..n-1.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    SplitMix64 gen(seed);
    shuffle(idx, gen);
    return idx;
}

} // namespace netprice::rng
