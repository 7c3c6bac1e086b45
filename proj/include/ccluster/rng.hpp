#pragma once

#include <cstdint>

namespace ccluster {

// splitmix64. Chosen over std::mt19937 so the determinism contract does not
// depend on a library implementation: the full generator fits in a dozen
// lines and is reproducible in any language.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

// One mixing step, used to fold tree-path bits into a seed so every node of a
// recursive split gets an independent, scheduling-free stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 g(seed ^ (salt * 0x9e3779b97f4a7c15ull + 1));
    return g.next();
}

}  // namespace ccluster
