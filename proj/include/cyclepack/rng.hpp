#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cyclepack {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based randomness: every draw is a pure function of (seed, key),
// so a single edge indicator can be recomputed without materializing the
// rest of its stream, and disjoint key sets give independent values.
namespace counter_rng {

inline std::uint64_t at(std::uint64_t seed, std::uint64_t key) {
    return mix64(mix64(seed ^ 0x8e91c9a2ae10b2bbULL) ^ mix64(key));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform(std::uint64_t seed, std::uint64_t key) {
    return static_cast<double>(at(seed, key) >> 11) * 0x1.0p-53;
}

// Triangular index of an unordered vertex pair, u != v.
inline std::uint64_t pair_key(std::uint64_t u, std::uint64_t v) {
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

// Key substream for round-indexed edge reveals. Round 0 is the stream of
// the materialized random part; rounds >= 1 are fresh.
inline std::uint64_t round_key(std::uint64_t round, std::uint64_t key) {
    return mix64(round * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL) ^ key;
}

}  // namespace counter_rng

// Small sequential generator derived from the counter stream; used for
// seeded shuffles and tie-breaks. Deterministic across platforms.
class SeqRng {
public:
    explicit SeqRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return counter_rng::at(seed_, counter_++); }

    // Uniform in [0, n); n > 0.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace cyclepack
