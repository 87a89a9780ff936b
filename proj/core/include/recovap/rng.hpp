#pragma once

#include <cstdint>
#include <random>

namespace recovap {

// Deterministic RNG wrapper. std::uniform_int_distribution is
// implementation-defined, so bounded draws are done by hand to keep
// generator output byte-identical for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps it unbiased.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit span
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % range);
    }

    // Bernoulli with probability num/den.
    bool next_bool(std::uint64_t num, std::uint64_t den) {
        return static_cast<std::uint64_t>(next_int(0, static_cast<std::int64_t>(den) - 1)) < num;
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace recovap
