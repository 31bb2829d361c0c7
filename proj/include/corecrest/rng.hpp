// Seedable random number generation with cross-platform determinism.
//
// The core engine is std::mt19937_64, whose output sequence is pinned by the
// standard. Bounded draws use rejection sampling instead of
// std::uniform_int_distribution, whose output is implementation-defined.
// Stream derivation (e.g. one RNG per shuffle stratum) goes through
// splitmix64 so derived streams are independent of scheduling order.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace corecrest {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Unbiased draw from [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below(0)");
        // Largest multiple of bound representable in 64 bits.
        const std::uint64_t rem = (0ULL - bound) % bound;  // 2^64 mod bound
        const std::uint64_t limit = 0ULL - rem;            // 2^64 - rem
        std::uint64_t r;
        do {
            r = eng_();
        } while (limit != 0 && r >= limit);
        return r % bound;
    }

    // Deterministic child stream: independent of the order streams are used.
    static Rng derive(std::uint64_t master_seed, std::uint64_t stream) {
        return Rng(splitmix64(splitmix64(master_seed) ^ splitmix64(stream)));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace corecrest
