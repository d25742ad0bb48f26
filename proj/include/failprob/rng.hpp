#pragma once

#include <cstdint>
#include <random>

#include "failprob/math.hpp"

namespace failprob {

// Seedable stream of draws. Distinct (seed, stream) pairs give independent
// sequences; the same pair always reproduces the same draws. Draw routines
// avoid std::*_distribution so results do not depend on the standard library.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed ^ 0x6a09e667f3bcc908ULL;
        splitmix64(s);
        s ^= stream * 0xd6e8feb86659fd93ULL;
        const std::uint64_t a = splitmix64(s);
        const std::uint64_t b = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        engine_.seed(seq);
    }

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1); safe to feed into quantile transforms.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return norm_ppf(uniform_open()); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo bias is negligible for n << 2^64, but stay exact.
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace failprob
