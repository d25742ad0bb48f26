#pragma once

#include <cmath>
#include <cstdint>

namespace failprob {

// Standard normal CDF.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

// Standard normal quantile function (Wichura's AS 241, double precision).
double norm_ppf(double p);

// log(2*pi)
inline constexpr double kLog2Pi = 1.8378770664093454836;

// SplitMix64 step; used to derive stream keys and seed generators.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace failprob
