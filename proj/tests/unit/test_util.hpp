#pragma once

#include <cmath>
#include <vector>

#include "mct/rng.hpp"
#include "mct/sample.hpp"

namespace mct::testutil {

inline std::vector<double> normal_values(std::size_t n, Stream& rng) {
    std::vector<double> out(n);
    for (double& v : out) v = rng.normal();
    return out;
}

/// Integer-valued draws on {0,...,levels-1}; forces ties.
inline std::vector<double> tied_values(std::size_t n, int levels, Stream& rng) {
    std::vector<double> out(n);
    for (double& v : out) v = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
    return out;
}

inline std::vector<Pair> normal_pairs(std::size_t n, Stream& rng, double correlation = 0.3) {
    std::vector<Pair> out(n);
    const double b = std::sqrt(1.0 - correlation * correlation);
    for (auto& p : out) {
        const double shared = rng.normal();
        p.x1 = shared;
        p.x2 = correlation * shared + b * rng.normal();
    }
    return out;
}

inline std::vector<Pair> tied_pairs(std::size_t n, int levels, Stream& rng) {
    std::vector<Pair> out(n);
    for (auto& p : out) {
        p.x1 = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
        p.x2 = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
    }
    return out;
}

}  // namespace mct::testutil
