#include "mct/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mct {

std::vector<double> mid_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) {
        throw std::invalid_argument("mid_ranks: empty input");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // block occupies rank positions i+1 .. j (1-based)
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

RankSet two_group_ranks(std::span<const double> g1, std::span<const double> g2) {
    if (g1.empty() || g2.empty()) {
        throw std::invalid_argument("two_group_ranks: empty group");
    }
    std::vector<double> pooled;
    pooled.reserve(g1.size() + g2.size());
    pooled.insert(pooled.end(), g1.begin(), g1.end());
    pooled.insert(pooled.end(), g2.begin(), g2.end());
    const std::vector<double> pooled_ranks = mid_ranks(pooled);

    RankSet out;
    out.pooled_g1.assign(pooled_ranks.begin(),
                         pooled_ranks.begin() + static_cast<std::ptrdiff_t>(g1.size()));
    out.pooled_g2.assign(pooled_ranks.begin() + static_cast<std::ptrdiff_t>(g1.size()),
                         pooled_ranks.end());
    out.internal_g1 = mid_ranks(g1);
    out.internal_g2 = mid_ranks(g2);
    return out;
}

}  // namespace mct
