#pragma once

#include <span>
#include <vector>

namespace mct {

/// Mid-ranks of `values` in input order: tied values receive the average of
/// the rank positions they occupy. Ties are detected by exact equality.
/// Throws std::invalid_argument on empty input.
std::vector<double> mid_ranks(std::span<const double> values);

/// Pooled and within-group mid-ranks for a two-group layout.
struct RankSet {
    std::vector<double> pooled_g1;    // ranks of group 1 among all pooled values
    std::vector<double> pooled_g2;    // ranks of group 2 among all pooled values
    std::vector<double> internal_g1;  // ranks of group 1 within itself
    std::vector<double> internal_g2;  // ranks of group 2 within itself
};

/// Both groups must be non-empty.
RankSet two_group_ranks(std::span<const double> g1, std::span<const double> g2);

}  // namespace mct
