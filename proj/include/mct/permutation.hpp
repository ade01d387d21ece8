#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mct/rng.hpp"
#include "mct/sample.hpp"
#include "mct/statistics.hpp"

namespace mct {

enum class Scheme {
    sign_flip,       // swap the two components of each complete pair with prob 1/2
    pooled_shuffle,  // random permutation of the pooled one-sided values
    combined,        // sign flips on the pairs plus a pooled shuffle, same resample
};

struct PermutationPlan {
    Scheme scheme = Scheme::sign_flip;
    int resamples = 1000;  // B
    std::uint64_t seed = 0;
};

/// Statistic over the three blocks of a sample (complete pairs, first-only,
/// second-only values). Component statistics ignore the blocks they do not
/// use.
template <class F>
concept BlockStatistic =
    requires(F f, std::span<const Pair> c, std::span<const double> a, std::span<const double> b) {
        { f(c, a, b) } -> std::convertible_to<StatValue>;
    };

/// out[g] = pairs[g] with components swapped where flips[g] != 0.
void apply_sign_flips(std::span<const Pair> pairs, std::span<const std::uint8_t> flips,
                      std::vector<Pair>& out);

/// Each pair independently swapped with probability 1/2.
std::vector<Pair> sign_flip_resample(std::span<const Pair> complete, Stream& rng);

/// Uniform permutation of the pooled values; the first n_1 go to group 1.
/// The pooled multiset is preserved by construction.
std::pair<std::vector<double>, std::vector<double>> pooled_shuffle_resample(
    std::span<const double> first_only, std::span<const double> second_only, Stream& rng);

namespace detail {

inline constexpr std::uint64_t kResampleSalt = 0x7265736d706c65ULL;

void fisher_yates(std::span<double> values, Stream& rng);
void flip_into(std::span<const Pair> src, std::vector<Pair>& dst, Stream& rng);

}  // namespace detail

struct PermutationResult {
    PTriple p;                         // (1 + count) / (B + 1) in each direction
    double observed = 0.0;             // statistic on the unpermuted data
    bool observed_degenerate = false;  // recorded for diagnostics; ordering still works
    int resamples = 0;
};

/// Monte-Carlo permutation p-values of `statistic` under `plan.scheme`.
///
/// Each resample b draws from its own stream derived from (plan.seed, b), so
/// the result is bit-identical no matter how the loop would be scheduled.
/// Infinite (degenerate) values order by the extended real line; with a
/// constant resampling distribution every direction yields p = 1.
template <BlockStatistic StatFn>
PermutationResult permutation_test(StatFn&& statistic, const PairedSample& sample,
                                   const PermutationPlan& plan) {
    if (plan.resamples < 1) {
        throw std::invalid_argument("permutation_test: needs at least one resample");
    }
    const bool flip = plan.scheme == Scheme::sign_flip || plan.scheme == Scheme::combined;
    const bool shuffle =
        plan.scheme == Scheme::pooled_shuffle || plan.scheme == Scheme::combined;

    const StatValue observed =
        statistic(std::span<const Pair>(sample.complete()),
                  std::span<const double>(sample.first_only()),
                  std::span<const double>(sample.second_only()));
    const double t_obs = observed.value;
    const double abs_obs = std::fabs(t_obs);

    std::vector<Pair> work_pairs(sample.complete().begin(), sample.complete().end());
    std::vector<double> pooled(sample.first_only().begin(), sample.first_only().end());
    pooled.insert(pooled.end(), sample.second_only().begin(), sample.second_only().end());
    const std::vector<double> pooled0 = pooled;
    const std::size_t n1 = sample.n_1();

    long count_ge = 0, count_le = 0, count_abs = 0;
    for (int b = 0; b < plan.resamples; ++b) {
        Stream rng(derive_seed(plan.seed, static_cast<std::uint64_t>(b), detail::kResampleSalt));
        if (flip) {
            detail::flip_into(sample.complete(), work_pairs, rng);
        }
        if (shuffle) {
            pooled = pooled0;  // restart from the original layout; order-independent
            detail::fisher_yates(pooled, rng);
        }
        const StatValue t =
            statistic(std::span<const Pair>(work_pairs),
                      std::span<const double>(pooled.data(), n1),
                      std::span<const double>(pooled.data() + n1, pooled.size() - n1));
        if (t.value >= t_obs) ++count_ge;
        if (t.value <= t_obs) ++count_le;
        if (std::fabs(t.value) >= abs_obs) ++count_abs;
    }

    const double denom = static_cast<double>(plan.resamples) + 1.0;
    PermutationResult out;
    out.p.greater = (1.0 + static_cast<double>(count_ge)) / denom;
    out.p.less = (1.0 + static_cast<double>(count_le)) / denom;
    out.p.two_sided = (1.0 + static_cast<double>(count_abs)) / denom;
    out.observed = t_obs;
    out.observed_degenerate = observed.degenerate;
    out.resamples = plan.resamples;
    return out;
}

template <BlockStatistic StatFn>
double permutation_p(StatFn&& statistic, const PairedSample& sample, const PermutationPlan& plan,
                     Sidedness side) {
    return permutation_test(std::forward<StatFn>(statistic), sample, plan).p.at(side);
}

/// Exact sign-flip p-value over all 2^{n_c} flip patterns (identity
/// included); small-n oracle for the Monte-Carlo path. n_c <= 20.
template <class StatFn>
    requires requires(StatFn f, std::span<const Pair> c) {
        { f(c) } -> std::convertible_to<StatValue>;
    }
double exhaustive_sign_flip_p(StatFn&& statistic, std::span<const Pair> complete,
                              Sidedness side) {
    const std::size_t n = complete.size();
    if (n > 20) {
        throw std::invalid_argument("exhaustive_sign_flip_p: needs n_c <= 20");
    }
    const double t_obs = statistic(complete).value;
    const double abs_obs = std::fabs(t_obs);
    const std::uint64_t patterns = std::uint64_t{1} << n;

    std::vector<Pair> work(complete.begin(), complete.end());
    long count = 0;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        for (std::size_t g = 0; g < n; ++g) {
            work[g] = (mask >> g) & 1 ? Pair{complete[g].x2, complete[g].x1} : complete[g];
        }
        const double t = statistic(std::span<const Pair>(work)).value;
        switch (side) {
            case Sidedness::greater: count += t >= t_obs; break;
            case Sidedness::less: count += t <= t_obs; break;
            case Sidedness::two_sided: count += std::fabs(t) >= abs_obs; break;
        }
    }
    return static_cast<double>(count) / static_cast<double>(patterns);
}

}  // namespace mct
