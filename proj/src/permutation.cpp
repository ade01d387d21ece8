#include "mct/permutation.hpp"

namespace mct {

namespace detail {

void fisher_yates(std::span<double> values, Stream& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

void flip_into(std::span<const Pair> src, std::vector<Pair>& dst, Stream& rng) {
    dst.resize(src.size());
    for (std::size_t g = 0; g < src.size(); ++g) {
        dst[g] = rng.bernoulli(0.5) ? Pair{src[g].x2, src[g].x1} : src[g];
    }
}

}  // namespace detail

void apply_sign_flips(std::span<const Pair> pairs, std::span<const std::uint8_t> flips,
                      std::vector<Pair>& out) {
    out.resize(pairs.size());
    for (std::size_t g = 0; g < pairs.size(); ++g) {
        out[g] = (g < flips.size() && flips[g]) ? Pair{pairs[g].x2, pairs[g].x1} : pairs[g];
    }
}

std::vector<Pair> sign_flip_resample(std::span<const Pair> complete, Stream& rng) {
    std::vector<Pair> out;
    detail::flip_into(complete, out, rng);
    return out;
}

std::pair<std::vector<double>, std::vector<double>> pooled_shuffle_resample(
    std::span<const double> first_only, std::span<const double> second_only, Stream& rng) {
    std::vector<double> pooled(first_only.begin(), first_only.end());
    pooled.insert(pooled.end(), second_only.begin(), second_only.end());
    detail::fisher_yates(pooled, rng);
    return {std::vector<double>(pooled.begin(), pooled.begin() + first_only.size()),
            std::vector<double>(pooled.begin() + first_only.size(), pooled.end())};
}

}  // namespace mct
