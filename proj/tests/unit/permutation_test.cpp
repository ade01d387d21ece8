#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "mct/permutation.hpp"
#include "test_util.hpp"

using namespace mct;

namespace {

StatValue mean_diff_stat(std::span<const Pair> c) {
    double s = 0.0;
    for (const auto& p : c) s += p.x1 - p.x2;
    return StatValue{s / static_cast<double>(c.size()), std::nullopt, std::nullopt, false};
}

StatValue abs_mean_diff_stat(std::span<const Pair> c) {
    auto v = mean_diff_stat(c);
    v.value = std::fabs(v.value);
    return v;
}

auto block_paired_t = [](std::span<const Pair> c, std::span<const double>,
                         std::span<const double>) { return paired_t(c); };

std::multiset<std::pair<double, double>> unordered_pair_multiset(std::span<const Pair> pairs) {
    std::multiset<std::pair<double, double>> out;
    for (const auto& p : pairs) out.insert(std::minmax(p.x1, p.x2));
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("permutation");

TEST_CASE("apply_sign_flips") {
    const std::vector<Pair> pairs{{1, 2}, {3, 4}};
    std::vector<Pair> out;
    apply_sign_flips(pairs, std::vector<std::uint8_t>{0, 0}, out);
    CHECK(out == pairs);
    apply_sign_flips(pairs, std::vector<std::uint8_t>{1, 1}, out);
    CHECK(out == std::vector<Pair>{{2, 1}, {4, 3}});
    apply_sign_flips(pairs, std::vector<std::uint8_t>{0, 1}, out);
    CHECK(out == std::vector<Pair>{{1, 2}, {4, 3}});
}

TEST_CASE("a flip negates the pair difference") {
    Stream rng(301);
    const auto pairs = testutil::normal_pairs(8, rng);
    std::vector<std::uint8_t> flips(8);
    for (auto& f : flips) f = rng.bernoulli(0.5);
    std::vector<Pair> flipped;
    apply_sign_flips(pairs, flips, flipped);
    for (std::size_t g = 0; g < pairs.size(); ++g) {
        const double d = pairs[g].x1 - pairs[g].x2;
        const double expected = flips[g] ? -d : d;
        CHECK(flipped[g].x1 - flipped[g].x2 == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("resamplers preserve sufficient structure") {
    Stream rng(302);
    const auto pairs = testutil::tied_pairs(12, 4, rng);
    const auto g1 = testutil::tied_values(7, 4, rng);
    const auto g2 = testutil::tied_values(5, 4, rng);

    for (int rep = 0; rep < 50; ++rep) {
        const auto flipped = sign_flip_resample(pairs, rng);
        CHECK(unordered_pair_multiset(flipped) == unordered_pair_multiset(pairs));

        const auto [s1, s2] = pooled_shuffle_resample(g1, g2, rng);
        CHECK(s1.size() == g1.size());
        CHECK(s2.size() == g2.size());
        std::multiset<double> before(g1.begin(), g1.end());
        before.insert(g2.begin(), g2.end());
        std::multiset<double> after(s1.begin(), s1.end());
        after.insert(s2.begin(), s2.end());
        CHECK(before == after);
    }
}

TEST_CASE("pooled shuffle on a two-value layout hits both outcomes evenly") {
    Stream rng(303);
    int first_kept = 0;
    const int reps = 2000;
    for (int rep = 0; rep < reps; ++rep) {
        const auto [s1, s2] =
            pooled_shuffle_resample(std::vector<double>{1.0}, std::vector<double>{2.0}, rng);
        first_kept += s1[0] == 1.0;
    }
    CHECK(first_kept > reps / 2 - 3 * std::sqrt(reps * 0.25));
    CHECK(first_kept < reps / 2 + 3 * std::sqrt(reps * 0.25));
}

TEST_CASE("permutation p-values live in [1/(B+1), 1]") {
    Stream rng(304);
    for (int rep = 0; rep < 20; ++rep) {
        const PairedSample sample(testutil::normal_pairs(6, rng),
                                  testutil::normal_values(4, rng),
                                  testutil::normal_values(4, rng));
        const PermutationPlan plan{rep % 2 == 0 ? Scheme::sign_flip : Scheme::pooled_shuffle, 99,
                                   rng.next_u64()};
        auto stat = rep % 2 == 0
                        ? std::function([](std::span<const Pair> c, std::span<const double>,
                                           std::span<const double>) { return paired_t(c); })
                        : std::function([](std::span<const Pair>, std::span<const double> a,
                                           std::span<const double> b) { return welch(a, b); });
        const auto res = permutation_test(stat, sample, plan);
        for (double p : {res.p.greater, res.p.less, res.p.two_sided}) {
            CHECK(p >= 1.0 / 100.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("constant statistic gives p = 1 in every direction") {
    Stream rng(305);
    const PairedSample sample(std::vector<Pair>(5, Pair{3.0, 3.0}), {1.0, 1.0}, {1.0, 1.0});
    const PermutationPlan plan{Scheme::sign_flip, 200, 42};
    const auto res = permutation_test(block_paired_t, sample, plan);
    CHECK(res.p.greater == 1.0);
    CHECK(res.p.less == 1.0);
    CHECK(res.p.two_sided == 1.0);
    CHECK(res.observed_degenerate);
}

TEST_CASE("observed strictly above every resample hits the floor 1/(B+1)") {
    // statistic that only the unflipped arrangement maximizes; with 40 pairs
    // the chance of resampling the identity is negligible and the fixed seed
    // below never does
    Stream rng(306);
    const auto pairs = testutil::normal_pairs(40, rng);
    const PairedSample sample(pairs, {}, {});
    auto indicator = [&pairs](std::span<const Pair> c, std::span<const double>,
                              std::span<const double>) {
        const bool same = std::equal(c.begin(), c.end(), pairs.begin(), pairs.end());
        return StatValue{same ? 1.0 : 0.0, std::nullopt, std::nullopt, false};
    };
    const PermutationPlan plan{Scheme::sign_flip, 199, 4711};
    const auto res = permutation_test(indicator, sample, plan);
    CHECK(res.p.greater == doctest::Approx(1.0 / 200.0).epsilon(1e-15));
}

TEST_CASE("exhaustive sign-flip enumeration") {
    // single positive difference: two patterns, one at least as large
    CHECK(exhaustive_sign_flip_p(mean_diff_stat, std::vector<Pair>{{3, 1}}, Sidedness::greater) ==
          0.5);
    // differences (1,2): four patterns with means 1.5, 0.5, -0.5, -1.5
    CHECK(exhaustive_sign_flip_p(mean_diff_stat, std::vector<Pair>{{2, 1}, {4, 2}},
                                 Sidedness::greater) == 0.25);
    // |mean| with differences (1,1): values 1, 0, 0, 1
    CHECK(exhaustive_sign_flip_p(abs_mean_diff_stat, std::vector<Pair>{{2, 1}, {3, 2}},
                                 Sidedness::greater) == 0.5);
    CHECK(exhaustive_sign_flip_p(mean_diff_stat, std::vector<Pair>{{2, 1}, {3, 2}},
                                 Sidedness::two_sided) == 0.5);

    std::vector<Pair> too_big(21, Pair{1.0, 2.0});
    CHECK_THROWS_AS(exhaustive_sign_flip_p(mean_diff_stat, too_big, Sidedness::greater),
                    std::invalid_argument);
}

TEST_CASE("Monte-Carlo permutation approaches the exhaustive oracle") {
    Stream rng(307);
    const auto pairs = testutil::normal_pairs(6, rng);
    const PairedSample sample(pairs, {}, {});

    auto paired_only = [](std::span<const Pair> c) { return paired_t(c); };
    const double exact = exhaustive_sign_flip_p(paired_only, pairs, Sidedness::greater);
    const int b = 40000;
    const double mc =
        permutation_p(block_paired_t, sample, PermutationPlan{Scheme::sign_flip, b, 99},
                      Sidedness::greater);
    const double se = std::sqrt(exact * (1.0 - exact) / b);
    CHECK(std::fabs(mc - exact) <= 3.0 * se + 1.0 / (b + 1.0));
}

TEST_CASE("fixed seeds reproduce bit-identically") {
    Stream rng(308);
    const PairedSample sample(testutil::normal_pairs(10, rng), testutil::normal_values(5, rng),
                              testutil::normal_values(6, rng));
    const PermutationPlan plan{Scheme::combined, 500, 1234};
    auto stat = [](std::span<const Pair> c, std::span<const double> a,
                   std::span<const double> b) { return tml(c, a, b); };
    const auto r1 = permutation_test(stat, sample, plan);
    const auto r2 = permutation_test(stat, sample, plan);
    CHECK(r1.p.greater == r2.p.greater);
    CHECK(r1.p.less == r2.p.less);
    CHECK(r1.p.two_sided == r2.p.two_sided);

    const auto r3 = permutation_test(stat, sample, PermutationPlan{Scheme::combined, 500, 1235});
    CHECK(r1.p.greater != r3.p.greater);  // different stream, different resamples
}

TEST_CASE("resample count must be positive") {
    const PairedSample sample(std::vector<Pair>{{1, 2}, {3, 4}}, {1.0, 2.0}, {3.0, 4.0});
    CHECK_THROWS_AS(
        permutation_test(block_paired_t, sample, PermutationPlan{Scheme::sign_flip, 0, 1}),
        std::invalid_argument);
}

TEST_SUITE_END();
