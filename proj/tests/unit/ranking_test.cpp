#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mct/ranking.hpp"
#include "mct/rng.hpp"
#include "test_util.hpp"

using namespace mct;

namespace {

// quadratic definition: rank_i = #{v_j < v_i} + (#{v_j = v_i} + 1)/2
std::vector<double> mid_ranks_oracle(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t below = 0, equal = 0;
        for (double x : v) {
            below += x < v[i];
            equal += x == v[i];
        }
        out[i] = static_cast<double>(below) + 0.5 * static_cast<double>(equal + 1);
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("ranking");

TEST_CASE("mid_ranks basics") {
    CHECK(mid_ranks(std::vector<double>{10, 20, 20, 30}) ==
          std::vector<double>{1.0, 2.5, 2.5, 4.0});
    CHECK(mid_ranks(std::vector<double>{5}) == std::vector<double>{1.0});
    CHECK(mid_ranks(std::vector<double>{7, 7, 7}) == std::vector<double>{2.0, 2.0, 2.0});
    CHECK_THROWS_AS(mid_ranks(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("mid_ranks agrees with the quadratic oracle") {
    Stream rng(101);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng.below(30);
        const auto v = rep % 2 == 0 ? testutil::normal_values(n, rng)
                                    : testutil::tied_values(n, 5, rng);
        CHECK(mid_ranks(v) == mid_ranks_oracle(v));
    }
}

TEST_CASE("mid_ranks is invariant under strictly increasing transforms") {
    Stream rng(102);
    for (int rep = 0; rep < 50; ++rep) {
        const auto v = testutil::tied_values(1 + rng.below(20), 4, rng);
        std::vector<double> mapped(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) mapped[i] = std::exp(0.5 * v[i]) - 3.0;
        CHECK(mid_ranks(v) == mid_ranks(mapped));
    }
}

TEST_CASE("two_group_ranks hand examples") {
    {
        const auto rs = two_group_ranks(std::vector<double>{1, 3}, std::vector<double>{2, 4});
        CHECK(rs.pooled_g1 == std::vector<double>{1.0, 3.0});
        CHECK(rs.pooled_g2 == std::vector<double>{2.0, 4.0});
        CHECK(rs.internal_g1 == std::vector<double>{1.0, 2.0});
        CHECK(rs.internal_g2 == std::vector<double>{1.0, 2.0});
    }
    {
        const auto rs = two_group_ranks(std::vector<double>{1, 1}, std::vector<double>{1, 1});
        CHECK(rs.pooled_g1 == std::vector<double>{2.5, 2.5});
        CHECK(rs.pooled_g2 == std::vector<double>{2.5, 2.5});
        CHECK(rs.internal_g1 == std::vector<double>{1.5, 1.5});
        CHECK(rs.internal_g2 == std::vector<double>{1.5, 1.5});
    }
    {
        const auto rs = two_group_ranks(std::vector<double>{1, 4}, std::vector<double>{4, 2});
        CHECK(rs.pooled_g1 == std::vector<double>{1.0, 3.5});
        CHECK(rs.pooled_g2 == std::vector<double>{3.5, 2.0});
        CHECK(rs.internal_g1 == std::vector<double>{1.0, 2.0});
        CHECK(rs.internal_g2 == std::vector<double>{2.0, 1.0});
    }
    CHECK_THROWS_AS(two_group_ranks(std::vector<double>{}, std::vector<double>{1.0}),
                    std::invalid_argument);
}

TEST_CASE("rank sums and bounds") {
    Stream rng(103);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n1 = 1 + rng.below(15);
        const std::size_t n2 = 1 + rng.below(15);
        const auto g1 = testutil::tied_values(n1, 6, rng);
        const auto g2 = testutil::tied_values(n2, 6, rng);
        const auto rs = two_group_ranks(g1, g2);
        const double m = static_cast<double>(n1 + n2);

        const double pooled_sum =
            std::accumulate(rs.pooled_g1.begin(), rs.pooled_g1.end(), 0.0) +
            std::accumulate(rs.pooled_g2.begin(), rs.pooled_g2.end(), 0.0);
        CHECK(pooled_sum == doctest::Approx(m * (m + 1.0) / 2.0).epsilon(1e-12));

        const double internal1 =
            std::accumulate(rs.internal_g1.begin(), rs.internal_g1.end(), 0.0);
        CHECK(internal1 ==
              doctest::Approx(static_cast<double>(n1 * (n1 + 1)) / 2.0).epsilon(1e-12));
        const double internal2 =
            std::accumulate(rs.internal_g2.begin(), rs.internal_g2.end(), 0.0);
        CHECK(internal2 ==
              doctest::Approx(static_cast<double>(n2 * (n2 + 1)) / 2.0).epsilon(1e-12));

        for (double r : rs.pooled_g1) CHECK((r >= 1.0 && r <= m));
        for (double r : rs.pooled_g2) CHECK((r >= 1.0 && r <= m));
    }
}

TEST_SUITE_END();
