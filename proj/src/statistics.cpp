#include "mct/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mct/distributions.hpp"
#include "mct/ranking.hpp"

namespace mct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// Unbiased sample variance (divisor n-1); n >= 2.
double sample_variance(std::span<const double> v, double m) {
    double ss = 0.0;
    for (double x : v) {
        const double d = x - m;
        ss += d * d;
    }
    return ss / static_cast<double>(v.size() - 1);
}

/// Signed infinity in the direction of `numerator`, 0 when it vanishes.
double degenerate_value(double numerator) {
    if (numerator > 0.0) return kInf;
    if (numerator < 0.0) return -kInf;
    return 0.0;
}

}  // namespace

StatValue paired_t(std::span<const Pair> complete) {
    const std::size_t n = complete.size();
    if (n < 2) throw std::invalid_argument("paired_t: needs at least 2 complete pairs");
    std::vector<double> d(n);
    for (std::size_t g = 0; g < n; ++g) d[g] = complete[g].x1 - complete[g].x2;
    const double d_bar = mean(d);
    const double var = sample_variance(d, d_bar);

    StatValue out;
    out.df = static_cast<double>(n - 1);
    out.effect = d_bar;
    if (var <= 0.0) {
        out.degenerate = true;
        out.value = degenerate_value(d_bar);
        return out;
    }
    out.value = d_bar / std::sqrt(var / static_cast<double>(n));
    return out;
}

StatValue welch(std::span<const double> first_only, std::span<const double> second_only) {
    const std::size_t n1 = first_only.size();
    const std::size_t n2 = second_only.size();
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("welch: needs at least 2 per group");
    const double m1 = mean(first_only);
    const double m2 = mean(second_only);
    const double v1 = sample_variance(first_only, m1) / static_cast<double>(n1);
    const double v2 = sample_variance(second_only, m2) / static_cast<double>(n2);

    StatValue out;
    out.effect = m1 - m2;
    if (v1 + v2 <= 0.0) {
        out.degenerate = true;
        out.value = degenerate_value(m1 - m2);
        return out;
    }
    out.value = (m1 - m2) / std::sqrt(v1 + v2);
    out.df = (v1 + v2) * (v1 + v2) /
             (v1 * v1 / static_cast<double>(n1 - 1) + v2 * v2 / static_cast<double>(n2 - 1));
    return out;
}

StatValue wilcoxon_signed_rank(std::span<const Pair> complete) {
    std::vector<double> abs_diff;
    std::vector<int> sign;
    abs_diff.reserve(complete.size());
    sign.reserve(complete.size());
    for (const auto& p : complete) {
        const double d = p.x1 - p.x2;
        if (d == 0.0) continue;  // zero differences carry no sign information
        abs_diff.push_back(std::fabs(d));
        sign.push_back(d > 0.0 ? 1 : -1);
    }

    StatValue out;
    if (abs_diff.empty()) {
        out.degenerate = true;
        out.value = 0.0;
        return out;
    }
    const std::vector<double> r = mid_ranks(abs_diff);
    double r_pos = 0.0, r_neg = 0.0, ss = 0.0;
    for (std::size_t g = 0; g < r.size(); ++g) {
        (sign[g] > 0 ? r_pos : r_neg) += r[g];
        ss += r[g] * r[g];
    }
    out.value = (r_pos - r_neg) / std::sqrt(ss);
    return out;
}

StatValue wmw(std::span<const double> first_only, std::span<const double> second_only) {
    const std::size_t n1 = first_only.size();
    const std::size_t n2 = second_only.size();
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("wmw: both groups must be non-empty");
    const double m = static_cast<double>(n1 + n2);

    std::vector<double> pooled(first_only.begin(), first_only.end());
    pooled.insert(pooled.end(), second_only.begin(), second_only.end());
    const std::vector<double> ranks = mid_ranks(pooled);

    double r1 = 0.0, r2 = 0.0, ss = 0.0;
    const double center = 0.5 * (m + 1.0);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        (i < n1 ? r1 : r2) += ranks[i];
        const double d = ranks[i] - center;
        ss += d * d;
    }
    const double r1_bar = r1 / static_cast<double>(n1);
    const double r2_bar = r2 / static_cast<double>(n2);
    const double sigma0_sq = ss / (m - 1.0);  // tie-respecting rank variance

    StatValue out;
    out.effect = (r2_bar - r1_bar) / m + 0.5;
    if (sigma0_sq <= 0.0) {
        out.degenerate = true;
        out.value = 0.0;  // all pooled values tied forces a zero numerator too
        return out;
    }
    out.value = std::sqrt(static_cast<double>(n1 * n2)) * (r2_bar - r1_bar) /
                std::sqrt(sigma0_sq * m);
    return out;
}

StatValue munzel_f(std::span<const Pair> complete) {
    const std::size_t n = complete.size();
    if (n < 2) throw std::invalid_argument("munzel_f: needs at least 2 complete pairs");
    std::vector<double> c1(n), c2(n);
    for (std::size_t g = 0; g < n; ++g) {
        c1[g] = complete[g].x1;
        c2[g] = complete[g].x2;
    }
    const RankSet rs = two_group_ranks(c1, c2);
    std::vector<double> d(n);
    for (std::size_t g = 0; g < n; ++g) d[g] = rs.pooled_g2[g] - rs.pooled_g1[g];
    const double d_bar = mean(d);
    const double var = sample_variance(d, d_bar);

    StatValue out;
    out.df = static_cast<double>(n - 1);  // small-sample t reference
    if (var <= 0.0) {
        out.degenerate = true;
        out.value = degenerate_value(d_bar);
        return out;
    }
    out.value = std::sqrt(static_cast<double>(n)) * d_bar / std::sqrt(var);
    return out;
}

StatValue munzel_bf(std::span<const Pair> complete) {
    const std::size_t n = complete.size();
    if (n < 2) throw std::invalid_argument("munzel_bf: needs at least 2 complete pairs");
    std::vector<double> c1(n), c2(n);
    for (std::size_t g = 0; g < n; ++g) {
        c1[g] = complete[g].x1;
        c2[g] = complete[g].x2;
    }
    const RankSet rs = two_group_ranks(c1, c2);
    const double nc = static_cast<double>(n);

    std::vector<double> z(n);
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
        z[g] = (rs.pooled_g2[g] - rs.internal_g2[g] - (rs.pooled_g1[g] - rs.internal_g1[g])) / nc;
        r1 += rs.pooled_g1[g];
        r2 += rs.pooled_g2[g];
    }
    const double z_bar = mean(z);
    const double var = sample_variance(z, z_bar);

    StatValue out;
    // (r2-r1)/n = sum of Z, so the effect estimate matches the Z scale
    out.effect = (r2 - r1) / (nc * 2.0 * nc) + 0.5;
    if (var <= 0.0) {
        out.degenerate = true;
        out.value = degenerate_value(z_bar);
        return out;
    }
    out.value = std::sqrt(nc) * z_bar / std::sqrt(var);
    return out;
}

StatValue brunner_munzel(std::span<const double> first_only,
                         std::span<const double> second_only) {
    const std::size_t n1 = first_only.size();
    const std::size_t n2 = second_only.size();
    if (n1 < 2 || n2 < 2) {
        throw std::invalid_argument("brunner_munzel: needs at least 2 per group");
    }
    const double m = static_cast<double>(n1 + n2);
    const RankSet rs = two_group_ranks(first_only, second_only);

    const double r1_bar = mean(rs.pooled_g1);
    const double r2_bar = mean(rs.pooled_g2);

    // placement variances: pooled rank minus internal rank, centered
    auto placement_variance = [](const std::vector<double>& pooled,
                                 const std::vector<double>& internal, double pooled_mean) {
        const double nj = static_cast<double>(pooled.size());
        const double center = pooled_mean - 0.5 * (nj + 1.0);
        double ss = 0.0;
        for (std::size_t k = 0; k < pooled.size(); ++k) {
            const double d = pooled[k] - internal[k] - center;
            ss += d * d;
        }
        return ss / (nj - 1.0);
    };
    const double s1_sq = placement_variance(rs.pooled_g1, rs.internal_g1, r1_bar);
    const double s2_sq = placement_variance(rs.pooled_g2, rs.internal_g2, r2_bar);
    const double si_sq =
        m * (s1_sq / static_cast<double>(n2) + s2_sq / static_cast<double>(n1));

    StatValue out;
    out.effect = (r2_bar - r1_bar) / m + 0.5;
    if (si_sq <= 0.0) {
        out.degenerate = true;
        out.value = degenerate_value(r2_bar - r1_bar);
        return out;
    }
    out.value = std::sqrt(static_cast<double>(n1 * n2) / m) * (r2_bar - r1_bar) /
                std::sqrt(si_sq);
    return out;
}

double wmw_effect_direct(std::span<const double> first_only,
                         std::span<const double> second_only) {
    if (first_only.empty() || second_only.empty()) {
        throw std::invalid_argument("wmw_effect_direct: both groups must be non-empty");
    }
    double acc = 0.0;
    for (double x : first_only) {
        for (double y : second_only) {
            if (x < y) {
                acc += 1.0;
            } else if (x == y) {
                acc += 0.5;
            }
        }
    }
    return acc / (static_cast<double>(first_only.size()) *
                  static_cast<double>(second_only.size()));
}

double tml_weight(std::size_t n_c, std::size_t n_1, std::size_t n_2) {
    const double nc = static_cast<double>(n_c);
    const double n = static_cast<double>(n_c + n_1 + n_2);
    return 2.0 * nc / (n + nc);
}

StatValue tml(std::span<const Pair> complete, std::span<const double> first_only,
              std::span<const double> second_only) {
    const StatValue t_paired = paired_t(complete);
    const StatValue t_welch = welch(first_only, second_only);
    const double a = tml_weight(complete.size(), first_only.size(), second_only.size());

    StatValue out;
    out.value = std::sqrt(a) * t_paired.value + std::sqrt(1.0 - a) * t_welch.value;
    out.degenerate = t_paired.degenerate || t_welch.degenerate;
    if (std::isnan(out.value)) out.value = 0.0;  // opposing infinities: directionless
    return out;
}

StatValue tml(const PairedSample& sample) {
    return tml(sample.complete(), sample.first_only(), sample.second_only());
}

PTriple asymptotic_p_all(const StatValue& stat, ReferenceKind reference) {
    PTriple out;
    if (stat.degenerate && stat.value == 0.0) {
        return out;  // directionless degenerate: no evidence either way
    }
    if (std::isinf(stat.value)) {
        out.greater = stat.value > 0 ? 0.0 : 1.0;
        out.less = stat.value > 0 ? 1.0 : 0.0;
        out.two_sided = 0.0;
        return out;
    }
    double cdf;
    if (reference == ReferenceKind::normal) {
        cdf = normal_cdf(stat.value);
    } else {
        if (!stat.df) {
            throw std::invalid_argument("asymptotic_p: t reference requires degrees of freedom");
        }
        cdf = students_t_cdf(stat.value, *stat.df);
    }
    out.greater = 1.0 - cdf;
    out.less = cdf;
    out.two_sided = std::min(1.0, 2.0 * std::min(out.greater, out.less));
    return out;
}

double asymptotic_p(const StatValue& stat, ReferenceKind reference, Sidedness side) {
    return asymptotic_p_all(stat, reference).at(side);
}

}  // namespace mct
