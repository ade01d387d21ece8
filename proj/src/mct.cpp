#include "mct/mct.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mct {

namespace {

constexpr std::uint64_t kComponentSalt = 0x636f6d706f6e65ULL;

void require_unit_interval(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) {
        std::ostringstream msg;
        msg << what << " must lie strictly inside (0,1), got " << v;
        throw std::invalid_argument(msg.str());
    }
}

/// Maps the raw-statistic tails into the hypothesis' direction convention.
PTriple orient(const PTriple& raw, int orientation) {
    if (orientation >= 0) return raw;
    return PTriple{raw.less, raw.greater, raw.two_sided};
}

TestOutcome finish_outcome(TestOutcome outcome, Sidedness side, double level) {
    outcome.side = side;
    outcome.level = level;
    outcome.p_value = outcome.p_all.at(side);
    outcome.reject = outcome.p_value <= level;
    return outcome;
}

TestOutcome asymptotic_component(std::string method, StatValue stat, ReferenceKind reference,
                                 int orientation, Sidedness side, double level) {
    TestOutcome out;
    out.method = std::move(method);
    out.statistic = stat;
    out.orientation = orientation;
    out.p_all = orient(asymptotic_p_all(stat, reference), orientation);
    out.calibration.kind = Calibration::Kind::asymptotic;
    out.calibration.reference = reference;
    return finish_outcome(std::move(out), side, level);
}

template <class StatFn>
TestOutcome permutation_component(std::string method, StatFn&& statistic,
                                  const PairedSample& sample, Scheme scheme, int orientation,
                                  Sidedness side, double level, int resamples,
                                  std::uint64_t seed) {
    PermutationPlan plan{scheme, resamples, seed};
    const PermutationResult res = permutation_test(statistic, sample, plan);

    TestOutcome out;
    out.method = std::move(method);
    out.statistic = statistic(std::span<const Pair>(sample.complete()),
                              std::span<const double>(sample.first_only()),
                              std::span<const double>(sample.second_only()));
    out.orientation = orientation;
    out.p_all = orient(res.p, orientation);
    out.calibration.kind = Calibration::Kind::permutation;
    out.calibration.resamples = resamples;
    out.calibration.seed = seed;
    return finish_outcome(std::move(out), side, level);
}

}  // namespace

AlphaSplit split_alpha(SplitStrategy strategy, double alpha, std::size_t n_c, std::size_t n_1,
                       std::size_t n_2, std::optional<double> gamma) {
    require_unit_interval(alpha, "alpha");
    if (n_c + n_1 + n_2 == 0 && strategy != SplitStrategy::equal_sqrt &&
        strategy != SplitStrategy::explicit_gamma) {
        throw std::invalid_argument("split_alpha: count-based split needs at least one subject");
    }

    AlphaSplit split;
    split.strategy = strategy;
    split.alpha = alpha;
    switch (strategy) {
        case SplitStrategy::equal_sqrt: split.exponent1 = 0.5; break;
        case SplitStrategy::prop_n:
            split.exponent1 = static_cast<double>(n_c) / static_cast<double>(n_c + n_1 + n_2);
            break;
        case SplitStrategy::prop_N:
            split.exponent1 =
                2.0 * static_cast<double>(n_c) / static_cast<double>(2 * n_c + n_1 + n_2);
            break;
        case SplitStrategy::explicit_gamma:
            if (!gamma) throw std::invalid_argument("split_alpha: gamma strategy needs gamma");
            require_unit_interval(*gamma, "gamma");
            split.exponent1 = *gamma;
            break;
    }
    split.alpha1 = std::pow(alpha, split.exponent1);
    split.alpha2 = std::pow(alpha, 1.0 - split.exponent1);
    require_unit_interval(split.alpha1, "alpha1");
    require_unit_interval(split.alpha2, "alpha2");
    return split;
}

double mct_p_value(double p1, double p2, double exponent1) {
    const double a1 = std::pow(p1, 1.0 / exponent1);
    const double a2 = std::pow(p2, 1.0 / (1.0 - exponent1));
    return std::min(1.0, std::max(a1, a2));
}

MctOutcome combine(const TestOutcome& complete_part, const TestOutcome& incomplete_part,
                   const AlphaSplit& split) {
    if (std::fabs(complete_part.level - split.alpha1) > 1e-12 ||
        std::fabs(incomplete_part.level - split.alpha2) > 1e-12) {
        throw std::invalid_argument("combine: component levels do not match the split");
    }
    MctOutcome out;
    out.complete_part = complete_part;
    out.incomplete_part = incomplete_part;
    out.split = split;
    out.reject = complete_part.reject && incomplete_part.reject;
    const double dir_c = complete_part.orientation * complete_part.statistic.value;
    const double dir_i = incomplete_part.orientation * incomplete_part.statistic.value;
    out.direction_disagreement = out.reject && complete_part.side == Sidedness::two_sided &&
                                 dir_c * dir_i < 0.0;
    out.p_value = mct_p_value(complete_part.p_value, incomplete_part.p_value, split.exponent1);
    return out;
}

MctOutcome run_mct(Hypothesis hypothesis, const PairedSample& sample, Sidedness side,
                   const AlphaSplit& split, const PermutationPlan& plan,
                   int small_sample_cutoff) {
    const auto violations = validate(sample, MinCountPolicy{});
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "run_mct: sample not analyzable:";
        for (const auto& v : violations) {
            msg << ' ' << to_string(v.field) << '=' << v.count << "<" << v.minimum;
        }
        throw std::invalid_argument(msg.str());
    }

    const std::uint64_t seed_c = derive_seed(plan.seed, 0, kComponentSalt);
    const std::uint64_t seed_i = derive_seed(plan.seed, 1, kComponentSalt);
    const int B = plan.resamples;
    const double a1 = split.alpha1;
    const double a2 = split.alpha2;

    auto stat_paired_t = [](std::span<const Pair> c, std::span<const double>,
                            std::span<const double>) { return paired_t(c); };
    auto stat_welch = [](std::span<const Pair>, std::span<const double> g1,
                         std::span<const double> g2) { return welch(g1, g2); };
    auto stat_wsr = [](std::span<const Pair> c, std::span<const double>,
                       std::span<const double>) { return wilcoxon_signed_rank(c); };
    auto stat_wmw = [](std::span<const Pair>, std::span<const double> g1,
                       std::span<const double> g2) { return wmw(g1, g2); };
    auto stat_munzel_bf = [](std::span<const Pair> c, std::span<const double>,
                             std::span<const double>) { return munzel_bf(c); };
    auto stat_bm = [](std::span<const Pair>, std::span<const double> g1,
                      std::span<const double> g2) { return brunner_munzel(g1, g2); };

    const bool small_nc = sample.n_c() < static_cast<std::size_t>(small_sample_cutoff);
    const bool small_m =
        sample.n_1() + sample.n_2() < static_cast<std::size_t>(small_sample_cutoff);

    TestOutcome part_c, part_i;
    switch (hypothesis) {
        case Hypothesis::mu_asymptotic:
            part_c = asymptotic_component("paired-t", paired_t(sample.complete()),
                                          ReferenceKind::student_t, +1, side, a1);
            part_i = asymptotic_component("welch", welch(sample.first_only(), sample.second_only()),
                                          ReferenceKind::student_t, +1, side, a2);
            break;
        case Hypothesis::mu_permutation:
            part_c = permutation_component("paired-t", stat_paired_t, sample, Scheme::sign_flip, +1,
                                           side, a1, B, seed_c);
            part_i = permutation_component("welch", stat_welch, sample, Scheme::pooled_shuffle, +1,
                                           side, a2, B, seed_i);
            break;
        case Hypothesis::shift_w:
            // the two-sample rank statistic grows when the *second* component
            // tends larger, so it enters the shift hypothesis with flipped sign
            part_c = small_nc
                         ? permutation_component("wilcoxon-signed-rank", stat_wsr, sample,
                                                 Scheme::sign_flip, +1, side, a1, B, seed_c)
                         : asymptotic_component("wilcoxon-signed-rank",
                                                wilcoxon_signed_rank(sample.complete()),
                                                ReferenceKind::normal, +1, side, a1);
            part_i = small_m
                         ? permutation_component("wmw", stat_wmw, sample, Scheme::pooled_shuffle,
                                                 -1, side, a2, B, seed_i)
                         : asymptotic_component("wmw", wmw(sample.first_only(), sample.second_only()),
                                                ReferenceKind::normal, -1, side, a2);
            break;
        case Hypothesis::distribution_f:
            part_c = asymptotic_component("munzel-f", munzel_f(sample.complete()),
                                          ReferenceKind::student_t, +1, side, a1);
            part_i = small_m
                         ? permutation_component("wmw", stat_wmw, sample, Scheme::pooled_shuffle,
                                                 +1, side, a2, B, seed_i)
                         : asymptotic_component("wmw", wmw(sample.first_only(), sample.second_only()),
                                                ReferenceKind::normal, +1, side, a2);
            break;
        case Hypothesis::bf_p:
            part_c = permutation_component("munzel-bf", stat_munzel_bf, sample, Scheme::sign_flip,
                                           +1, side, a1, B, seed_c);
            part_i = permutation_component("brunner-munzel", stat_bm, sample,
                                           Scheme::pooled_shuffle, +1, side, a2, B, seed_i);
            break;
    }
    return combine(part_c, part_i, split);
}

TestOutcome run_tml(const PairedSample& sample, Sidedness side, double alpha,
                    const PermutationPlan& plan) {
    require_unit_interval(alpha, "alpha");
    const auto violations = validate(sample, MinCountPolicy{});
    if (!violations.empty()) {
        throw std::invalid_argument("run_tml: sample not analyzable under the (2,2,2) policy");
    }
    auto stat_tml = [](std::span<const Pair> c, std::span<const double> g1,
                       std::span<const double> g2) { return tml(c, g1, g2); };
    return permutation_component("tml", stat_tml, sample, Scheme::combined, +1, side, alpha,
                                 plan.resamples, plan.seed);
}

std::string to_string(Hypothesis hypothesis) {
    switch (hypothesis) {
        case Hypothesis::mu_asymptotic: return "mu-asym";
        case Hypothesis::mu_permutation: return "mu-perm";
        case Hypothesis::shift_w: return "shift";
        case Hypothesis::distribution_f: return "dist";
        case Hypothesis::bf_p: return "bf-p";
    }
    return "?";
}

std::string to_string(Sidedness side) {
    switch (side) {
        case Sidedness::greater: return "greater";
        case Sidedness::less: return "less";
        case Sidedness::two_sided: return "two";
    }
    return "?";
}

std::string to_string(SplitStrategy strategy) {
    switch (strategy) {
        case SplitStrategy::equal_sqrt: return "sqrt";
        case SplitStrategy::prop_n: return "prop-n";
        case SplitStrategy::prop_N: return "prop-N";
        case SplitStrategy::explicit_gamma: return "gamma";
    }
    return "?";
}

}  // namespace mct
