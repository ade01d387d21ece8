#pragma once

#include <optional>
#include <span>

#include "mct/sample.hpp"

namespace mct {

enum class Sidedness { greater, less, two_sided };

/// A computed test statistic. `df` is the degrees of freedom of the
/// t reference when one applies; `effect` carries an effect estimate where
/// the statistic has a natural one (mean difference or rank effect).
/// A degenerate statistic (zero variance estimate) keeps a usable value,
/// signed infinity in the direction of the numerator or 0 when directionless,
/// so resampling engines can still order it.
struct StatValue {
    double value = 0.0;
    std::optional<double> df;
    std::optional<double> effect;
    bool degenerate = false;
};

/// Paired t statistic on the differences x1 - x2; df = n_c - 1. n_c >= 2.
StatValue paired_t(std::span<const Pair> complete);

/// Welch two-sample statistic with Welch-Satterthwaite df. n_1, n_2 >= 2.
StatValue welch(std::span<const double> first_only, std::span<const double> second_only);

/// Wilcoxon signed rank, studentized form: (R+ - R-)/sqrt(sum of squared
/// ranks) over |differences|, zero differences discarded.
StatValue wilcoxon_signed_rank(std::span<const Pair> complete);

/// Two-sample rank statistic with the tie-respecting variance estimator;
/// effect = rank estimate of P(X < Y) + P(X = Y)/2. n_1, n_2 >= 1.
StatValue wmw(std::span<const double> first_only, std::span<const double> second_only);

/// Paired rank statistic on pooled-rank differences D_g = R_2g - R_1g,
/// studentized by their sample standard deviation. n_c >= 2.
StatValue munzel_f(std::span<const Pair> complete);

/// Paired rank statistic for the Behrens-Fisher effect: studentizes
/// Z_g = (R_2g - R^int_2g - (R_1g - R^int_1g)) / n_c using pooled and
/// within-component ranks. effect = rank effect estimate on the pairs.
StatValue munzel_bf(std::span<const Pair> complete);

/// Two-sample rank statistic for the Behrens-Fisher problem, studentized by
/// the placement-based variance estimator. n_1, n_2 >= 2.
/// effect identical to the direct double-sum estimate.
StatValue brunner_munzel(std::span<const double> first_only,
                         std::span<const double> second_only);

/// Brute-force effect estimate: mean over all cross pairs of
/// 1{x < y} + 1{x = y}/2. Quadratic; serves as the oracle for the
/// rank-based effect estimates.
double wmw_effect_direct(std::span<const double> first_only,
                         std::span<const double> second_only);

/// Weight placed on the paired component in the weighted-sum statistic.
double tml_weight(std::size_t n_c, std::size_t n_1, std::size_t n_2);

/// Weighted sum of the paired-t and Welch statistics over the complete and
/// incomplete blocks. Requires n_c >= 2 and n_1, n_2 >= 2; degeneracy of a
/// component propagates.
StatValue tml(const PairedSample& sample);
StatValue tml(std::span<const Pair> complete, std::span<const double> first_only,
              std::span<const double> second_only);

enum class ReferenceKind { normal, student_t };

struct PTriple {
    double greater = 1.0;
    double less = 1.0;
    double two_sided = 1.0;

    double at(Sidedness side) const noexcept {
        switch (side) {
            case Sidedness::greater: return greater;
            case Sidedness::less: return less;
            case Sidedness::two_sided: return two_sided;
        }
        return two_sided;
    }
};

/// Tail probabilities of the reference at the observed value. student_t
/// requires stat.df. Degenerate statistics map to {0,1} (signed infinity)
/// or to p = 1 in every direction (directionless zero).
PTriple asymptotic_p_all(const StatValue& stat, ReferenceKind reference);
double asymptotic_p(const StatValue& stat, ReferenceKind reference, Sidedness side);

}  // namespace mct
