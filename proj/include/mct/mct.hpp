#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mct/permutation.hpp"
#include "mct/sample.hpp"
#include "mct/statistics.hpp"

namespace mct {

enum class SplitStrategy {
    equal_sqrt,      // alpha1 = alpha2 = sqrt(alpha)
    prop_n,          // exponents n_c/n and (n_1+n_2)/n
    prop_N,          // exponents 2*n_c/N and (n_1+n_2)/N
    explicit_gamma,  // exponents gamma and 1-gamma
};

/// A multiplicative split of the overall level: alpha1 = alpha^exponent1,
/// alpha2 = alpha^(1-exponent1), so alpha1 * alpha2 = alpha.
struct AlphaSplit {
    SplitStrategy strategy = SplitStrategy::equal_sqrt;
    double alpha = 0.05;
    double exponent1 = 0.5;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// Throws std::invalid_argument when alpha or gamma lies outside (0,1) or a
/// count-based strategy would push a component level to the boundary.
AlphaSplit split_alpha(SplitStrategy strategy, double alpha, std::size_t n_c, std::size_t n_1,
                       std::size_t n_2, std::optional<double> gamma = std::nullopt);

/// Smallest overall alpha at which an MCT with component p-values p1, p2 and
/// level exponents (e, 1-e) rejects.
double mct_p_value(double p1, double p2, double exponent1);

struct Calibration {
    enum class Kind { asymptotic, permutation };
    Kind kind = Kind::asymptotic;
    ReferenceKind reference = ReferenceKind::normal;  // asymptotic only
    int resamples = 0;                                // permutation only
    std::uint64_t seed = 0;                           // permutation only
};

/// One component test, fully realized. One-sided p-values are expressed in
/// the hypothesis' direction convention; `orientation` records whether the
/// raw statistic increases (+1) or decreases (-1) with that direction.
struct TestOutcome {
    std::string method;
    StatValue statistic;
    Sidedness side = Sidedness::two_sided;
    PTriple p_all;
    double p_value = 1.0;
    double level = 0.0;
    bool reject = false;  // p_value <= level; boundary rejects
    int orientation = 1;
    Calibration calibration;
};

struct MctOutcome {
    TestOutcome complete_part;
    TestOutcome incomplete_part;
    AlphaSplit split;
    bool reject = false;
    /// Both components rejected a two-sided hypothesis in opposite directions.
    bool direction_disagreement = false;
    /// mct_p_value at the requested side.
    double p_value = 1.0;
};

/// Testing problems covered by the composed tests. The one-sided "greater"
/// direction means: first component tends larger for the mean and shift
/// hypotheses; effect p > 1/2 (second component tends larger) for the
/// distribution and Behrens-Fisher hypotheses.
enum class Hypothesis {
    mu_asymptotic,   // paired t + Welch, t references
    mu_permutation,  // paired t under sign flips + Welch under pooled shuffles
    shift_w,         // signed rank + two-sample rank statistic
    distribution_f,  // paired pooled-rank statistic + two-sample rank statistic
    bf_p,            // paired and unpaired Behrens-Fisher statistics, both permuted
};

/// Component tests whose calibration switches between permutation and the
/// asymptotic reference do so below this block size.
inline constexpr int kSmallSampleCutoff = 30;

/// Requires both component levels to match the split; throws otherwise.
MctOutcome combine(const TestOutcome& complete_part, const TestOutcome& incomplete_part,
                   const AlphaSplit& split);

/// Runs both component tests of `hypothesis` on the sample and combines them.
/// The sample must pass validate() with the default (2,2,2) policy. Only the
/// resample count and seed of `plan` are used; each component fixes its own
/// scheme.
MctOutcome run_mct(Hypothesis hypothesis, const PairedSample& sample, Sidedness side,
                   const AlphaSplit& split, const PermutationPlan& plan,
                   int small_sample_cutoff = kSmallSampleCutoff);

/// The weighted-sum competitor: one permutation test of the combined
/// statistic at full level alpha (no split).
TestOutcome run_tml(const PairedSample& sample, Sidedness side, double alpha,
                    const PermutationPlan& plan);

std::string to_string(Hypothesis hypothesis);
std::string to_string(Sidedness side);
std::string to_string(SplitStrategy strategy);

}  // namespace mct
