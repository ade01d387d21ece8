#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mct/mct.hpp"
#include "mct/rng.hpp"
#include "mct/sample.hpp"

namespace mct {

enum class ErrorLaw {
    normal,           // N(0,1)
    exponential_std,  // Exp(1) - 1
    lognormal_std,    // (LN(0,1) - e^{1/2}) / sqrt((e-1)e)
    cauchy,           // standard Cauchy, deliberately not standardized
};

struct Matrix2 {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;
};

/// Symmetric PSD square root of a symmetric PSD 2x2 matrix, closed form
/// (sigma + sqrt(det) I) / sqrt(trace + 2 sqrt(det)). Throws on asymmetry or
/// a negative eigenvalue.
Matrix2 sqrt2x2(const Matrix2& sigma);

/// Homoscedastic setting: unit variances, off-diagonal rho.
Matrix2 sigma_homoscedastic(double rho);
/// Heteroscedastic setting: variances (1, 2), off-diagonal sqrt(2) rho.
Matrix2 sigma_heteroscedastic(double rho);

struct GenSpec {
    double mu1 = 0.0;
    double mu2 = 0.0;
    Matrix2 sigma;
    ErrorLaw law = ErrorLaw::normal;
    int n = 20;
};

double draw_error(ErrorLaw law, Stream& rng);
std::vector<double> gen_errors(ErrorLaw law, std::size_t count, Stream& rng);

/// n pairs mu + sqrt(sigma) * (e1, e2)' with fresh independent errors.
std::vector<Pair> gen_pairs(const GenSpec& spec, Stream& rng);

struct MissingSpec {
    double r = 0.1;  // per-component missing probability, in [0,1)
    MinCountPolicy policy{};
    int max_redraws = 1000;
};

struct MaskResult {
    std::optional<PairedSample> sample;  // nullopt: no analyzable mask found
    int redraws = 0;
};

/// Masks each component independently with probability r, keeping the data
/// fixed; pairs losing both components are dropped. Masks whose block counts
/// violate the policy are redrawn up to max_redraws.
MaskResult apply_mcar(std::span<const Pair> pairs, const MissingSpec& spec, Stream& rng);

enum class TestId {
    mu_asymptotic,
    mu_permutation,
    shift_w,
    distribution_f,
    bf_p,
    tml,
    synthetic,  // independent Uniform(0,1) component p-values, no data model
};

struct SizeEstimate {
    TestId test = TestId::bf_p;
    GenSpec gen;
    MissingSpec miss;
    long n_sim = 0;
    int resamples = 0;
    std::uint64_t base_seed = 0;
    double alpha = 0.05;
    bool applicable = true;
    long completed = 0;
    long rejections = 0;
    long skipped = 0;
    long redraws = 0;
    double rate = 0.0;       // rejections / completed
    double mc_stderr = 0.0;  // sqrt(rate (1-rate) / completed)
};

/// Monte-Carlo type-I-error estimate for one design cell: generate, mask,
/// test two-sided at level alpha with the equal square-root split, tally.
/// Fully deterministic given base_seed, independent of `threads`
/// (0 = hardware concurrency). A cell with r = 0 cannot feed the unpaired
/// component and is reported as inapplicable rather than silently replaced.
SizeEstimate estimate_size(TestId test, const GenSpec& gen, const MissingSpec& miss, long n_sim,
                           int resamples, std::uint64_t base_seed, double alpha = 0.05,
                           int threads = 0);

std::string to_string(ErrorLaw law);
std::string to_string(TestId test);
std::optional<ErrorLaw> error_law_from_string(const std::string& name);
std::optional<TestId> test_id_from_string(const std::string& name);

}  // namespace mct
