#include "mct/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace mct {

namespace {

constexpr std::uint64_t kDataSalt = 0x64617461ULL;
constexpr std::uint64_t kPermSalt = 0x7065726dULL;

const double kLognormalMean = std::exp(0.5);
const double kLognormalSd = std::sqrt((std::exp(1.0) - 1.0) * std::exp(1.0));

}  // namespace

Matrix2 sqrt2x2(const Matrix2& sigma) {
    if (sigma.m12 != sigma.m21) {
        throw std::invalid_argument("sqrt2x2: matrix must be symmetric");
    }
    const double det = sigma.m11 * sigma.m22 - sigma.m12 * sigma.m21;
    const double trace = sigma.m11 + sigma.m22;
    if (det < 0.0 || trace < 0.0) {
        throw std::invalid_argument("sqrt2x2: matrix has a negative eigenvalue");
    }
    const double s = std::sqrt(det);
    const double denom = std::sqrt(trace + 2.0 * s);
    if (denom == 0.0) return Matrix2{0.0, 0.0, 0.0, 0.0};
    return Matrix2{(sigma.m11 + s) / denom, sigma.m12 / denom, sigma.m21 / denom,
                   (sigma.m22 + s) / denom};
}

Matrix2 sigma_homoscedastic(double rho) { return Matrix2{1.0, rho, rho, 1.0}; }

Matrix2 sigma_heteroscedastic(double rho) {
    const double off = std::sqrt(2.0) * rho;
    return Matrix2{1.0, off, off, 2.0};
}

double draw_error(ErrorLaw law, Stream& rng) {
    switch (law) {
        case ErrorLaw::normal: return rng.normal();
        case ErrorLaw::exponential_std: return rng.exponential() - 1.0;
        case ErrorLaw::lognormal_std:
            return (std::exp(rng.normal()) - kLognormalMean) / kLognormalSd;
        case ErrorLaw::cauchy: return rng.cauchy();
    }
    throw std::logic_error("draw_error: unknown law");
}

std::vector<double> gen_errors(ErrorLaw law, std::size_t count, Stream& rng) {
    std::vector<double> out(count);
    for (double& e : out) e = draw_error(law, rng);
    return out;
}

std::vector<Pair> gen_pairs(const GenSpec& spec, Stream& rng) {
    if (spec.n < 0) throw std::invalid_argument("gen_pairs: negative n");
    const Matrix2 root = sqrt2x2(spec.sigma);
    std::vector<Pair> out(static_cast<std::size_t>(spec.n));
    for (auto& pair : out) {
        const double e1 = draw_error(spec.law, rng);
        const double e2 = draw_error(spec.law, rng);
        pair.x1 = spec.mu1 + root.m11 * e1 + root.m12 * e2;
        pair.x2 = spec.mu2 + root.m21 * e1 + root.m22 * e2;
    }
    return out;
}

MaskResult apply_mcar(std::span<const Pair> pairs, const MissingSpec& spec, Stream& rng) {
    if (!(spec.r >= 0.0 && spec.r < 1.0)) {
        throw std::invalid_argument("apply_mcar: r must lie in [0,1)");
    }
    const double keep = 1.0 - spec.r;
    MaskResult result;
    // attempt 0 is the initial mask; each further attempt is one redraw
    for (int attempt = 0; attempt <= spec.max_redraws; ++attempt) {
        std::vector<Pair> complete;
        std::vector<double> first_only;
        std::vector<double> second_only;
        std::size_t dropped = 0;
        for (const Pair& p : pairs) {
            const bool keep1 = rng.bernoulli(keep);
            const bool keep2 = rng.bernoulli(keep);
            if (keep1 && keep2) {
                complete.push_back(p);
            } else if (keep1) {
                first_only.push_back(p.x1);
            } else if (keep2) {
                second_only.push_back(p.x2);
            } else {
                ++dropped;
            }
        }
        PairedSample sample(std::move(complete), std::move(first_only), std::move(second_only),
                            dropped);
        if (validate(sample, spec.policy).empty()) {
            result.redraws = attempt;
            result.sample = std::move(sample);
            return result;
        }
    }
    result.redraws = spec.max_redraws;
    return result;
}

namespace {

struct Tally {
    long completed = 0;
    long rejections = 0;
    long skipped = 0;
    long redraws = 0;
};

Tally run_replications(TestId test, const GenSpec& gen, const MissingSpec& miss, long begin,
                       long end, int resamples, std::uint64_t base_seed, double alpha) {
    Tally tally;
    for (long k = begin; k < end; ++k) {
        const auto index = static_cast<std::uint64_t>(k);
        if (test == TestId::synthetic) {
            Stream rng(derive_seed(base_seed, index, kDataSalt));
            const double level = std::sqrt(alpha);
            const bool reject = rng.uniform01() <= level && rng.uniform01() <= level;
            ++tally.completed;
            tally.rejections += reject;
            continue;
        }

        Stream data_rng(derive_seed(base_seed, index, kDataSalt));
        const std::vector<Pair> pairs = gen_pairs(gen, data_rng);
        MaskResult masked = apply_mcar(pairs, miss, data_rng);
        tally.redraws += masked.redraws;
        if (!masked.sample) {
            ++tally.skipped;
            continue;
        }

        const PermutationPlan plan{Scheme::sign_flip, resamples,
                                   derive_seed(base_seed, index, kPermSalt)};
        bool reject;
        if (test == TestId::tml) {
            reject = run_tml(*masked.sample, Sidedness::two_sided, alpha, plan).reject;
        } else {
            Hypothesis hyp;
            switch (test) {
                case TestId::mu_asymptotic: hyp = Hypothesis::mu_asymptotic; break;
                case TestId::mu_permutation: hyp = Hypothesis::mu_permutation; break;
                case TestId::shift_w: hyp = Hypothesis::shift_w; break;
                case TestId::distribution_f: hyp = Hypothesis::distribution_f; break;
                default: hyp = Hypothesis::bf_p; break;
            }
            const AlphaSplit split = split_alpha(SplitStrategy::equal_sqrt, alpha,
                                                 masked.sample->n_c(), masked.sample->n_1(),
                                                 masked.sample->n_2());
            reject = run_mct(hyp, *masked.sample, Sidedness::two_sided, split, plan).reject;
        }
        ++tally.completed;
        tally.rejections += reject;
    }
    return tally;
}

}  // namespace

SizeEstimate estimate_size(TestId test, const GenSpec& gen, const MissingSpec& miss, long n_sim,
                           int resamples, std::uint64_t base_seed, double alpha, int threads) {
    if (n_sim < 1) throw std::invalid_argument("estimate_size: n_sim must be positive");

    SizeEstimate est;
    est.test = test;
    est.gen = gen;
    est.miss = miss;
    est.n_sim = n_sim;
    est.resamples = resamples;
    est.base_seed = base_seed;
    est.alpha = alpha;

    // without missingness there is no unpaired block to test
    if (test != TestId::synthetic && miss.r <= 0.0) {
        est.applicable = false;
        est.rate = std::numeric_limits<double>::quiet_NaN();
        est.mc_stderr = std::numeric_limits<double>::quiet_NaN();
        return est;
    }

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = static_cast<int>(std::max<long>(1, std::min<long>(n_threads, n_sim)));

    std::vector<Tally> partials(static_cast<std::size_t>(n_threads));
    if (n_threads == 1) {
        partials[0] = run_replications(test, gen, miss, 0, n_sim, resamples, base_seed, alpha);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(n_threads));
        const long chunk = (n_sim + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const long begin = t * chunk;
            const long end = std::min(n_sim, begin + chunk);
            workers.emplace_back([&, t, begin, end] {
                partials[static_cast<std::size_t>(t)] =
                    run_replications(test, gen, miss, begin, end, resamples, base_seed, alpha);
            });
        }
        for (auto& w : workers) w.join();
    }

    for (const Tally& t : partials) {
        est.completed += t.completed;
        est.rejections += t.rejections;
        est.skipped += t.skipped;
        est.redraws += t.redraws;
    }
    if (est.completed > 0) {
        est.rate = static_cast<double>(est.rejections) / static_cast<double>(est.completed);
        est.mc_stderr =
            std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(est.completed));
    } else {
        est.rate = std::numeric_limits<double>::quiet_NaN();
        est.mc_stderr = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

std::string to_string(ErrorLaw law) {
    switch (law) {
        case ErrorLaw::normal: return "normal";
        case ErrorLaw::exponential_std: return "exponential";
        case ErrorLaw::lognormal_std: return "lognormal";
        case ErrorLaw::cauchy: return "cauchy";
    }
    return "?";
}

std::string to_string(TestId test) {
    switch (test) {
        case TestId::mu_asymptotic: return "mu-asym";
        case TestId::mu_permutation: return "mu-perm";
        case TestId::shift_w: return "shift";
        case TestId::distribution_f: return "dist";
        case TestId::bf_p: return "bf-p";
        case TestId::tml: return "tml";
        case TestId::synthetic: return "synthetic";
    }
    return "?";
}

std::optional<ErrorLaw> error_law_from_string(const std::string& name) {
    if (name == "normal") return ErrorLaw::normal;
    if (name == "exponential") return ErrorLaw::exponential_std;
    if (name == "lognormal") return ErrorLaw::lognormal_std;
    if (name == "cauchy") return ErrorLaw::cauchy;
    return std::nullopt;
}

std::optional<TestId> test_id_from_string(const std::string& name) {
    if (name == "mu-asym") return TestId::mu_asymptotic;
    if (name == "mu-perm") return TestId::mu_permutation;
    if (name == "shift") return TestId::shift_w;
    if (name == "dist") return TestId::distribution_f;
    if (name == "bf-p") return TestId::bf_p;
    if (name == "tml") return TestId::tml;
    if (name == "synthetic") return TestId::synthetic;
    return std::nullopt;
}

}  // namespace mct
