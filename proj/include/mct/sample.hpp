#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mct {

/// One matched pair, both components observed.
struct Pair {
    double x1 = 0.0;
    double x2 = 0.0;

    friend bool operator==(const Pair&, const Pair&) = default;
};

/// A matched-pairs dataset split by observation pattern: fully observed
/// pairs, values seen in the first component only, and values seen in the
/// second component only. Immutable after construction.
class PairedSample {
  public:
    PairedSample() = default;

    /// Throws std::invalid_argument if any stored value is NaN; missingness
    /// is encoded by placement, never by sentinels.
    PairedSample(std::vector<Pair> complete, std::vector<double> first_only,
                 std::vector<double> second_only, std::size_t dropped_records = 0);

    const std::vector<Pair>& complete() const noexcept { return complete_; }
    const std::vector<double>& first_only() const noexcept { return first_only_; }
    const std::vector<double>& second_only() const noexcept { return second_only_; }

    std::size_t n_c() const noexcept { return complete_.size(); }
    std::size_t n_1() const noexcept { return first_only_.size(); }
    std::size_t n_2() const noexcept { return second_only_.size(); }
    /// Number of subjects, n = n_c + n_1 + n_2.
    std::size_t n_subjects() const noexcept { return n_c() + n_1() + n_2(); }
    /// Number of observations, N = 2*n_c + n_1 + n_2.
    std::size_t n_observations() const noexcept { return 2 * n_c() + n_1() + n_2(); }
    /// Records that had both components missing and were dropped on intake.
    std::size_t dropped_records() const noexcept { return dropped_; }

  private:
    std::vector<Pair> complete_;
    std::vector<double> first_only_;
    std::vector<double> second_only_;
    std::size_t dropped_ = 0;
};

/// Minimum block sizes an analysis needs. Every variance estimator in this
/// library wants at least two observations per block, hence the defaults.
struct MinCountPolicy {
    int min_nc = 2;
    int min_n1 = 2;
    int min_n2 = 2;
};

/// A raw record: each component present or missing.
using RawRecord = std::pair<std::optional<double>, std::optional<double>>;

/// Routes raw records into the complete/one-sided blocks. Records with both
/// components missing are dropped and counted in the result's diagnostics.
/// Throws std::invalid_argument on NaN in a non-missing slot.
PairedSample build_sample(const std::vector<RawRecord>& records);

struct Violation {
    enum class Field { complete_pairs, first_only, second_only };
    Field field;
    std::size_t count;
    int minimum;
};

std::string to_string(Violation::Field field);

/// Lists each block whose count falls below the policy minimum; an empty
/// result means the sample is analyzable under the policy.
std::vector<Violation> validate(const PairedSample& sample, const MinCountPolicy& policy);

}  // namespace mct
