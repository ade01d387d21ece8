#include "mct/sample.hpp"

#include <cmath>
#include <stdexcept>

namespace mct {

namespace {

void reject_nan(double v) {
    if (std::isnan(v)) {
        throw std::invalid_argument(
            "PairedSample: NaN in a non-missing slot; encode missingness by omission");
    }
}

}  // namespace

PairedSample::PairedSample(std::vector<Pair> complete, std::vector<double> first_only,
                           std::vector<double> second_only, std::size_t dropped_records)
    : complete_(std::move(complete)),
      first_only_(std::move(first_only)),
      second_only_(std::move(second_only)),
      dropped_(dropped_records) {
    for (const auto& p : complete_) {
        reject_nan(p.x1);
        reject_nan(p.x2);
    }
    for (double v : first_only_) reject_nan(v);
    for (double v : second_only_) reject_nan(v);
}

PairedSample build_sample(const std::vector<RawRecord>& records) {
    std::vector<Pair> complete;
    std::vector<double> first_only;
    std::vector<double> second_only;
    std::size_t dropped = 0;
    for (const auto& [x1, x2] : records) {
        if (x1 && x2) {
            complete.push_back({*x1, *x2});
        } else if (x1) {
            first_only.push_back(*x1);
        } else if (x2) {
            second_only.push_back(*x2);
        } else {
            ++dropped;
        }
    }
    return PairedSample(std::move(complete), std::move(first_only), std::move(second_only),
                        dropped);
}

std::string to_string(Violation::Field field) {
    switch (field) {
        case Violation::Field::complete_pairs: return "n_c";
        case Violation::Field::first_only: return "n_1";
        case Violation::Field::second_only: return "n_2";
    }
    return "?";
}

std::vector<Violation> validate(const PairedSample& sample, const MinCountPolicy& policy) {
    std::vector<Violation> out;
    if (sample.n_c() < static_cast<std::size_t>(policy.min_nc)) {
        out.push_back({Violation::Field::complete_pairs, sample.n_c(), policy.min_nc});
    }
    if (sample.n_1() < static_cast<std::size_t>(policy.min_n1)) {
        out.push_back({Violation::Field::first_only, sample.n_1(), policy.min_n1});
    }
    if (sample.n_2() < static_cast<std::size_t>(policy.min_n2)) {
        out.push_back({Violation::Field::second_only, sample.n_2(), policy.min_n2});
    }
    return out;
}

}  // namespace mct
