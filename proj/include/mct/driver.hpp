#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mct/mct.hpp"
#include "mct/simulation.hpp"

namespace mct::io {

enum class ReportFormat { json, csv };

struct AnalyzeRequest {
    std::string input_path;
    Hypothesis hypothesis = Hypothesis::bf_p;
    Sidedness side = Sidedness::two_sided;
    double alpha = 0.05;
    SplitStrategy split = SplitStrategy::equal_sqrt;
    std::optional<double> gamma;  // explicit_gamma only
    int resamples = 1000;
    std::uint64_t seed = 1;
    ReportFormat format = ReportFormat::json;
};

/// Runs one analysis and assembles the full report: counts, split, both
/// component tests with p-values in every direction, the combined decision,
/// and diagnostics. The report embeds the resolved configuration and is
/// byte-identical across reruns with the same request.
nlohmann::ordered_json analyze(const AnalyzeRequest& request);

/// Flat projection of an analyze report: one row per component plus a
/// combined row.
std::string analyze_report_csv(const nlohmann::ordered_json& report);

struct SimulateRequest {
    std::vector<TestId> tests{TestId::bf_p};
    std::vector<ErrorLaw> laws{ErrorLaw::normal};
    int sigma_setting = 1;  // 1 homoscedastic, 2 heteroscedastic
    std::vector<double> rhos{-0.9, -0.5, 0.0, 0.5, 0.9};
    std::vector<int> sizes{10, 20};
    std::vector<double> miss_rates{0.1, 0.3};
    long n_sim = 2000;
    int resamples = 500;
    std::uint64_t seed = 1;
    int threads = 0;
};

struct SimRow {
    TestId test;
    ErrorLaw law;
    int sigma_setting;
    double rho;
    int n;
    double r;
    SizeEstimate estimate;
};

/// Runs every cell of the grid (tests x laws x rhos x sizes x miss rates, in
/// that nesting order). All cells share the same base seed, so tests compare
/// on common simulated data.
std::vector<SimRow> run_simulate(const SimulateRequest& request);

/// Long-format CSV, one row per cell; inapplicable cells carry NA estimates
/// and status `inapplicable`.
std::string simulate_csv(const std::vector<SimRow>& rows);

std::optional<Hypothesis> hypothesis_from_string(const std::string& name);
std::optional<Sidedness> side_from_string(const std::string& name);

struct SplitChoice {
    SplitStrategy strategy;
    std::optional<double> gamma;
};
/// Accepts `sqrt`, `prop-n`, `prop-N`, or `gamma=G` with G in (0,1).
std::optional<SplitChoice> split_from_string(const std::string& name);

}  // namespace mct::io
