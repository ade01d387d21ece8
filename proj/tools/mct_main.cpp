#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mct/driver.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

long env_long(const char* name, long fallback) {
    if (const char* value = std::getenv(name)) {
        try {
            return std::stol(value);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string("environment variable ") + name +
                                     " is not an integer: " + value);
        }
    }
    return fallback;
}

template <class T>
T parse_or_throw(const std::string& value, std::optional<T> (*parser)(const std::string&),
                 const std::string& what) {
    if (auto parsed = parser(value)) return *parsed;
    throw std::runtime_error("invalid " + what + ": '" + value + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplication-combination tests for matched pairs with missing values"};
    app.require_subcommand(1);

    // defaults resolve as: built-in < environment < explicit flag
    const long env_nsim = env_long("MCT_NSIM", 2000);
    const int env_b_analyze = static_cast<int>(env_long("MCT_B", 1000));
    const int env_b_simulate = static_cast<int>(env_long("MCT_B", 500));

    auto* analyze_cmd =
        app.add_subcommand("analyze", "Test one hypothesis on a two-column pairs CSV");
    std::string an_input, an_out;
    std::string an_hypothesis = "bf-p", an_side = "two", an_split = "sqrt", an_format = "json";
    double an_alpha = 0.05;
    int an_b = env_b_analyze;
    std::uint64_t an_seed = 1;
    analyze_cmd->add_option("--input", an_input, "CSV with header x1,x2; empty cell or NA = missing")
        ->required();
    analyze_cmd
        ->add_option("--hypothesis", an_hypothesis, "mu-asym|mu-perm|shift|dist|bf-p")
        ->check(CLI::IsMember({"mu-asym", "mu-perm", "shift", "dist", "bf-p"}));
    analyze_cmd->add_option("--side", an_side, "greater|less|two")
        ->check(CLI::IsMember({"greater", "less", "two"}));
    analyze_cmd->add_option("--alpha", an_alpha, "overall level, in (0,1)");
    analyze_cmd->add_option("--split", an_split, "sqrt|prop-n|prop-N|gamma=G");
    analyze_cmd->add_option("--B", an_b, "permutation resamples (env MCT_B)");
    analyze_cmd->add_option("--seed", an_seed, "base seed for all resampling");
    analyze_cmd->add_option("--out", an_out, "output path (default: stdout)");
    analyze_cmd->add_option("--format", an_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* simulate_cmd =
        app.add_subcommand("simulate", "Monte-Carlo type-I-error sweep over a design grid");
    std::vector<std::string> sim_tests{"bf-p"};
    std::vector<std::string> sim_laws{"normal"};
    std::string sim_sigma = "s1", sim_out;
    std::vector<double> sim_rhos{-0.9, -0.5, 0.0, 0.5, 0.9};
    std::vector<int> sim_sizes{10, 20};
    std::vector<double> sim_rates{0.1, 0.3};
    long sim_nsim = env_nsim;
    int sim_b = env_b_simulate;
    std::uint64_t sim_seed = 1;
    int sim_threads = 0;
    bool sim_paper_scale = false;
    simulate_cmd
        ->add_option("--tests", sim_tests,
                     "comma list of mu-asym|mu-perm|shift|dist|bf-p|tml|synthetic")
        ->delimiter(',');
    simulate_cmd
        ->add_option("--laws", sim_laws, "comma list of normal|exponential|lognormal|cauchy")
        ->delimiter(',');
    simulate_cmd->add_option("--sigma", sim_sigma, "s1 (homoscedastic) | s2 (heteroscedastic)")
        ->check(CLI::IsMember({"s1", "s2"}));
    simulate_cmd->add_option("--rho", sim_rhos, "comma list of correlation factors in (-1,1)")
        ->delimiter(',');
    simulate_cmd->add_option("--n", sim_sizes, "comma list of subject counts")->delimiter(',');
    simulate_cmd->add_option("--r", sim_rates, "comma list of missing rates in [0,1)")
        ->delimiter(',');
    auto* nsim_opt =
        simulate_cmd->add_option("--nsim", sim_nsim, "replications per cell (env MCT_NSIM)");
    auto* b_opt = simulate_cmd->add_option("--B", sim_b, "permutation resamples (env MCT_B)");
    simulate_cmd->add_option("--seed", sim_seed, "base seed, shared across cells");
    simulate_cmd->add_option("--out", sim_out, "output CSV path (default: stdout)");
    simulate_cmd->add_option("--threads", sim_threads, "worker threads (0 = all cores)");
    simulate_cmd->add_flag("--paper-scale", sim_paper_scale,
                           "use 10000 replications and B=1000 unless given explicitly");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) {
            mct::io::AnalyzeRequest request;
            request.input_path = an_input;
            request.hypothesis = parse_or_throw(an_hypothesis, mct::io::hypothesis_from_string,
                                                "hypothesis");
            request.side = parse_or_throw(an_side, mct::io::side_from_string, "side");
            request.alpha = an_alpha;
            const auto split = mct::io::split_from_string(an_split);
            if (!split) throw std::runtime_error("invalid split: '" + an_split + "'");
            request.split = split->strategy;
            request.gamma = split->gamma;
            request.resamples = an_b;
            request.seed = an_seed;
            request.format = an_format == "csv" ? mct::io::ReportFormat::csv
                                                : mct::io::ReportFormat::json;
            const auto report = mct::io::analyze(request);
            if (request.format == mct::io::ReportFormat::json) {
                write_output(an_out, report.dump(2) + "\n");
            } else {
                write_output(an_out, mct::io::analyze_report_csv(report));
            }
        } else {
            if (sim_paper_scale) {
                if (nsim_opt->count() == 0) sim_nsim = 10000;
                if (b_opt->count() == 0) sim_b = 1000;
            }
            mct::io::SimulateRequest request;
            request.tests.clear();
            for (const auto& name : sim_tests) {
                request.tests.push_back(
                    parse_or_throw(name, mct::test_id_from_string, "test"));
            }
            request.laws.clear();
            for (const auto& name : sim_laws) {
                request.laws.push_back(
                    parse_or_throw(name, mct::error_law_from_string, "law"));
            }
            request.sigma_setting = sim_sigma == "s2" ? 2 : 1;
            request.rhos = sim_rhos;
            request.sizes = sim_sizes;
            request.miss_rates = sim_rates;
            request.n_sim = sim_nsim;
            request.resamples = sim_b;
            request.seed = sim_seed;
            request.threads = sim_threads;
            const auto rows = mct::io::run_simulate(request);
            write_output(sim_out, mct::io::simulate_csv(rows));
        }
    } catch (const std::exception& e) {
        nlohmann::ordered_json error;
        error["error"] = e.what();
        std::cout << error.dump() << "\n";
        return 1;
    }
    return 0;
}
