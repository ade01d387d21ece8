#include "mct/driver.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mct/pairs_csv.hpp"

namespace mct::io {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
    if (std::isnan(v)) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ordered_json json_number(double v) {
    // JSON has no representation for non-finite values; the degenerate flag
    // carries the information
    if (!std::isfinite(v)) return nullptr;
    return v;
}

ordered_json json_optional(const std::optional<double>& v) {
    if (!v) return nullptr;
    return json_number(*v);
}

ordered_json component_json(const TestOutcome& outcome) {
    ordered_json j;
    j["method"] = outcome.method;
    j["statistic"] = json_number(outcome.statistic.value);
    j["df"] = json_optional(outcome.statistic.df);
    j["effect"] = json_optional(outcome.statistic.effect);
    j["degenerate"] = outcome.statistic.degenerate;
    j["p_value"] = outcome.p_value;
    j["p_greater"] = outcome.p_all.greater;
    j["p_less"] = outcome.p_all.less;
    j["p_two_sided"] = outcome.p_all.two_sided;
    j["level"] = outcome.level;
    j["reject"] = outcome.reject;
    if (outcome.calibration.kind == Calibration::Kind::asymptotic) {
        j["calibration"] = {
            {"type", "asymptotic"},
            {"reference",
             outcome.calibration.reference == ReferenceKind::normal ? "normal" : "t"}};
    } else {
        j["calibration"] = {{"type", "permutation"},
                            {"resamples", outcome.calibration.resamples},
                            {"seed", outcome.calibration.seed}};
    }
    return j;
}

std::string csv_cell(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    return v.get<std::string>();
}

}  // namespace

ordered_json analyze(const AnalyzeRequest& request) {
    const PairedSample sample = parse_pairs_csv(request.input_path);
    const AlphaSplit split = split_alpha(request.split, request.alpha, sample.n_c(), sample.n_1(),
                                         sample.n_2(), request.gamma);
    const PermutationPlan plan{Scheme::sign_flip, request.resamples, request.seed};
    const MctOutcome outcome =
        run_mct(request.hypothesis, sample, request.side, split, plan);

    ordered_json report;
    report["format_version"] = 1;
    report["command"] = "analyze";
    report["config"] = {{"input", request.input_path},
                        {"hypothesis", to_string(request.hypothesis)},
                        {"side", to_string(request.side)},
                        {"alpha", request.alpha},
                        {"split", to_string(request.split)},
                        {"gamma", request.gamma ? ordered_json(*request.gamma) : nullptr},
                        {"resamples", request.resamples},
                        {"seed", request.seed}};
    report["counts"] = {{"n_c", sample.n_c()},       {"n_1", sample.n_1()},
                        {"n_2", sample.n_2()},       {"n", sample.n_subjects()},
                        {"N", sample.n_observations()}, {"dropped_records", sample.dropped_records()}};
    report["split"] = {{"strategy", to_string(split.strategy)},
                       {"alpha", split.alpha},
                       {"alpha1", split.alpha1},
                       {"alpha2", split.alpha2},
                       {"exponent1", split.exponent1}};
    report["components"] = {{"complete", component_json(outcome.complete_part)},
                            {"incomplete", component_json(outcome.incomplete_part)}};

    const double e = split.exponent1;
    report["combined"] = {
        {"reject", outcome.reject},
        {"p_value", outcome.p_value},
        {"p_greater", mct_p_value(outcome.complete_part.p_all.greater,
                                  outcome.incomplete_part.p_all.greater, e)},
        {"p_less",
         mct_p_value(outcome.complete_part.p_all.less, outcome.incomplete_part.p_all.less, e)},
        {"p_two_sided", mct_p_value(outcome.complete_part.p_all.two_sided,
                                    outcome.incomplete_part.p_all.two_sided, e)}};
    report["diagnostics"] = {
        {"dropped_records", sample.dropped_records()},
        {"complete_degenerate", outcome.complete_part.statistic.degenerate},
        {"incomplete_degenerate", outcome.incomplete_part.statistic.degenerate},
        {"direction_disagreement", outcome.direction_disagreement}};
    return report;
}

std::string analyze_report_csv(const ordered_json& report) {
    std::ostringstream out;
    out << "part,method,statistic,df,effect,p_greater,p_less,p_two_sided,p_value,level,reject,"
           "calibration,resamples,seed\n";
    for (const char* part : {"complete", "incomplete"}) {
        const auto& c = report.at("components").at(part);
        const auto& cal = c.at("calibration");
        const bool perm = cal.at("type") == "permutation";
        out << part << ',' << csv_cell(c.at("method")) << ',' << csv_cell(c.at("statistic")) << ','
            << csv_cell(c.at("df")) << ',' << csv_cell(c.at("effect")) << ','
            << csv_cell(c.at("p_greater")) << ',' << csv_cell(c.at("p_less")) << ','
            << csv_cell(c.at("p_two_sided")) << ',' << csv_cell(c.at("p_value")) << ','
            << csv_cell(c.at("level")) << ',' << csv_cell(c.at("reject")) << ','
            << csv_cell(cal.at("type")) << ',' << (perm ? csv_cell(cal.at("resamples")) : "") << ','
            << (perm ? csv_cell(cal.at("seed")) : "") << '\n';
    }
    const auto& combined = report.at("combined");
    const auto& config = report.at("config");
    out << "combined," << csv_cell(config.at("hypothesis")) << ",,,,"
        << csv_cell(combined.at("p_greater")) << ',' << csv_cell(combined.at("p_less")) << ','
        << csv_cell(combined.at("p_two_sided")) << ',' << csv_cell(combined.at("p_value")) << ','
        << csv_cell(config.at("alpha")) << ',' << csv_cell(combined.at("reject")) << ",,,"
        << csv_cell(config.at("seed")) << '\n';
    return out.str();
}

std::vector<SimRow> run_simulate(const SimulateRequest& request) {
    if (request.sigma_setting != 1 && request.sigma_setting != 2) {
        throw std::invalid_argument("run_simulate: sigma setting must be 1 or 2");
    }
    std::vector<SimRow> rows;
    for (const TestId test : request.tests) {
        for (const ErrorLaw law : request.laws) {
            for (const double rho : request.rhos) {
                for (const int n : request.sizes) {
                    for (const double r : request.miss_rates) {
                        GenSpec gen;
                        gen.law = law;
                        gen.n = n;
                        gen.sigma = request.sigma_setting == 1 ? sigma_homoscedastic(rho)
                                                               : sigma_heteroscedastic(rho);
                        MissingSpec miss;
                        miss.r = r;
                        SimRow row{test, law, request.sigma_setting, rho, n, r, SizeEstimate{}};
                        row.estimate =
                            estimate_size(test, gen, miss, request.n_sim, request.resamples,
                                          request.seed, 0.05, request.threads);
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return rows;
}

std::string simulate_csv(const std::vector<SimRow>& rows) {
    std::ostringstream out;
    out << "format_version,test,error_law,sigma,rho,n,r,n_sim,B,rejections,rate,mc_stderr,"
           "redraws,skipped,seed,status\n";
    for (const SimRow& row : rows) {
        const SizeEstimate& est = row.estimate;
        out << 1 << ',' << to_string(row.test) << ',' << to_string(row.law) << ",s"
            << row.sigma_setting << ',' << fmt(row.rho) << ',' << row.n << ',' << fmt(row.r) << ','
            << est.n_sim << ',' << est.resamples << ',';
        if (est.applicable) {
            out << est.rejections << ',' << fmt(est.rate) << ',' << fmt(est.mc_stderr) << ','
                << est.redraws << ',' << est.skipped << ',' << est.base_seed << ",ok\n";
        } else {
            out << "NA,NA,NA,NA,NA," << est.base_seed << ",inapplicable\n";
        }
    }
    return out.str();
}

std::optional<Hypothesis> hypothesis_from_string(const std::string& name) {
    if (name == "mu-asym") return Hypothesis::mu_asymptotic;
    if (name == "mu-perm") return Hypothesis::mu_permutation;
    if (name == "shift") return Hypothesis::shift_w;
    if (name == "dist") return Hypothesis::distribution_f;
    if (name == "bf-p") return Hypothesis::bf_p;
    return std::nullopt;
}

std::optional<Sidedness> side_from_string(const std::string& name) {
    if (name == "greater") return Sidedness::greater;
    if (name == "less") return Sidedness::less;
    if (name == "two") return Sidedness::two_sided;
    return std::nullopt;
}

std::optional<SplitChoice> split_from_string(const std::string& name) {
    if (name == "sqrt") return SplitChoice{SplitStrategy::equal_sqrt, std::nullopt};
    if (name == "prop-n") return SplitChoice{SplitStrategy::prop_n, std::nullopt};
    if (name == "prop-N") return SplitChoice{SplitStrategy::prop_N, std::nullopt};
    if (name.rfind("gamma=", 0) == 0) {
        const std::string value = name.substr(6);
        double gamma = 0.0;
        const auto [ptr, ec] =
            std::from_chars(value.data(), value.data() + value.size(), gamma);
        if (ec != std::errc{} || ptr != value.data() + value.size()) return std::nullopt;
        return SplitChoice{SplitStrategy::explicit_gamma, gamma};
    }
    return std::nullopt;
}

}  // namespace mct::io
