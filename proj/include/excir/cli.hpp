#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "excir/csv.hpp"
#include "excir/report_io.hpp"
#include "excir/scores.hpp"
#include "excir/transfer.hpp"

namespace excir::cli {

namespace detail {

struct common_opts {
    std::string input;
    std::string target;
    std::vector<std::string> class_cols;
    std::string groups_path;
    std::string weights_path;
    std::string center = "midmean";
    std::string sketch = "exact";
    double epsilon = 0.01;
    std::uint64_t seed = 0;
    std::size_t k = 8;
    std::string format = "json";
    std::string output;
};

inline centering_spec make_spec(const common_opts& o) {
    centering_spec spec;
    if (o.center == "midmean")
        spec.method = center_method::midmean;
    else if (o.center == "median")
        spec.method = center_method::median;
    else if (o.center == "mean")
        spec.method = center_method::mean;
    else
        raise(errc::invalid_input, "unknown centering method '" + o.center + "'");
    if (o.sketch == "exact")
        spec.source = center_source::exact;
    else if (o.sketch == "gk")
        spec.source = center_source::sketch;
    else
        raise(errc::invalid_input, "unknown sketch mode '" + o.sketch + "'");
    spec.epsilon = o.epsilon;
    spec.validate();
    return spec;
}

inline void write_payload(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) raise(errc::io_error, "cannot open '" + output_path + "' for writing");
    out << payload;
    out.flush();
    if (!out) raise(errc::io_error, "cannot write '" + output_path + "'");
}

inline void add_centering_flags(CLI::App* cmd, common_opts& o) {
    cmd->add_option("--center", o.center, "centering method: midmean|median|mean")
        ->check(CLI::IsMember({"midmean", "median", "mean"}));
    cmd->add_option("--sketch", o.sketch, "quantile source: exact|gk")
        ->check(CLI::IsMember({"exact", "gk"}));
    cmd->add_option("--epsilon", o.epsilon, "GK sketch rank-error bound (0, 0.5)");
}

inline void add_output_flags(CLI::App* cmd, common_opts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", o.output, "output path (default: stdout)");
}

inline group_family maybe_load_groups(const common_opts& o, const data_table& t) {
    if (o.groups_path.empty()) return {};
    return load_groups(o.groups_path, t.feature_names());
}

inline std::optional<weight_vector> maybe_load_weights(const common_opts& o) {
    if (o.weights_path.empty()) return std::nullopt;
    return load_weights(o.weights_path);
}

}  // namespace detail

// Subcommands: score, block, classcond, transfer, agree.
// Exit codes: 0 success, 2 bad input or usage, 1 internal failure.
inline int run(std::vector<std::string> args) {
    CLI::App app{"Correlation-impact-ratio feature attribution"};
    app.require_subcommand(1);

    detail::common_opts o;
    std::vector<double> fractions = {0.2, 0.3, 0.4, 0.5, 0.75, 1.0};
    std::size_t repeats = 1;
    double target_jaccard = 0.9;
    std::string agree_a, agree_b;

    auto* score = app.add_subcommand("score", "Per-feature CIR scores (plus optional groups)");
    score->add_option("--input", o.input, "CSV table")->required();
    score->add_option("--target", o.target, "output column name")->required();
    score->add_option("--groups", o.groups_path, "JSON group spec");
    score->add_option("--weights", o.weights_path, "per-row weights file");
    score->add_option("--seed", o.seed, "seed recorded in report meta");
    score->add_option("--k", o.k, "top-k size recorded for downstream use");
    detail::add_centering_flags(score, o);
    detail::add_output_flags(score, o);

    auto* block = app.add_subcommand("block", "Groupwise CIR scores only");
    block->add_option("--input", o.input, "CSV table")->required();
    block->add_option("--target", o.target, "output column name")->required();
    block->add_option("--groups", o.groups_path, "JSON group spec")->required();
    block->add_option("--weights", o.weights_path, "per-row weights file");
    block->add_option("--seed", o.seed, "seed recorded in report meta");
    detail::add_centering_flags(block, o);
    detail::add_output_flags(block, o);

    auto* classcond = app.add_subcommand("classcond", "One report per class score column");
    classcond->add_option("--input", o.input, "CSV table")->required();
    classcond->add_option("--class-cols", o.class_cols, "class score column names")
        ->required()
        ->delimiter(',');
    classcond->add_option("--groups", o.groups_path, "JSON group spec");
    classcond->add_option("--seed", o.seed, "seed recorded in report meta");
    detail::add_centering_flags(classcond, o);
    detail::add_output_flags(classcond, o);

    auto* transfer = app.add_subcommand("transfer", "Subsampled runtime/agreement curve");
    transfer->add_option("--input", o.input, "CSV table")->required();
    transfer->add_option("--target", o.target, "output column name")->required();
    transfer->add_option("--groups", o.groups_path, "JSON group spec");
    transfer->add_option("--fractions", fractions, "row fractions; 1.0 is added when missing")
        ->delimiter(',');
    transfer->add_option("--repeats", repeats, "resampled repeats per fraction");
    transfer->add_option("--seed", o.seed, "subsampling seed");
    transfer->add_option("--k", o.k, "top-k size for Jaccard");
    transfer->add_option("--target-jaccard", target_jaccard, "knee target for top-k overlap");
    detail::add_centering_flags(transfer, o);
    detail::add_output_flags(transfer, o);

    auto* agree = app.add_subcommand("agree", "Agreement metrics between two score reports");
    agree->add_option("--a", agree_a, "first JSON score report")->required();
    agree->add_option("--b", agree_b, "second JSON score report")->required();
    agree->add_option("--k", o.k, "top-k size for Jaccard");
    detail::add_output_flags(agree, o);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("excir");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (score->parsed()) {
            const auto table = load_table(o.input, o.target);
            const auto groups = detail::maybe_load_groups(o, table);
            const auto weights = detail::maybe_load_weights(o);
            const auto spec = detail::make_spec(o);
            const auto report =
                cir_scores(table, o.target, groups, spec, weights ? &*weights : nullptr);
            detail::write_payload(o.format == "csv" ? score_report_csv(report)
                                                    : score_report_json(report, o.seed),
                                  o.output);
        } else if (block->parsed()) {
            const auto table = load_table(o.input, o.target);
            const auto groups = detail::maybe_load_groups(o, table);
            const auto weights = detail::maybe_load_weights(o);
            const auto spec = detail::make_spec(o);
            const auto report =
                block_cir(table, o.target, groups, spec, weights ? &*weights : nullptr);
            detail::write_payload(o.format == "csv" ? score_report_csv(report)
                                                    : score_report_json(report, o.seed),
                                  o.output);
        } else if (classcond->parsed()) {
            const auto table = load_table(o.input, "", o.class_cols);
            const auto groups = detail::maybe_load_groups(o, table);
            const auto spec = detail::make_spec(o);
            const auto reports = class_conditioned_cir(table, o.class_cols, groups, spec);
            detail::write_payload(o.format == "csv" ? class_reports_csv(reports)
                                                    : class_reports_json(reports, o.seed),
                                  o.output);
        } else if (transfer->parsed()) {
            const auto table = load_table(o.input, o.target);
            const auto groups = detail::maybe_load_groups(o, table);
            const auto spec = detail::make_spec(o);
            transfer_config config;
            config.fractions = fractions;
            config.seed = o.seed;
            config.k = o.k;
            config.repeats = repeats;
            const auto curve = run_transfer(table, o.target, groups, spec, config);
            const auto knee = pareto_knee(curve, target_jaccard);
            if (o.format == "csv") {
                detail::write_payload(transfer_curve_csv(curve), o.output);
                std::cerr << "knee: fraction " << format_double(knee.fraction)
                          << (knee.no_knee ? " (no fraction met the target)" : "")
                          << " for target jaccard " << format_double(target_jaccard) << "\n";
            } else {
                detail::write_payload(transfer_curve_json(curve, knee, target_jaccard), o.output);
            }
        } else if (agree->parsed()) {
            const auto ra = parse_score_report(excir::detail::read_file(agree_a), agree_a);
            const auto rb = parse_score_report(excir::detail::read_file(agree_b), agree_b);
            if (ra.features.size() != rb.features.size())
                raise(errc::invalid_input, "reports score different feature sets");
            std::vector<double> va, vb;
            va.reserve(ra.features.size());
            vb.reserve(rb.features.size());
            for (std::size_t i = 0; i < ra.features.size(); ++i) {
                if (ra.features[i].first != rb.features[i].first)
                    raise(errc::invalid_input, "reports score different feature sets");
                va.push_back(ra.features[i].second);
                vb.push_back(rb.features[i].second);
            }
            const auto report = compare_scores(va, vb, o.k);
            detail::write_payload(
                o.format == "csv" ? agreement_csv(report) : agreement_json(report), o.output);
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace excir::cli
