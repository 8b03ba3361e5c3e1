#include "rsaudit/commands.hpp"
#include "rsaudit/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace rsaudit;

std::vector<ReportFormat> parse_formats(const std::vector<std::string> &names) {
    static const std::map<std::string, std::vector<ReportFormat>> table{
        {"json", {ReportFormat::structured}},
        {"markdown", {ReportFormat::markdown}},
        {"md", {ReportFormat::markdown}},
        {"csv", {ReportFormat::csv_bundle}},
        {"all", {ReportFormat::structured, ReportFormat::markdown, ReportFormat::csv_bundle}},
    };
    std::vector<ReportFormat> out;
    for (const auto &n : names) {
        for (const auto f : table.at(n)) {
            if (std::find(out.begin(), out.end(), f) == out.end()) {
                out.push_back(f);
            }
        }
    }
    return out;
}

std::pair<std::string, std::string> parse_joint(const std::string &text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == text.size()) {
        throw std::invalid_argument("--joint expects A,B; got '" + text + "'");
    }
    return {text.substr(0, comma), text.substr(comma + 1)};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"rsaudit: rough-set audit of concept/label inconsistency"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);

    AuditCommand audit;
    std::string config;
    std::vector<std::string> formats;
    std::vector<std::string> joints;
    auto *a = app.add_subcommand("audit", "partition, regions, ceiling, statistics and reports");
    a->add_option("-i,--input", audit.input, "dataset CSV")->required();
    a->add_option("-c,--config", config, "ingestion config JSON (default: $RSAUDIT_CONFIG, then built-in)");
    a->add_option("-o,--out-dir", audit.out_dir, "report directory")->capture_default_str();
    a->add_option("-f,--format", formats, "json, markdown, csv or all (repeatable)")
        ->check(CLI::IsMember({"json", "markdown", "md", "csv", "all"}));
    a->add_option("-k,--top-k", audit.report.top_k, "ambiguous profiles to list")->capture_default_str()->check(CLI::NonNegativeNumber);
    a->add_option("--confidence", audit.report.confidence, "Wilson interval level")->capture_default_str()->check(CLI::Range(0.5, 0.999999));
    a->add_option("--bin-width", audit.report.bin_width, "conflict histogram bin width")->capture_default_str()->check(CLI::Range(0.001, 0.5));
    a->add_option("--joint", joints, "attribute pair A,B for a joint matrix (repeatable)");
    a->add_flag("--no-default-joints", [&](std::int64_t) { audit.report.default_joints = false; }, "skip the built-in joint pairs");

    FilterCommand filter;
    std::string filter_config;
    std::string strategy = "symmetric";
    auto *f = app.add_subcommand("filter", "drop boundary records and export the filtered dataset");
    f->add_option("-i,--input", filter.input, "dataset CSV")->required();
    f->add_option("-c,--config", filter_config, "ingestion config JSON");
    f->add_option("-o,--out-dir", filter.out_dir, "output directory")->capture_default_str();
    f->add_option("-s,--strategy", strategy, "symmetric or asymmetric")->capture_default_str()->check(CLI::IsMember({"symmetric", "asymmetric"}));
    f->add_flag("--split-aware", filter.split_aware, "filter each split separately with a global boundary");

    SynthCommand synth;
    std::string spec_path;
    std::uint64_t seed = 0;
    auto *s = app.add_subcommand("synth", "generate a dataset with planted inconsistency");
    s->add_option("--spec", spec_path, "plan JSON");
    auto *seed_opt = s->add_option("--seed", seed, "RNG seed (required unless the spec has one)");
    s->add_option("-o,--output", synth.output, "dataset CSV path")->capture_default_str();
    s->add_option("--attributes", synth.plan.attributes, "random plan: attribute count")->capture_default_str()->check(CLI::Range(1, 32));
    s->add_option("--domain-size", synth.plan.domain_size, "random plan: values per attribute")->capture_default_str()->check(CLI::Range(1, 64));
    s->add_option("--profiles", synth.plan.profiles, "random plan: profile count")->capture_default_str()->check(CLI::Range(1, 100000));
    s->add_option("--max-count", synth.plan.max_count, "random plan: max records per label per profile")->capture_default_str()->check(CLI::Range(1, 100000));
    s->add_option("--mixed", synth.plan.mixed_probability, "random plan: probability a profile is inconsistent")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    s->add_flag("--splits", synth.splits, "assign train/valid/test tags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        if (a->parsed()) {
            if (!config.empty()) {
                audit.config = config;
            }
            if (!formats.empty()) {
                audit.formats = parse_formats(formats);
            }
            for (const auto &j : joints) {
                audit.report.joints.push_back(parse_joint(j));
            }
            run_audit(audit, std::cerr);
        } else if (f->parsed()) {
            if (!filter_config.empty()) {
                filter.config = filter_config;
            }
            filter.strategy = *parse_strategy(strategy);
            run_filter(filter, std::cerr);
        } else if (s->parsed()) {
            if (!spec_path.empty()) {
                synth.spec = spec_path;
            }
            if (seed_opt->count() > 0) {
                synth.seed = seed;
            } else if (spec_path.empty()) {
                std::cerr << "error: synth needs --seed\n";
                return static_cast<int>(ExitCode::usage);
            }
            run_synth(synth, std::cerr);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(exit_code_for(e));
    }
    return 0;
}
