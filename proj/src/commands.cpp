#include "rsaudit/commands.hpp"

#include "rsaudit/error.hpp"
#include "rsaudit/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsaudit {

ExitCode exit_code_for(const std::exception &e) noexcept {
    if (dynamic_cast<const ParseError *>(&e) != nullptr) {
        return ExitCode::parse;
    }
    if (dynamic_cast<const SchemaError *>(&e) != nullptr || dynamic_cast<const ContractError *>(&e) != nullptr ||
        dynamic_cast<const SpecError *>(&e) != nullptr) {
        return ExitCode::schema;
    }
    if (dynamic_cast<const IoError *>(&e) != nullptr) {
        return ExitCode::io;
    }
    if (dynamic_cast<const std::invalid_argument *>(&e) != nullptr || dynamic_cast<const std::domain_error *>(&e) != nullptr) {
        return ExitCode::usage;
    }
    return ExitCode::schema;
}

IngestConfig resolve_config(const std::optional<std::filesystem::path> &flag) {
    if (flag) {
        return load_config(*flag);
    }
    if (const char *env = std::getenv(config_env_var); env != nullptr && *env != '\0') {
        return load_config(env);
    }
    return IngestConfig{};
}

Dataset load_validated(const std::filesystem::path &input, const IngestConfig &config) {
    Dataset d = load_dataset(input, config);
    require_nonempty(d, input.string());
    const auto findings = validate(d);
    if (!findings.empty()) {
        std::string msg = input.string() + ": " + std::to_string(findings.size()) + " validation finding(s)";
        for (std::size_t i = 0; i < findings.size() && i < 10; ++i) {
            msg += "\n  [" + std::string(to_string(findings[i].kind)) + "] " + findings[i].message;
        }
        throw SchemaError(msg);
    }
    return d;
}

AuditReport run_audit(const AuditCommand &cmd, std::ostream &log) {
    const Dataset dataset = load_validated(cmd.input, resolve_config(cmd.config));
    AuditReport report = build_audit_report(dataset, cmd.report);
    for (const auto &path : write_report(report, cmd.out_dir, cmd.formats)) {
        log << "wrote " << path.string() << "\n";
    }
    log << "records " << report.universe_size << ", profiles " << report.profile_count << ", inconsistent " << report.inconsistent_count
        << ", boundary " << report.boundary_count << "\n";
    log << "gamma " << report.gamma.numerator() << "/" << report.gamma.denominator() << " = " << to_decimal(report.gamma, 4) << ", ceiling "
        << report.ceiling.value.numerator() << "/" << report.ceiling.value.denominator() << " = " << to_decimal(report.ceiling.value, 4) << "\n";
    return report;
}

std::vector<std::pair<std::string, std::size_t>> run_filter(const FilterCommand &cmd, std::ostream &log) {
    const Dataset dataset = load_validated(cmd.input, resolve_config(cmd.config));
    std::vector<std::pair<std::string, std::size_t>> written;
    const std::string strategy(to_string(cmd.strategy));
    if (cmd.split_aware) {
        const auto parts = filter_split_aware(dataset, cmd.strategy);
        for (const auto &[split, result] : parts) {
            const Dataset source = dataset.split(split);
            const auto baseline = composition_metrics(source, source.size(), source.count(Label::positive), false);
            const std::string stem = strategy + "_" + std::string(to_string(split));
            const auto paths = export_dataset(result, cmd.out_dir, stem, baseline);
            log << "wrote " << paths.data.string() << " (" << result.retained.size() << " rows, " << result.removed.size() << " removed)\n";
            written.emplace_back(stem, result.retained.size());
        }
    } else {
        const Analysis analysis = analyze(dataset);
        const FilterResult result = apply_filter(dataset, analysis.regions, cmd.strategy);
        const auto baseline = composition_metrics(dataset, dataset.size(), dataset.count(Label::positive), false);
        const auto paths = export_dataset(result, cmd.out_dir, strategy, baseline);
        log << "wrote " << paths.data.string() << " (" << result.retained.size() << " rows, " << result.removed.size() << " removed)\n";
        log << "imbalance " << result.metrics.imbalance_ratio << ", residual gamma " << to_decimal(result.metrics.gamma, 4) << ", residual ceiling "
            << to_decimal(result.metrics.ceiling, 4) << "\n";
        written.emplace_back(strategy, result.retained.size());
    }
    return written;
}

SynthOutput run_synth(const SynthCommand &cmd, std::ostream &log) {
    SynthSpec spec;
    if (cmd.spec) {
        std::ifstream in(*cmd.spec);
        if (!in) {
            throw IoError("cannot open synth spec " + cmd.spec->string());
        }
        std::stringstream buf;
        buf << in.rdbuf();
        spec = parse_synth_spec(buf.str(), cmd.seed);
    } else {
        if (!cmd.seed) {
            throw SpecError("synth needs --seed");
        }
        spec = random_plan(*cmd.seed, cmd.plan);
    }
    spec.assign_splits = spec.assign_splits || cmd.splits;
    SynthOutput out = generate_synthetic(spec);

    if (cmd.output.has_parent_path()) {
        ensure_directory(cmd.output.parent_path());
    }
    std::ostringstream data;
    write_dataset(out.dataset, data);
    write_file_atomic(cmd.output, data.str());
    std::filesystem::path sidecar = cmd.output;
    sidecar.replace_extension(".expected.json");
    write_file_atomic(sidecar, synth_sidecar(out));
    log << "wrote " << cmd.output.string() << " (" << out.dataset.size() << " rows) and " << sidecar.string() << "\n";
    return out;
}

}  // namespace rsaudit
