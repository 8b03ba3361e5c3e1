#pragma once

#include "rsaudit/dataset.hpp"
#include "rsaudit/filtering.hpp"
#include "rsaudit/report.hpp"
#include "rsaudit/synth.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rsaudit {

inline constexpr const char *version_string = "0.3.0";

/// Environment variable naming the default ingestion config.
inline constexpr const char *config_env_var = "RSAUDIT_CONFIG";

enum class ExitCode : int { ok = 0, usage = 2, parse = 3, schema = 4, io = 5 };

/// Maps a library exception onto the process exit-code contract.
[[nodiscard]] ExitCode exit_code_for(const std::exception &e) noexcept;

/// --config wins, then $RSAUDIT_CONFIG, then built-in defaults.
[[nodiscard]] IngestConfig resolve_config(const std::optional<std::filesystem::path> &flag);

/// Loads and validates; validation findings raise SchemaError.
[[nodiscard]] Dataset load_validated(const std::filesystem::path &input, const IngestConfig &config);

struct AuditCommand {
    std::filesystem::path input;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir = ".";
    std::vector<ReportFormat> formats{ReportFormat::structured, ReportFormat::markdown};
    ReportOptions report;
};

AuditReport run_audit(const AuditCommand &cmd, std::ostream &log);

struct FilterCommand {
    std::filesystem::path input;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir = ".";
    Strategy strategy = Strategy::symmetric;
    bool split_aware = false;
};

/// Returns the retained-record count per written file stem.
std::vector<std::pair<std::string, std::size_t>> run_filter(const FilterCommand &cmd, std::ostream &log);

struct SynthCommand {
    std::optional<std::filesystem::path> spec;
    std::optional<std::uint64_t> seed;
    std::filesystem::path output = "synth.csv";  ///< sidecar goes next to it as <stem>.expected.json
    RandomPlanOptions plan;
    bool splits = false;
};

SynthOutput run_synth(const SynthCommand &cmd, std::ostream &log);

}  // namespace rsaudit
