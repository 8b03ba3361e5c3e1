#pragma once

#include "rsaudit/dataset.hpp"
#include "rsaudit/filtering.hpp"
#include "rsaudit/rational.hpp"
#include "rsaudit/roughset.hpp"
#include "rsaudit/stats.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rsaudit {

inline constexpr int report_schema_version = 1;

struct ReportOptions {
    std::size_t top_k = 5;
    double confidence = 0.95;
    double bin_width = 0.05;
    std::vector<std::pair<std::string, std::string>> joints;  ///< explicit attribute pairs
    bool default_joints = true;  ///< add the veil x globules and network x streaks pairs when present
};

struct FilterComparisonRow {
    std::string variant;  ///< "no_filter", "asymmetric", "symmetric"
    CompositionMetrics metrics;

    friend bool operator==(const FilterComparisonRow &, const FilterComparisonRow &) = default;
};

/// Everything the audit computes for one dataset. Every number comes from a library operation.
struct AuditReport {
    int schema_version = report_schema_version;
    std::vector<std::string> attributes;

    std::size_t universe_size = 0;
    std::size_t profile_count = 0;
    std::size_t inconsistent_count = 0;
    std::size_t positive_count = 0;
    std::size_t boundary_count = 0;
    std::size_t label1_count = 0;
    std::size_t label1_boundary_count = 0;

    Rational gamma;
    CeilingResult ceiling;
    std::size_t majority_rule_correct = 0;
    std::size_t tie_profiles = 0;
    Rational boundary_fraction;
    Rational label1_boundary_fraction;  ///< label-1 records in the boundary / all label-1 records
    Rational majority_baseline;         ///< largest class prevalence

    DistributionSummary conflict;
    PrevalenceTable prevalence;
    std::vector<EnrichmentEntry> enrichment;
    std::vector<JointMatrix> joints;
    std::vector<AmbiguousProfile> top_profiles;
    std::optional<std::map<Split, SplitCeiling>> splits;
    std::vector<FilterComparisonRow> filter_comparison;

    friend bool operator==(const AuditReport &, const AuditReport &) = default;
};

/// Attribute pairs mirroring the two standard heat maps, for whichever of them the schema has.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> default_joint_pairs(const ConceptSchema &schema);

[[nodiscard]] AuditReport build_audit_report(const Dataset &dataset, const ReportOptions &options = {});

enum class ReportFormat { structured, markdown, csv_bundle };

[[nodiscard]] std::string render_structured(const AuditReport &report);
[[nodiscard]] AuditReport parse_structured(std::string_view text);
[[nodiscard]] std::string render_markdown(const AuditReport &report);
/// File name -> CSV text, one table per file.
[[nodiscard]] std::map<std::string, std::string> render_csv_bundle(const AuditReport &report);

/// Writes audit.json / audit.md / audit_csv/ under `directory`; returns the files written.
std::vector<std::filesystem::path> write_report(const AuditReport &report, const std::filesystem::path &directory,
                                                const std::vector<ReportFormat> &formats);

}  // namespace rsaudit
