#pragma once

#include "rsaudit/dataset.hpp"
#include "rsaudit/rational.hpp"
#include "rsaudit/roughset.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsaudit {

// ---------------------------------------------------------------------------
// Conflict-ratio distribution

struct DistributionSummary {
    bool empty = true;  ///< no inconsistent profiles; every other field is zero
    std::size_t count = 0;
    double mean = 0.0;
    double sample_stddev = 0.0;
    bool stddev_defined = false;  ///< false with fewer than two profiles (stddev reported as 0)
    double bin_width = 0.05;
    std::vector<std::size_t> histogram;  ///< bin i covers (i*w, (i+1)*w]
    std::size_t count_at_max = 0;        ///< profiles with conflict ratio exactly 1/2

    friend bool operator==(const DistributionSummary &, const DistributionSummary &) = default;
};

[[nodiscard]] DistributionSummary conflict_distribution(const RegionAnalysis &analysis, double bin_width = 0.05);

// ---------------------------------------------------------------------------
// Wilson score interval

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;

    friend bool operator==(const WilsonInterval &, const WilsonInterval &) = default;
};

/// Two-sided standard normal quantile: z such that P(|Z| <= z) = confidence.
[[nodiscard]] double two_sided_z(double confidence);

/// Wilson score interval for `successes` out of `n`, clamped to [0, 1].
/// Throws std::domain_error for n == 0, successes > n, or confidence outside (0, 1).
[[nodiscard]] WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double confidence = 0.95);

// ---------------------------------------------------------------------------
// Prevalence per concept value

enum class RiskTier { low, moderate, high };

[[nodiscard]] std::string_view to_string(RiskTier t) noexcept;

/// high iff p > 0.40, moderate iff 0.20 < p <= 0.40, low otherwise; decided in exact arithmetic.
[[nodiscard]] RiskTier risk_tier(std::size_t successes, std::size_t n);

struct PrevalenceEntry {
    std::string attribute;
    std::string value;
    std::size_t n = 0;
    std::size_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    RiskTier tier = RiskTier::low;

    friend bool operator==(const PrevalenceEntry &, const PrevalenceEntry &) = default;
};

struct PrevalenceTable {
    double confidence = 0.95;
    std::size_t n = 0;
    std::size_t successes = 0;
    double prevalence = 0.0;  ///< dataset-level positive fraction
    std::vector<PrevalenceEntry> entries;  ///< schema order, values with n >= 1 only

    friend bool operator==(const PrevalenceTable &, const PrevalenceTable &) = default;
};

[[nodiscard]] PrevalenceTable prevalence_table(const Dataset &dataset, double confidence = 0.95);

// ---------------------------------------------------------------------------
// Boundary enrichment

struct EnrichmentEntry {
    std::string attribute;
    std::string value;
    std::size_t boundary_count = 0;
    std::size_t positive_count = 0;  ///< records in the positive region carrying the value
    std::optional<double> boundary_fraction;    ///< absent when the boundary region is empty
    std::optional<double> consistent_fraction;  ///< absent when the positive region is empty

    friend bool operator==(const EnrichmentEntry &, const EnrichmentEntry &) = default;
};

/// One entry per (attribute, value) in schema order.
[[nodiscard]] std::vector<EnrichmentEntry> boundary_enrichment(const Dataset &dataset, const RegionAnalysis &analysis);

// ---------------------------------------------------------------------------
// Joint rate matrices

struct JointCell {
    std::size_t n = 0;
    std::size_t successes = 0;
    std::size_t boundary_count = 0;
    std::optional<double> p_joint;  ///< absent when n == 0
    bool suppressed = false;        ///< n below the display threshold

    friend bool operator==(const JointCell &, const JointCell &) = default;
};

struct JointMatrix {
    std::string attr_a;
    std::string attr_b;
    std::vector<std::string> values_a;
    std::vector<std::string> values_b;
    std::size_t min_n = 3;
    std::vector<JointCell> cells;  ///< row-major, rows follow values_a

    [[nodiscard]] const JointCell &at(std::size_t a, std::size_t b) const { return cells.at(a * values_b.size() + b); }
    [[nodiscard]] const JointCell &at(std::string_view value_a, std::string_view value_b) const;

    friend bool operator==(const JointMatrix &, const JointMatrix &) = default;
};

/// Throws ContractError for unknown attributes.
[[nodiscard]] JointMatrix joint_rate_matrix(const Dataset &dataset, const RegionAnalysis &analysis, std::string_view attr_a,
                                            std::string_view attr_b, std::size_t min_n = 3);

// ---------------------------------------------------------------------------
// Most ambiguous profiles

struct AmbiguousProfile {
    std::size_t rank = 0;  ///< 1-based
    Signature key;
    std::string signature;  ///< '|'-joined value names
    std::size_t n = 0;
    std::size_t count_label1 = 0;
    std::size_t count_label0 = 0;
    Rational conflict_ratio;
    std::vector<std::string> active_values;  ///< "attribute=value" for every non-default value

    friend bool operator==(const AmbiguousProfile &, const AmbiguousProfile &) = default;
};

/// Inconsistent profiles ordered by conflict ratio (desc), size (desc), signature (asc); first `k`.
[[nodiscard]] std::vector<AmbiguousProfile> top_ambiguous_profiles(const RegionAnalysis &analysis, const ConceptSchema &schema, std::size_t k);

}  // namespace rsaudit
