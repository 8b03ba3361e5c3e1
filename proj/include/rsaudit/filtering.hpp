#pragma once

#include "rsaudit/dataset.hpp"
#include "rsaudit/rational.hpp"
#include "rsaudit/roughset.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsaudit {

enum class Strategy { symmetric, asymmetric };

[[nodiscard]] std::string_view to_string(Strategy s) noexcept;
[[nodiscard]] std::optional<Strategy> parse_strategy(std::string_view text);

enum class Consistency { none, partial, full };

[[nodiscard]] std::string_view to_string(Consistency c) noexcept;

/// "1:r" with r = label0 / label1 rounded half-even to one decimal; "1:inf" when label1 is zero.
[[nodiscard]] std::string imbalance_ratio(std::size_t label1, std::size_t label0);

/// Composition of one dataset variant, the rows of the strategy comparison table.
struct CompositionMetrics {
    std::size_t size = 0;
    std::size_t label1_count = 0;
    std::size_t label0_count = 0;
    std::string imbalance_ratio;
    Rational gamma;    ///< recomputed on this variant
    Rational ceiling;  ///< recomputed on this variant
    Rational label1_retained_fraction;  ///< label-1 records kept / label-1 records in the source
    Rational size_change;               ///< (size - source size) / source size
    bool all_label1_preserved = false;
    Consistency consistency = Consistency::none;

    friend bool operator==(const CompositionMetrics &, const CompositionMetrics &) = default;
};

/// Metrics for `variant` as a subset of a source holding `source_size` records, `source_label1` of them label 1.
/// An empty variant is vacuously consistent: gamma = ceiling = 1.
[[nodiscard]] CompositionMetrics composition_metrics(const Dataset &variant, std::size_t source_size, std::size_t source_label1,
                                                     bool filtered);

struct Removal {
    std::size_t row = 0;  ///< position in the source dataset
    std::string id;
    std::string signature;
    std::size_t n = 0;
    std::size_t count_label1 = 0;
    std::size_t count_label0 = 0;
    Rational conflict_ratio;
};

struct FilterResult {
    Strategy strategy = Strategy::symmetric;
    std::optional<Split> split;  ///< set for split-aware results
    Dataset retained;
    std::vector<std::size_t> retained_rows;  ///< positions in the source dataset
    std::vector<Removal> removed;            ///< source order
    CompositionMetrics metrics;
};

/// Keeps exactly the positive region.
[[nodiscard]] FilterResult filter_symmetric(const Dataset &dataset, const RegionAnalysis &analysis);

/// Keeps the positive region plus every label-1 record of the boundary.
[[nodiscard]] FilterResult filter_asymmetric(const Dataset &dataset, const RegionAnalysis &analysis);

[[nodiscard]] FilterResult apply_filter(const Dataset &dataset, const RegionAnalysis &analysis, Strategy strategy);

/// Boundary is identified once on the full dataset, then removal happens inside each split.
/// Split tags are never changed. Throws ContractError without split tags.
[[nodiscard]] std::map<Split, FilterResult> filter_split_aware(const Dataset &dataset, Strategy strategy);

struct ConceptWeights {
    std::string attribute;
    std::vector<std::string> values;
    std::vector<std::size_t> counts;
    std::vector<double> weights;
};

struct ClassWeights {
    std::size_t train_size = 0;
    bool used_train_split = false;  ///< false when the dataset has no split tags and all records were used
    double label0 = 0.0;
    double label1 = 0.0;
    std::vector<ConceptWeights> concepts;
    std::vector<std::string> warnings;
};

/// Inverse-frequency weights on the training split: |P| / (K * count) with K = 2 for labels and
/// K = |V_c| for concept attributes. Unobserved concept values get `zero_count_weight`
/// (default |P|) and a warning. Throws ContractError if a label is missing from the training data.
[[nodiscard]] ClassWeights class_weights(const Dataset &dataset, std::optional<double> zero_count_weight = std::nullopt);

struct ExportPaths {
    std::filesystem::path data;
    std::filesystem::path manifest;
    std::filesystem::path metrics;
};

/// Writes `<stem>.csv` (same layout as the input), `<stem>.removed.csv` and `<stem>.metrics.json` under `directory`.
ExportPaths export_dataset(const FilterResult &result, const std::filesystem::path &directory, std::string_view stem,
                           const CompositionMetrics &source_metrics);

/// Manifest text: id, profile_signature, n_k, count_label1, count_label0, gamma_k, strategy.
[[nodiscard]] std::string removal_manifest(const FilterResult &result);

}  // namespace rsaudit
