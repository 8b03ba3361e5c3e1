#pragma once

#include "rsaudit/dataset.hpp"
#include "rsaudit/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace rsaudit {

using Signature = std::vector<ValueIndex>;

/// One equivalence class of the indiscernibility relation: all records sharing a concept signature.
struct Profile {
    Signature key;
    std::vector<std::size_t> members;  ///< positions into the dataset, ascending
    std::size_t count_label1 = 0;
    std::size_t count_label0 = 0;

    [[nodiscard]] std::size_t size() const noexcept { return count_label1 + count_label0; }
    [[nodiscard]] bool consistent() const noexcept { return count_label1 == 0 || count_label0 == 0; }
    [[nodiscard]] std::size_t majority_count() const noexcept { return std::max(count_label1, count_label0); }
    [[nodiscard]] std::size_t minority_count() const noexcept { return std::min(count_label1, count_label0); }
    [[nodiscard]] bool tie() const noexcept { return count_label1 == count_label0; }
    /// Majority label; ties go to Label::positive.
    [[nodiscard]] Label majority_label() const noexcept { return count_label1 >= count_label0 ? Label::positive : Label::negative; }

    friend bool operator==(const Profile &, const Profile &) = default;
};

/// Quotient set U/IND(C). Profiles are ordered lexicographically by signature.
class Partition {
  public:
    Partition() = default;
    Partition(std::vector<Profile> profiles, std::vector<std::size_t> profile_of);

    [[nodiscard]] std::span<const Profile> profiles() const noexcept { return profiles_; }
    [[nodiscard]] std::size_t size() const noexcept { return profiles_.size(); }
    [[nodiscard]] const Profile &operator[](std::size_t k) const { return profiles_[k]; }
    /// Index of the profile that holds record `record`.
    [[nodiscard]] std::size_t profile_of(std::size_t record) const { return profile_of_.at(record); }
    [[nodiscard]] std::size_t universe_size() const noexcept { return profile_of_.size(); }
    [[nodiscard]] const Profile *find(std::span<const ValueIndex> signature) const;

  private:
    std::vector<Profile> profiles_;
    std::vector<std::size_t> profile_of_;
};

[[nodiscard]] Partition build_partition(const Dataset &dataset);

/// min(n1, n0) / n; zero for consistent profiles.
[[nodiscard]] Rational conflict_ratio(const Profile &profile);

struct InconsistentProfile {
    Profile profile;
    Rational conflict_ratio;
};

struct CeilingResult {
    Rational value;                 ///< (|POS| + sum of majority counts) / |U|
    std::size_t correct = 0;        ///< numerator before reduction
    std::size_t majority_sum = 0;   ///< sum of majority counts over inconsistent profiles
    std::size_t universe_size = 0;

    friend bool operator==(const CeilingResult &, const CeilingResult &) = default;
};

struct RegionAnalysis {
    std::size_t universe_size = 0;
    std::size_t profile_count = 0;
    std::vector<std::size_t> positive;  ///< record positions, ascending
    std::vector<std::size_t> boundary;  ///< record positions, ascending
    std::vector<bool> boundary_mask;    ///< indexed by record position
    Rational gamma;
    std::vector<InconsistentProfile> inconsistent;  ///< signature order
    CeilingResult ceiling;

    [[nodiscard]] bool in_boundary(std::size_t record) const { return boundary_mask.at(record); }
    [[nodiscard]] std::size_t boundary_count(Label l, const Dataset &dataset) const;
};

[[nodiscard]] RegionAnalysis compute_regions(const Partition &partition, const Dataset &dataset);

/// Closed-form ceiling recomputed from the regions of `analysis`.
[[nodiscard]] CeilingResult accuracy_ceiling(const RegionAnalysis &analysis, const Dataset &dataset);

struct MajorityRule {
    struct Entry {
        Signature key;
        Label predicted;
        bool tie = false;
    };
    std::vector<Entry> entries;  ///< signature order
    std::size_t correct = 0;
    std::size_t universe_size = 0;

    [[nodiscard]] Rational accuracy() const { return Rational(static_cast<std::int64_t>(correct), static_cast<std::int64_t>(universe_size)); }
    [[nodiscard]] std::optional<Label> predict(std::span<const ValueIndex> signature) const;
    [[nodiscard]] std::size_t tie_count() const;
};

/// Ceiling-attaining classifier: unique label on consistent profiles, majority label elsewhere (ties → positive).
[[nodiscard]] MajorityRule majority_vote_classifier(const Partition &partition);

/// Applies `rule` record by record; unseen signatures count as errors.
[[nodiscard]] Rational measure_accuracy(const MajorityRule &rule, const Dataset &dataset);

struct SplitCeiling {
    std::size_t size = 0;
    std::size_t profile_count = 0;
    std::size_t boundary_count = 0;
    Rational gamma;
    CeilingResult ceiling;

    friend bool operator==(const SplitCeiling &, const SplitCeiling &) = default;
};

/// Regions and ceiling recomputed independently inside each split present in the data.
[[nodiscard]] std::map<Split, SplitCeiling> per_split_ceiling(const Dataset &dataset);

inline constexpr std::size_t default_brute_force_cap = 16;

/// Maximum accuracy over all 2^|E| concept-measurable labelings, found by exhaustive enumeration.
/// Refuses (ContractError) when the dataset has more than `max_profiles` distinct signatures.
[[nodiscard]] Rational brute_force_ceiling(const Dataset &dataset, std::size_t max_profiles = default_brute_force_cap);

/// Partition plus regions for one dataset.
struct Analysis {
    Partition partition;
    RegionAnalysis regions;
};

[[nodiscard]] Analysis analyze(const Dataset &dataset);

}  // namespace rsaudit
