#include "rsaudit/roughset.hpp"

#include "rsaudit/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>

namespace rsaudit {

namespace {

Rational ratio(std::size_t num, std::size_t den) {
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Partition::Partition(std::vector<Profile> profiles, std::vector<std::size_t> profile_of)
    : profiles_(std::move(profiles)), profile_of_(std::move(profile_of)) {}

const Profile *Partition::find(std::span<const ValueIndex> signature) const {
    const auto it = std::lower_bound(profiles_.begin(), profiles_.end(), signature, [](const Profile &p, std::span<const ValueIndex> s) {
        return std::lexicographical_compare(p.key.begin(), p.key.end(), s.begin(), s.end());
    });
    if (it == profiles_.end() || !std::equal(it->key.begin(), it->key.end(), signature.begin(), signature.end())) {
        return nullptr;
    }
    return &*it;
}

Partition build_partition(const Dataset &dataset) {
    const auto records = dataset.records();
    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return records[a].concepts < records[b].concepts; });

    std::vector<Profile> profiles;
    std::vector<std::size_t> profile_of(records.size());
    for (const std::size_t i : order) {
        const Record &r = records[i];
        if (profiles.empty() || profiles.back().key != r.concepts) {
            profiles.push_back(Profile{r.concepts, {}, 0, 0});
        }
        Profile &p = profiles.back();
        p.members.push_back(i);
        (r.label == Label::positive ? p.count_label1 : p.count_label0) += 1;
        profile_of[i] = profiles.size() - 1;
    }
    return Partition(std::move(profiles), std::move(profile_of));
}

Rational conflict_ratio(const Profile &profile) {
    if (profile.size() == 0) {
        throw ContractError("conflict_ratio of an empty profile");
    }
    return ratio(profile.minority_count(), profile.size());
}

std::size_t RegionAnalysis::boundary_count(Label l, const Dataset &dataset) const {
    return static_cast<std::size_t>(
        std::count_if(boundary.begin(), boundary.end(), [&](std::size_t i) { return dataset[i].label == l; }));
}

CeilingResult accuracy_ceiling(const RegionAnalysis &analysis, const Dataset &dataset) {
    require_nonempty(dataset, "accuracy_ceiling");
    CeilingResult out;
    out.universe_size = dataset.size();
    for (const auto &ip : analysis.inconsistent) {
        out.majority_sum += ip.profile.majority_count();
    }
    out.correct = analysis.positive.size() + out.majority_sum;
    out.value = ratio(out.correct, out.universe_size);
    return out;
}

RegionAnalysis compute_regions(const Partition &partition, const Dataset &dataset) {
    require_nonempty(dataset, "compute_regions");
    if (partition.universe_size() != dataset.size()) {
        throw ContractError("partition was not built from this dataset");
    }
    RegionAnalysis out;
    out.universe_size = dataset.size();
    out.profile_count = partition.size();
    out.boundary_mask.assign(dataset.size(), false);
    for (const Profile &p : partition.profiles()) {
        if (p.consistent()) {
            continue;
        }
        out.inconsistent.push_back({p, conflict_ratio(p)});
        for (const std::size_t m : p.members) {
            out.boundary_mask[m] = true;
        }
    }
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        (out.boundary_mask[i] ? out.boundary : out.positive).push_back(i);
    }
    out.gamma = ratio(out.positive.size(), out.universe_size);
    out.ceiling = accuracy_ceiling(out, dataset);
    return out;
}

std::optional<Label> MajorityRule::predict(std::span<const ValueIndex> signature) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), signature, [](const Entry &e, std::span<const ValueIndex> s) {
        return std::lexicographical_compare(e.key.begin(), e.key.end(), s.begin(), s.end());
    });
    if (it == entries.end() || !std::equal(it->key.begin(), it->key.end(), signature.begin(), signature.end())) {
        return std::nullopt;
    }
    return it->predicted;
}

std::size_t MajorityRule::tie_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const Entry &e) { return e.tie; }));
}

MajorityRule majority_vote_classifier(const Partition &partition) {
    MajorityRule rule;
    rule.universe_size = partition.universe_size();
    for (const Profile &p : partition.profiles()) {
        const Label predicted = p.majority_label();
        rule.entries.push_back({p.key, predicted, !p.consistent() && p.tie()});
        rule.correct += predicted == Label::positive ? p.count_label1 : p.count_label0;
    }
    return rule;
}

Rational measure_accuracy(const MajorityRule &rule, const Dataset &dataset) {
    require_nonempty(dataset, "measure_accuracy");
    std::size_t correct = 0;
    for (const Record &r : dataset.records()) {
        if (rule.predict(r.concepts) == r.label) {
            ++correct;
        }
    }
    return ratio(correct, dataset.size());
}

std::map<Split, SplitCeiling> per_split_ceiling(const Dataset &dataset) {
    if (!dataset.has_splits()) {
        throw ContractError("per-split ceiling requires split tags");
    }
    std::map<Split, SplitCeiling> out;
    for (const Split s : all_splits) {
        const Dataset part = dataset.split(s);
        if (part.empty()) {
            continue;
        }
        const Analysis a = analyze(part);
        out[s] = SplitCeiling{part.size(), a.partition.size(), a.regions.boundary.size(), a.regions.gamma, a.regions.ceiling};
    }
    return out;
}

Rational brute_force_ceiling(const Dataset &dataset, std::size_t max_profiles) {
    require_nonempty(dataset, "brute_force_ceiling");
    // Own grouping; must not share code with build_partition.
    std::map<Signature, std::size_t> slot;
    std::vector<std::size_t> record_slot;
    record_slot.reserve(dataset.size());
    for (const Record &r : dataset.records()) {
        const auto [it, inserted] = slot.emplace(r.concepts, slot.size());
        record_slot.push_back(it->second);
    }
    const std::size_t profile_count = slot.size();
    if (profile_count > max_profiles || profile_count >= 63) {
        throw ContractError("brute-force oracle refused: " + std::to_string(profile_count) + " profiles exceeds the cap of " +
                            std::to_string(max_profiles));
    }
    // hits[k][l]: records in slot k whose label is l
    std::vector<std::array<std::size_t, 2>> hits(profile_count, {0, 0});
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        hits[record_slot[i]][static_cast<std::size_t>(to_int(dataset[i].label))] += 1;
    }
    std::size_t best = 0;
    const std::uint64_t labelings = std::uint64_t{1} << profile_count;
    for (std::uint64_t h = 0; h < labelings; ++h) {
        std::size_t correct = 0;
        for (std::size_t k = 0; k < profile_count; ++k) {
            correct += hits[k][(h >> k) & 1U];
        }
        best = std::max(best, correct);
    }
    return ratio(best, dataset.size());
}

Analysis analyze(const Dataset &dataset) {
    Analysis a;
    a.partition = build_partition(dataset);
    a.regions = compute_regions(a.partition, dataset);
    return a;
}

}  // namespace rsaudit
