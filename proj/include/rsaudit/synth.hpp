#pragma once

#include "rsaudit/dataset.hpp"
#include "rsaudit/rational.hpp"
#include "rsaudit/roughset.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsaudit {

/// One planted profile; a missing signature is drawn at random from the unused ones.
struct PlannedProfile {
    std::optional<Signature> signature;
    std::size_t count_label1 = 0;
    std::size_t count_label0 = 0;
};

struct SynthSpec {
    std::vector<std::size_t> domain_sizes;  ///< one entry per attribute
    std::vector<PlannedProfile> profiles;
    std::uint64_t seed = 0;
    bool assign_splits = false;  ///< tag records train/valid/test in a seeded shuffle
};

/// Parses {"seed": .., "attributes": [sizes], "profiles": [{"signature": [..]?, "label1": .., "label0": ..}], "splits": bool}.
/// `seed_override` replaces the file's seed; a seed must come from one of the two.
[[nodiscard]] SynthSpec parse_synth_spec(std::string_view json_text, std::optional<std::uint64_t> seed_override = std::nullopt);

struct RandomPlanOptions {
    std::size_t attributes = 4;
    std::size_t domain_size = 3;
    std::size_t profiles = 10;
    std::size_t max_count = 6;
    double mixed_probability = 0.4;
};

/// Seeded random plan with random signatures and counts.
[[nodiscard]] SynthSpec random_plan(std::uint64_t seed, const RandomPlanOptions &options = {});

/// Values implied by the plan alone, computed without looking at generated records.
struct PlantedValues {
    std::size_t universe_size = 0;
    std::size_t profile_count = 0;
    std::size_t inconsistent_count = 0;
    std::size_t positive_count = 0;
    std::size_t boundary_count = 0;
    std::size_t majority_sum = 0;
    Rational gamma;
    Rational ceiling;

    friend bool operator==(const PlantedValues &, const PlantedValues &) = default;
};

/// Throws SpecError for empty plans, zero-size profiles, duplicate or malformed signatures.
[[nodiscard]] PlantedValues planted_values(const SynthSpec &spec);

struct SynthOutput {
    SynthSpec resolved;  ///< every signature filled in
    Dataset dataset;
    PlantedValues expected;
};

/// Deterministic for a given spec (including its seed).
[[nodiscard]] SynthOutput generate_synthetic(const SynthSpec &spec);

/// Expected-values sidecar (JSON), including the resolved plan.
[[nodiscard]] std::string synth_sidecar(const SynthOutput &out);

}  // namespace rsaudit
