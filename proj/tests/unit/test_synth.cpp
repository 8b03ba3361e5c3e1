#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsaudit/error.hpp"
#include "rsaudit/synth.hpp"

#include <sstream>

using namespace rsaudit;

TEST_CASE("planted values follow from the plan alone") {
    SynthSpec spec;
    spec.domain_sizes = {2, 3};
    spec.profiles = {{Signature{0, 0}, 3, 1}, {std::nullopt, 0, 4}, {std::nullopt, 2, 2}, {std::nullopt, 5, 0}};
    const PlantedValues v = planted_values(spec);
    CHECK(v.universe_size == 17);
    CHECK(v.profile_count == 4);
    CHECK(v.inconsistent_count == 2);
    CHECK(v.positive_count == 9);
    CHECK(v.boundary_count == 8);
    CHECK(v.majority_sum == 5);
    CHECK(v.gamma == Rational(9, 17));
    CHECK(v.ceiling == Rational(14, 17));
}

TEST_CASE("one mixed profile among two pure ones") {
    SynthSpec spec;
    spec.seed = 11;
    spec.domain_sizes = {3, 2};
    spec.profiles = {{std::nullopt, 5, 0}, {std::nullopt, 0, 4}, {std::nullopt, 2, 2}};
    const PlantedValues v = planted_values(spec);
    CHECK(v.gamma == Rational(9, 13));
    CHECK(v.ceiling == Rational(11, 13));
    const Analysis a = analyze(generate_synthetic(spec).dataset);
    CHECK(a.regions.gamma == Rational(9, 13));
    CHECK(a.regions.ceiling.value == Rational(11, 13));
    REQUIRE(a.regions.inconsistent.size() == 1);
    CHECK(a.regions.inconsistent[0].conflict_ratio == Rational(1, 2));
}

TEST_CASE("generated data reproduces the planted values") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        CAPTURE(seed);
        const SynthOutput out = generate_synthetic(random_plan(seed));
        const Analysis a = analyze(out.dataset);
        CHECK(a.regions.universe_size == out.expected.universe_size);
        CHECK(a.regions.profile_count == out.expected.profile_count);
        CHECK(a.regions.inconsistent.size() == out.expected.inconsistent_count);
        CHECK(a.regions.boundary.size() == out.expected.boundary_count);
        CHECK(a.regions.gamma == out.expected.gamma);
        CHECK(a.regions.ceiling.value == out.expected.ceiling);
        CHECK(validate(out.dataset).empty());
    }
}

TEST_CASE("generation is deterministic per seed") {
    const auto text = [](std::uint64_t seed) {
        SynthSpec spec = random_plan(seed);
        spec.assign_splits = true;
        const SynthOutput out = generate_synthetic(spec);
        std::ostringstream s;
        write_dataset(out.dataset, s);
        return s.str() + synth_sidecar(out);
    };
    CHECK(text(7) == text(7));
    CHECK(text(7) != text(8));
}

TEST_CASE("synth spec parsing") {
    const SynthSpec spec = parse_synth_spec(R"({"seed": 3, "attributes": [2, 2],
        "profiles": [{"signature": [1, 0], "label1": 2, "label0": 1}, {"label1": 0, "label0": 3}], "splits": true})");
    CHECK(spec.seed == 3);
    CHECK(spec.domain_sizes == std::vector<std::size_t>{2, 2});
    REQUIRE(spec.profiles.size() == 2);
    CHECK(spec.profiles[0].signature == Signature{1, 0});
    CHECK_FALSE(spec.profiles[1].signature.has_value());
    CHECK(spec.assign_splits);
    CHECK(parse_synth_spec(R"({"seed": 3, "attributes": [2], "profiles": []})", 11).seed == 11);
    CHECK_THROWS_AS((void)parse_synth_spec(R"({"attributes": [2], "profiles": []})"), SpecError);
    CHECK_THROWS_AS((void)parse_synth_spec("[1,"), SpecError);
}

TEST_CASE("invalid plans are rejected") {
    SynthSpec spec;
    spec.domain_sizes = {2};
    spec.profiles = {{Signature{0}, 1, 0}, {Signature{0}, 0, 1}};
    CHECK_THROWS_AS((void)planted_values(spec), SpecError);  // duplicate signature
    spec.profiles = {{Signature{2}, 1, 0}};
    CHECK_THROWS_AS((void)planted_values(spec), SpecError);  // outside the domain
    spec.profiles = {{std::nullopt, 0, 0}};
    CHECK_THROWS_AS((void)planted_values(spec), SpecError);  // empty profile
    spec.profiles = {{std::nullopt, 1, 0}, {std::nullopt, 1, 0}, {std::nullopt, 1, 0}};
    CHECK_THROWS_AS((void)planted_values(spec), SpecError);  // three profiles, two signatures
    spec.profiles.clear();
    CHECK_THROWS_AS((void)planted_values(spec), SpecError);
}
