#include "rsaudit/synth.hpp"

#include "rsaudit/error.hpp"
#include "rsaudit/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

namespace rsaudit {

SynthSpec parse_synth_spec(std::string_view json_text, std::optional<std::uint64_t> seed_override) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error &e) {
        throw SpecError(std::string("synth spec is not valid JSON: ") + e.what());
    }
    SynthSpec spec;
    try {
        if (seed_override) {
            spec.seed = *seed_override;
        } else if (j.contains("seed")) {
            spec.seed = j.at("seed").get<std::uint64_t>();
        } else {
            throw SpecError("synth spec needs a seed (in the file or via --seed)");
        }
        spec.domain_sizes = j.at("attributes").get<std::vector<std::size_t>>();
        for (const auto &p : j.at("profiles")) {
            PlannedProfile planned;
            if (p.contains("signature") && !p.at("signature").is_null()) {
                planned.signature = p.at("signature").get<Signature>();
            }
            planned.count_label1 = p.at("label1").get<std::size_t>();
            planned.count_label0 = p.at("label0").get<std::size_t>();
            spec.profiles.push_back(std::move(planned));
        }
        spec.assign_splits = j.value("splits", false);
    } catch (const Json::exception &e) {
        throw SpecError(std::string("malformed synth spec: ") + e.what());
    }
    return spec;
}

SynthSpec random_plan(std::uint64_t seed, const RandomPlanOptions &options) {
    if (options.max_count == 0 || options.profiles == 0) {
        throw SpecError("random plan needs at least one profile and a positive max count");
    }
    std::mt19937_64 rng(seed);
    SynthSpec spec;
    spec.seed = seed;
    spec.domain_sizes.assign(options.attributes, options.domain_size);
    std::uniform_int_distribution<std::size_t> count(1, options.max_count);
    std::bernoulli_distribution mixed(options.mixed_probability);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; k < options.profiles; ++k) {
        PlannedProfile p;
        if (mixed(rng)) {
            p.count_label1 = count(rng);
            p.count_label0 = count(rng);
        } else {
            (coin(rng) ? p.count_label1 : p.count_label0) = count(rng);
        }
        spec.profiles.push_back(p);
    }
    return spec;
}

namespace {

void check_signature(const SynthSpec &spec, const Signature &sig) {
    if (sig.size() != spec.domain_sizes.size()) {
        throw SpecError("signature has " + std::to_string(sig.size()) + " values, plan has " + std::to_string(spec.domain_sizes.size()) +
                        " attributes");
    }
    for (std::size_t a = 0; a < sig.size(); ++a) {
        if (sig[a] >= spec.domain_sizes[a]) {
            throw SpecError("signature value " + std::to_string(sig[a]) + " outside the domain of attribute " + std::to_string(a));
        }
    }
}

std::string attribute_name(std::size_t a) { return "c" + std::to_string(a + 1); }
std::string value_name(std::size_t v) { return "v" + std::to_string(v); }

}  // namespace

PlantedValues planted_values(const SynthSpec &spec) {
    if (spec.domain_sizes.empty() || spec.profiles.empty()) {
        throw SpecError("plan needs at least one attribute and one profile");
    }
    if (std::any_of(spec.domain_sizes.begin(), spec.domain_sizes.end(), [](std::size_t d) { return d == 0; })) {
        throw SpecError("every attribute needs a non-empty domain");
    }
    std::set<Signature> seen;
    PlantedValues v;
    for (const auto &p : spec.profiles) {
        if (p.count_label1 + p.count_label0 == 0) {
            throw SpecError("planned profile with no records");
        }
        if (p.signature) {
            check_signature(spec, *p.signature);
            if (!seen.insert(*p.signature).second) {
                throw SpecError("duplicate signature in plan");
            }
        }
        const std::size_t n = p.count_label1 + p.count_label0;
        v.universe_size += n;
        v.profile_count += 1;
        if (p.count_label1 > 0 && p.count_label0 > 0) {
            v.inconsistent_count += 1;
            v.boundary_count += n;
            v.majority_sum += std::max(p.count_label1, p.count_label0);
        } else {
            v.positive_count += n;
        }
    }
    // capacity check: enough distinct signatures for the plan
    std::size_t capacity = 1;
    for (const std::size_t d : spec.domain_sizes) {
        capacity = capacity > spec.profiles.size() ? capacity : capacity * d;
    }
    if (capacity < spec.profiles.size()) {
        throw SpecError("plan asks for " + std::to_string(spec.profiles.size()) + " profiles but only " + std::to_string(capacity) +
                        " signatures exist");
    }
    const auto u = static_cast<std::int64_t>(v.universe_size);
    v.gamma = Rational(static_cast<std::int64_t>(v.positive_count), u);
    v.ceiling = Rational(static_cast<std::int64_t>(v.positive_count + v.majority_sum), u);
    return v;
}

SynthOutput generate_synthetic(const SynthSpec &spec) {
    SynthOutput out;
    out.expected = planted_values(spec);
    out.resolved = spec;
    std::mt19937_64 rng(spec.seed);

    std::set<Signature> taken;
    for (const auto &p : spec.profiles) {
        if (p.signature) {
            taken.insert(*p.signature);
        }
    }
    for (auto &p : out.resolved.profiles) {
        if (p.signature) {
            continue;
        }
        Signature sig(spec.domain_sizes.size());
        do {
            for (std::size_t a = 0; a < sig.size(); ++a) {
                sig[a] = static_cast<ValueIndex>(std::uniform_int_distribution<std::size_t>(0, spec.domain_sizes[a] - 1)(rng));
            }
        } while (taken.contains(sig));
        taken.insert(sig);
        p.signature = sig;
    }

    ConceptSchema schema;
    for (std::size_t a = 0; a < spec.domain_sizes.size(); ++a) {
        Attribute attr{attribute_name(a), {}, value_name(0)};
        for (std::size_t v = 0; v < spec.domain_sizes[a]; ++v) {
            attr.values.push_back(value_name(v));
        }
        schema.attributes.push_back(std::move(attr));
    }

    std::vector<Record> records;
    for (const auto &p : out.resolved.profiles) {
        for (std::size_t i = 0; i < p.count_label1 + p.count_label0; ++i) {
            Record r;
            r.concepts = *p.signature;
            r.label = i < p.count_label1 ? Label::positive : Label::negative;
            r.raw_label = r.label == Label::positive ? "melanoma" : "nevus";
            records.push_back(std::move(r));
        }
    }
    std::shuffle(records.begin(), records.end(), rng);
    char id[32];
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::snprintf(id, sizeof id, "s%05zu", i + 1);
        records[i].id = id;
        if (spec.assign_splits) {
            records[i].split = all_splits[std::uniform_int_distribution<int>(0, 2)(rng)];
        }
    }
    if (spec.assign_splits) {
        schema.split_column = "split";
    }
    out.dataset = Dataset(std::move(schema), std::move(records));
    return out;
}

std::string synth_sidecar(const SynthOutput &out) {
    const auto &e = out.expected;
    Json j;
    j["schema_version"] = 1;
    j["seed"] = out.resolved.seed;
    j["universe_size"] = e.universe_size;
    j["profile_count"] = e.profile_count;
    j["inconsistent_count"] = e.inconsistent_count;
    j["positive_count"] = e.positive_count;
    j["boundary_count"] = e.boundary_count;
    j["majority_sum"] = e.majority_sum;
    j["gamma"] = rational_json(e.gamma);
    j["ceiling"] = rational_json(e.ceiling);
    Json plan = Json::array();
    for (const auto &p : out.resolved.profiles) {
        plan.push_back({{"signature", *p.signature}, {"label1", p.count_label1}, {"label0", p.count_label0}});
    }
    j["plan"] = {{"attributes", out.resolved.domain_sizes}, {"profiles", std::move(plan)}, {"splits", out.resolved.assign_splits}};
    return j.dump(2) + "\n";
}

}  // namespace rsaudit
