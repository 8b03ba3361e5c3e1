#include "rsaudit/report.hpp"

#include "rsaudit/csv.hpp"
#include "rsaudit/error.hpp"
#include "rsaudit/io.hpp"
#include "rsaudit/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace rsaudit {

namespace {

std::string normalized(std::string_view name) {
    std::string out;
    for (const char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

Rational ratio(std::size_t num, std::size_t den) {
    return den == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> default_joint_pairs(const ConceptSchema &schema) {
    auto lookup = [&](std::string_view key) -> std::optional<std::string> {
        for (const auto &a : schema.attributes) {
            if (normalized(a.name) == key) {
                return a.name;
            }
        }
        return std::nullopt;
    };
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &[a, b] : {std::pair{"bluewhitishveil", "dotsandglobules"}, std::pair{"pigmentnetwork", "streaks"}}) {
        const auto na = lookup(a);
        const auto nb = lookup(b);
        if (na && nb) {
            out.emplace_back(*na, *nb);
        }
    }
    return out;
}

AuditReport build_audit_report(const Dataset &dataset, const ReportOptions &options) {
    require_nonempty(dataset, "audit");
    const Analysis analysis = analyze(dataset);
    const RegionAnalysis &regions = analysis.regions;
    const MajorityRule rule = majority_vote_classifier(analysis.partition);

    AuditReport r;
    for (const auto &a : dataset.schema().attributes) {
        r.attributes.push_back(a.name);
    }
    r.universe_size = dataset.size();
    r.profile_count = analysis.partition.size();
    r.inconsistent_count = regions.inconsistent.size();
    r.positive_count = regions.positive.size();
    r.boundary_count = regions.boundary.size();
    r.label1_count = dataset.count(Label::positive);
    r.label1_boundary_count = regions.boundary_count(Label::positive, dataset);
    r.gamma = regions.gamma;
    r.ceiling = accuracy_ceiling(regions, dataset);
    r.majority_rule_correct = rule.correct;
    r.tie_profiles = rule.tie_count();
    r.boundary_fraction = ratio(r.boundary_count, r.universe_size);
    r.label1_boundary_fraction = ratio(r.label1_boundary_count, r.label1_count);
    r.majority_baseline = ratio(std::max(r.label1_count, r.universe_size - r.label1_count), r.universe_size);

    r.conflict = conflict_distribution(regions, options.bin_width);
    r.prevalence = prevalence_table(dataset, options.confidence);
    r.enrichment = boundary_enrichment(dataset, regions);

    std::vector<std::pair<std::string, std::string>> pairs = options.joints;
    if (options.default_joints) {
        for (const auto &p : default_joint_pairs(dataset.schema())) {
            if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) {
                pairs.push_back(p);
            }
        }
    }
    for (const auto &[a, b] : pairs) {
        r.joints.push_back(joint_rate_matrix(dataset, regions, a, b));
    }
    r.top_profiles = top_ambiguous_profiles(regions, dataset.schema(), options.top_k);
    if (dataset.has_splits()) {
        r.splits = per_split_ceiling(dataset);
    }

    const std::size_t n1 = r.label1_count;
    r.filter_comparison.push_back({"no_filter", composition_metrics(dataset, dataset.size(), n1, false)});
    r.filter_comparison.push_back({"asymmetric", filter_asymmetric(dataset, regions).metrics});
    r.filter_comparison.push_back({"symmetric", filter_symmetric(dataset, regions).metrics});
    return r;
}

// ---------------------------------------------------------------------------
// Structured (JSON)

namespace {

Json optional_number(const std::optional<double> &v) {
    return v ? Json(*v) : Json(nullptr);
}

std::optional<double> optional_from(const Json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

Json ceiling_json(const CeilingResult &c) {
    Json j = rational_json(c.value);
    j["correct"] = c.correct;
    j["majority_sum"] = c.majority_sum;
    j["universe_size"] = c.universe_size;
    return j;
}

CeilingResult ceiling_from(const Json &j) {
    return {rational_from_json(j), j.at("correct").get<std::size_t>(), j.at("majority_sum").get<std::size_t>(),
            j.at("universe_size").get<std::size_t>()};
}

RiskTier tier_from(const std::string &s) {
    for (const RiskTier t : {RiskTier::low, RiskTier::moderate, RiskTier::high}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw SchemaError("unknown risk tier '" + s + "'");
}

}  // namespace

std::string render_structured(const AuditReport &r) {
    Json j;
    j["schema_version"] = r.schema_version;
    j["attributes"] = r.attributes;
    j["summary"] = {{"universe_size", r.universe_size},         {"profile_count", r.profile_count},
                    {"inconsistent_count", r.inconsistent_count}, {"positive_count", r.positive_count},
                    {"boundary_count", r.boundary_count},         {"label1_count", r.label1_count},
                    {"label1_boundary_count", r.label1_boundary_count}};
    j["gamma"] = rational_json(r.gamma);
    j["ceiling"] = ceiling_json(r.ceiling);
    j["majority_rule"] = {{"correct", r.majority_rule_correct}, {"tie_profiles", r.tie_profiles}};
    j["boundary_fraction"] = rational_json(r.boundary_fraction);
    j["label1_boundary_fraction"] = rational_json(r.label1_boundary_fraction);
    j["majority_baseline"] = rational_json(r.majority_baseline);

    j["conflict_distribution"] = {{"empty", r.conflict.empty},
                                  {"count", r.conflict.count},
                                  {"mean", r.conflict.mean},
                                  {"sample_stddev", r.conflict.sample_stddev},
                                  {"stddev_defined", r.conflict.stddev_defined},
                                  {"bin_width", r.conflict.bin_width},
                                  {"histogram", r.conflict.histogram},
                                  {"count_at_max", r.conflict.count_at_max}};

    Json prev = {{"confidence", r.prevalence.confidence},
                 {"n", r.prevalence.n},
                 {"successes", r.prevalence.successes},
                 {"prevalence", r.prevalence.prevalence},
                 {"entries", Json::array()}};
    for (const auto &e : r.prevalence.entries) {
        prev["entries"].push_back({{"attribute", e.attribute},
                                   {"value", e.value},
                                   {"n", e.n},
                                   {"successes", e.successes},
                                   {"p_hat", e.p_hat},
                                   {"ci_low", e.ci_low},
                                   {"ci_high", e.ci_high},
                                   {"tier", std::string(to_string(e.tier))}});
    }
    j["prevalence"] = std::move(prev);

    j["enrichment"] = Json::array();
    for (const auto &e : r.enrichment) {
        j["enrichment"].push_back({{"attribute", e.attribute},
                                   {"value", e.value},
                                   {"boundary_count", e.boundary_count},
                                   {"positive_count", e.positive_count},
                                   {"boundary_fraction", optional_number(e.boundary_fraction)},
                                   {"consistent_fraction", optional_number(e.consistent_fraction)}});
    }

    j["joint_matrices"] = Json::array();
    for (const auto &m : r.joints) {
        Json cells = Json::array();
        for (const auto &c : m.cells) {
            cells.push_back({{"n", c.n},
                             {"successes", c.successes},
                             {"boundary_count", c.boundary_count},
                             {"p_joint", optional_number(c.p_joint)},
                             {"suppressed", c.suppressed}});
        }
        j["joint_matrices"].push_back({{"attr_a", m.attr_a},
                                       {"attr_b", m.attr_b},
                                       {"values_a", m.values_a},
                                       {"values_b", m.values_b},
                                       {"min_n", m.min_n},
                                       {"cells", std::move(cells)}});
    }

    j["top_profiles"] = Json::array();
    for (const auto &p : r.top_profiles) {
        j["top_profiles"].push_back({{"rank", p.rank},
                                     {"signature", p.signature},
                                     {"key", p.key},
                                     {"n", p.n},
                                     {"count_label1", p.count_label1},
                                     {"count_label0", p.count_label0},
                                     {"conflict_ratio", rational_json(p.conflict_ratio)},
                                     {"active_values", p.active_values}});
    }

    if (r.splits) {
        Json splits = Json::object();
        for (const auto &[s, c] : *r.splits) {
            splits[std::string(to_string(s))] = {{"size", c.size},
                                                 {"profile_count", c.profile_count},
                                                 {"boundary_count", c.boundary_count},
                                                 {"gamma", rational_json(c.gamma)},
                                                 {"ceiling", ceiling_json(c.ceiling)}};
        }
        j["splits"] = std::move(splits);
    } else {
        j["splits"] = nullptr;
    }

    j["filter_comparison"] = Json::array();
    for (const auto &row : r.filter_comparison) {
        Json m = composition_json(row.metrics);
        m["variant"] = row.variant;
        j["filter_comparison"].push_back(std::move(m));
    }
    return j.dump(2) + "\n";
}

AuditReport parse_structured(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw SchemaError(std::string("report is not valid JSON: ") + e.what());
    }
    AuditReport r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != report_schema_version) {
            throw SchemaError("unsupported report schema version " + std::to_string(r.schema_version));
        }
        r.attributes = j.at("attributes").get<std::vector<std::string>>();
        const auto &s = j.at("summary");
        r.universe_size = s.at("universe_size").get<std::size_t>();
        r.profile_count = s.at("profile_count").get<std::size_t>();
        r.inconsistent_count = s.at("inconsistent_count").get<std::size_t>();
        r.positive_count = s.at("positive_count").get<std::size_t>();
        r.boundary_count = s.at("boundary_count").get<std::size_t>();
        r.label1_count = s.at("label1_count").get<std::size_t>();
        r.label1_boundary_count = s.at("label1_boundary_count").get<std::size_t>();
        r.gamma = rational_from_json(j.at("gamma"));
        r.ceiling = ceiling_from(j.at("ceiling"));
        r.majority_rule_correct = j.at("majority_rule").at("correct").get<std::size_t>();
        r.tie_profiles = j.at("majority_rule").at("tie_profiles").get<std::size_t>();
        r.boundary_fraction = rational_from_json(j.at("boundary_fraction"));
        r.label1_boundary_fraction = rational_from_json(j.at("label1_boundary_fraction"));
        r.majority_baseline = rational_from_json(j.at("majority_baseline"));

        const auto &cd = j.at("conflict_distribution");
        r.conflict.empty = cd.at("empty").get<bool>();
        r.conflict.count = cd.at("count").get<std::size_t>();
        r.conflict.mean = cd.at("mean").get<double>();
        r.conflict.sample_stddev = cd.at("sample_stddev").get<double>();
        r.conflict.stddev_defined = cd.at("stddev_defined").get<bool>();
        r.conflict.bin_width = cd.at("bin_width").get<double>();
        r.conflict.histogram = cd.at("histogram").get<std::vector<std::size_t>>();
        r.conflict.count_at_max = cd.at("count_at_max").get<std::size_t>();

        const auto &pv = j.at("prevalence");
        r.prevalence.confidence = pv.at("confidence").get<double>();
        r.prevalence.n = pv.at("n").get<std::size_t>();
        r.prevalence.successes = pv.at("successes").get<std::size_t>();
        r.prevalence.prevalence = pv.at("prevalence").get<double>();
        for (const auto &e : pv.at("entries")) {
            r.prevalence.entries.push_back({e.at("attribute").get<std::string>(), e.at("value").get<std::string>(), e.at("n").get<std::size_t>(),
                                            e.at("successes").get<std::size_t>(), e.at("p_hat").get<double>(), e.at("ci_low").get<double>(),
                                            e.at("ci_high").get<double>(), tier_from(e.at("tier").get<std::string>())});
        }

        for (const auto &e : j.at("enrichment")) {
            r.enrichment.push_back({e.at("attribute").get<std::string>(), e.at("value").get<std::string>(),
                                    e.at("boundary_count").get<std::size_t>(), e.at("positive_count").get<std::size_t>(),
                                    optional_from(e.at("boundary_fraction")), optional_from(e.at("consistent_fraction"))});
        }

        for (const auto &m : j.at("joint_matrices")) {
            JointMatrix jm;
            jm.attr_a = m.at("attr_a").get<std::string>();
            jm.attr_b = m.at("attr_b").get<std::string>();
            jm.values_a = m.at("values_a").get<std::vector<std::string>>();
            jm.values_b = m.at("values_b").get<std::vector<std::string>>();
            jm.min_n = m.at("min_n").get<std::size_t>();
            for (const auto &c : m.at("cells")) {
                jm.cells.push_back({c.at("n").get<std::size_t>(), c.at("successes").get<std::size_t>(), c.at("boundary_count").get<std::size_t>(),
                                    optional_from(c.at("p_joint")), c.at("suppressed").get<bool>()});
            }
            r.joints.push_back(std::move(jm));
        }

        for (const auto &p : j.at("top_profiles")) {
            AmbiguousProfile row;
            row.rank = p.at("rank").get<std::size_t>();
            row.signature = p.at("signature").get<std::string>();
            row.key = p.at("key").get<Signature>();
            row.n = p.at("n").get<std::size_t>();
            row.count_label1 = p.at("count_label1").get<std::size_t>();
            row.count_label0 = p.at("count_label0").get<std::size_t>();
            row.conflict_ratio = rational_from_json(p.at("conflict_ratio"));
            row.active_values = p.at("active_values").get<std::vector<std::string>>();
            r.top_profiles.push_back(std::move(row));
        }

        if (!j.at("splits").is_null()) {
            std::map<Split, SplitCeiling> splits;
            for (const auto &[name, c] : j.at("splits").items()) {
                const auto s = parse_split(name);
                if (!s) {
                    throw SchemaError("unknown split '" + name + "' in report");
                }
                splits[*s] = {c.at("size").get<std::size_t>(), c.at("profile_count").get<std::size_t>(), c.at("boundary_count").get<std::size_t>(),
                              rational_from_json(c.at("gamma")), ceiling_from(c.at("ceiling"))};
            }
            r.splits = std::move(splits);
        }

        for (const auto &row : j.at("filter_comparison")) {
            r.filter_comparison.push_back({row.at("variant").get<std::string>(), composition_from_json(row)});
        }
    } catch (const Json::exception &e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Markdown

namespace {

std::string pct(const Rational &r) {
    return to_decimal(r * 100, 1) + "%";
}

std::string fraction(const Rational &r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string variant_title(const std::string &v) {
    if (v == "no_filter") {
        return "No filter";
    }
    if (v == "asymmetric") {
        return "Asymmetric";
    }
    if (v == "symmetric") {
        return "Symmetric";
    }
    return v;
}

}  // namespace

std::string render_markdown(const AuditReport &r) {
    std::ostringstream md;
    md << "# Concept consistency audit\n\n";
    md << "## Summary\n\n";
    md << "| Quantity | Value |\n|---|---|\n";
    md << "| Records | " << r.universe_size << " |\n";
    md << "| Concept profiles | " << r.profile_count << " |\n";
    md << "| Inconsistent profiles | " << r.inconsistent_count << " (" << pct(Rational(static_cast<std::int64_t>(r.inconsistent_count),
                                                                                       static_cast<std::int64_t>(std::max<std::size_t>(r.profile_count, 1))))
       << ") |\n";
    md << "| Positive region | " << r.positive_count << " |\n";
    md << "| Boundary region | " << r.boundary_count << " (" << pct(r.boundary_fraction) << ") |\n";
    md << "| Quality of classification | " << fraction(r.gamma) << " = " << to_decimal(r.gamma, 4) << " |\n";
    md << "| Accuracy ceiling | " << fraction(r.ceiling.value) << " = " << to_decimal(r.ceiling.value, 4) << " |\n";
    md << "| Correct predictions at the ceiling | " << r.ceiling.correct << " (positive region " << r.positive_count
       << " + majority counts " << r.ceiling.majority_sum << ") |\n";
    md << "| Majority-vote rule correct | " << r.majority_rule_correct << " (" << r.tie_profiles << " tie profiles) |\n";
    md << "| Majority-class baseline | " << to_decimal(r.majority_baseline, 4) << " |\n";
    md << "| Label-1 records in boundary | " << r.label1_boundary_count << " of " << r.label1_count << " (" << pct(r.label1_boundary_fraction)
       << ") |\n\n";

    md << "## Conflict-ratio distribution\n\n";
    if (r.conflict.empty) {
        md << "No inconsistent profiles: the boundary region is empty, so there is no conflict-ratio distribution.\n\n";
    } else {
        md << "- Inconsistent profiles: " << r.conflict.count << "\n";
        md << "- Mean conflict ratio: " << to_decimal(r.conflict.mean, 4) << "\n";
        md << "- Sample standard deviation: " << to_decimal(r.conflict.sample_stddev, 4) << (r.conflict.stddev_defined ? "" : " (undefined, fewer than two profiles)")
           << "\n";
        md << "- Profiles at conflict ratio 0.5: " << r.conflict.count_at_max << "\n\n";
        md << "| Bin | Profiles |\n|---|---|\n";
        for (std::size_t i = 0; i < r.conflict.histogram.size(); ++i) {
            md << "| (" << to_decimal(r.conflict.bin_width * static_cast<double>(i), 2) << ", "
               << to_decimal(std::min(0.5, r.conflict.bin_width * static_cast<double>(i + 1)), 2) << "] | " << r.conflict.histogram[i] << " |\n";
        }
        md << "\n";
    }

    md << "## Most ambiguous profiles\n\n";
    if (r.top_profiles.empty()) {
        md << "No inconsistent profiles.\n\n";
    } else {
        md << "| # | n_k | n_k (label 1) | n_k (label 0) | conflict ratio | Key concept values |\n|---|---|---|---|---|---|\n";
        for (const auto &p : r.top_profiles) {
            std::string values;
            for (const auto &v : p.active_values) {
                values += (values.empty() ? "" : ", ") + v;
            }
            md << "| " << p.rank << " | " << p.n << " | " << p.count_label1 << " | " << p.count_label0 << " | "
               << to_decimal(p.conflict_ratio, 4) << " | " << (values.empty() ? "(all default)" : values) << " |\n";
        }
        md << "\n";
    }

    md << "## Filtering strategies\n\n";
    md << "| Property |";
    for (const auto &row : r.filter_comparison) {
        md << " " << variant_title(row.variant) << " |";
    }
    md << "\n|---|";
    for (std::size_t i = 0; i < r.filter_comparison.size(); ++i) {
        md << "---|";
    }
    md << "\n";
    auto line = [&](std::string_view title, auto &&cell) {
        md << "| " << title << " |";
        for (const auto &row : r.filter_comparison) {
            md << " " << cell(row.metrics) << " |";
        }
        md << "\n";
    };
    line("Records", [](const CompositionMetrics &m) { return std::to_string(m.size); });
    line("Label-1 records retained", [](const CompositionMetrics &m) { return std::to_string(m.label1_count); });
    line("Class imbalance (label 1 : label 0)", [](const CompositionMetrics &m) { return m.imbalance_ratio; });
    line("Quality of classification", [](const CompositionMetrics &m) { return to_decimal(m.gamma, 4); });
    line("Accuracy ceiling", [](const CompositionMetrics &m) { return pct(m.ceiling); });
    line("All label-1 records preserved", [](const CompositionMetrics &m) { return std::string(m.all_label1_preserved ? "Yes" : "No"); });
    line("Concept consistency", [](const CompositionMetrics &m) { return std::string(to_string(m.consistency)); });
    md << "\n";

    md << "## Prevalence per concept value\n\n";
    md << "Dataset-level prevalence: " << to_decimal(r.prevalence.prevalence, 3) << " (" << r.prevalence.successes << "/" << r.prevalence.n
       << "); intervals are Wilson score at " << to_decimal(r.prevalence.confidence * 100.0, 1) << "%.\n\n";
    md << "| Attribute | Value | n | p_hat | CI low | CI high | Tier |\n|---|---|---|---|---|---|---|\n";
    for (const auto &e : r.prevalence.entries) {
        md << "| " << e.attribute << " | " << e.value << " | " << e.n << " | " << to_decimal(e.p_hat, 2) << " | " << to_decimal(e.ci_low, 3) << " | "
           << to_decimal(e.ci_high, 3) << " | " << to_string(e.tier) << " |\n";
    }
    md << "\n";

    md << "## Boundary enrichment\n\n";
    if (r.boundary_count == 0) {
        md << "The boundary region is empty; enrichment fractions are undefined.\n\n";
    } else {
        md << "| Attribute | Value | Boundary fraction | Consistent fraction |\n|---|---|---|---|\n";
        for (const auto &e : r.enrichment) {
            md << "| " << e.attribute << " | " << e.value << " | " << (e.boundary_fraction ? to_decimal(*e.boundary_fraction, 2) : "-") << " | "
               << (e.consistent_fraction ? to_decimal(*e.consistent_fraction, 2) : "-") << " |\n";
        }
        md << "\n";
    }

    for (const auto &m : r.joints) {
        md << "## Joint rate: " << m.attr_a << " x " << m.attr_b << "\n\n";
        md << "Each cell: P(label 1), n, boundary count. Cells with n < " << m.min_n << " are omitted.\n\n";
        md << "| " << m.attr_a << " \\ " << m.attr_b << " |";
        for (const auto &vb : m.values_b) {
            md << " " << vb << " |";
        }
        md << "\n|---|";
        for (std::size_t b = 0; b < m.values_b.size(); ++b) {
            md << "---|";
        }
        md << "\n";
        for (std::size_t a = 0; a < m.values_a.size(); ++a) {
            md << "| " << m.values_a[a] << " |";
            for (std::size_t b = 0; b < m.values_b.size(); ++b) {
                const auto &c = m.at(a, b);
                if (c.suppressed) {
                    md << " |";
                } else {
                    md << " " << to_decimal(*c.p_joint, 2) << " (n=" << c.n << ", bnd=" << c.boundary_count << ") |";
                }
            }
            md << "\n";
        }
        md << "\n";
    }

    if (r.splits) {
        md << "## Per-split ceilings\n\n| Split | Records | Profiles | Boundary | Quality | Ceiling |\n|---|---|---|---|---|---|\n";
        for (const auto &[s, c] : *r.splits) {
            md << "| " << to_string(s) << " | " << c.size << " | " << c.profile_count << " | " << c.boundary_count << " | " << to_decimal(c.gamma, 4)
               << " | " << to_decimal(c.ceiling.value, 4) << " |\n";
        }
        md << "\n";
    }
    return md.str();
}

// ---------------------------------------------------------------------------
// CSV bundle

namespace {

std::string opt4(const std::optional<double> &v) {
    return v ? to_decimal(*v, 4) : "";
}

std::string table(const std::vector<std::vector<std::string>> &rows) {
    std::ostringstream out;
    for (const auto &row : rows) {
        csv::write_row(out, row);
    }
    return out.str();
}

}  // namespace

std::map<std::string, std::string> render_csv_bundle(const AuditReport &r) {
    std::map<std::string, std::string> files;
    auto s = [](std::size_t v) { return std::to_string(v); };

    files["summary.csv"] = table({{"quantity", "value", "numerator", "denominator"},
                                  {"universe_size", s(r.universe_size), "", ""},
                                  {"profile_count", s(r.profile_count), "", ""},
                                  {"inconsistent_count", s(r.inconsistent_count), "", ""},
                                  {"positive_count", s(r.positive_count), "", ""},
                                  {"boundary_count", s(r.boundary_count), "", ""},
                                  {"label1_count", s(r.label1_count), "", ""},
                                  {"label1_boundary_count", s(r.label1_boundary_count), "", ""},
                                  {"gamma", to_decimal(r.gamma, 4), std::to_string(r.gamma.numerator()), std::to_string(r.gamma.denominator())},
                                  {"ceiling", to_decimal(r.ceiling.value, 4), std::to_string(r.ceiling.value.numerator()),
                                   std::to_string(r.ceiling.value.denominator())},
                                  {"majority_sum", s(r.ceiling.majority_sum), "", ""},
                                  {"majority_rule_correct", s(r.majority_rule_correct), "", ""},
                                  {"majority_baseline", to_decimal(r.majority_baseline, 4), std::to_string(r.majority_baseline.numerator()),
                                   std::to_string(r.majority_baseline.denominator())}});

    std::vector<std::vector<std::string>> rows{{"attribute", "value", "n", "successes", "p_hat", "ci_low", "ci_high", "tier"}};
    for (const auto &e : r.prevalence.entries) {
        rows.push_back({e.attribute, e.value, s(e.n), s(e.successes), to_decimal(e.p_hat, 4), to_decimal(e.ci_low, 4), to_decimal(e.ci_high, 4),
                        std::string(to_string(e.tier))});
    }
    files["prevalence.csv"] = table(rows);

    rows = {{"attribute", "value", "boundary_count", "positive_count", "boundary_fraction", "consistent_fraction"}};
    for (const auto &e : r.enrichment) {
        rows.push_back({e.attribute, e.value, s(e.boundary_count), s(e.positive_count), opt4(e.boundary_fraction), opt4(e.consistent_fraction)});
    }
    files["enrichment.csv"] = table(rows);

    rows = {{"rank", "n_k", "count_label1", "count_label0", "gamma_k", "signature", "active_values"}};
    for (const auto &p : r.top_profiles) {
        std::string values;
        for (const auto &v : p.active_values) {
            values += (values.empty() ? "" : "; ") + v;
        }
        rows.push_back({s(p.rank), s(p.n), s(p.count_label1), s(p.count_label0), to_decimal(p.conflict_ratio, 4), p.signature, values});
    }
    files["top_profiles.csv"] = table(rows);

    rows = {{"bin_low", "bin_high", "profiles"}};
    for (std::size_t i = 0; i < r.conflict.histogram.size(); ++i) {
        rows.push_back({to_decimal(r.conflict.bin_width * static_cast<double>(i), 4),
                        to_decimal(std::min(0.5, r.conflict.bin_width * static_cast<double>(i + 1)), 4), s(r.conflict.histogram[i])});
    }
    files["conflict_histogram.csv"] = table(rows);

    for (const auto &m : r.joints) {
        rows = {{m.attr_a, m.attr_b, "n", "successes", "p_joint", "boundary_count", "suppressed"}};
        for (std::size_t a = 0; a < m.values_a.size(); ++a) {
            for (std::size_t b = 0; b < m.values_b.size(); ++b) {
                const auto &c = m.at(a, b);
                rows.push_back({m.values_a[a], m.values_b[b], s(c.n), s(c.successes), c.suppressed ? "" : opt4(c.p_joint), s(c.boundary_count),
                                c.suppressed ? "true" : "false"});
            }
        }
        files["joint_" + m.attr_a + "_x_" + m.attr_b + ".csv"] = table(rows);
    }

    if (r.splits) {
        rows = {{"split", "size", "profile_count", "boundary_count", "gamma", "ceiling"}};
        for (const auto &[sp, c] : *r.splits) {
            rows.push_back({std::string(to_string(sp)), s(c.size), s(c.profile_count), s(c.boundary_count), to_decimal(c.gamma, 4),
                            to_decimal(c.ceiling.value, 4)});
        }
        files["split_ceilings.csv"] = table(rows);
    }

    rows = {{"variant", "images", "label1", "label0", "imbalance_ratio", "gamma", "ceiling", "all_label1_preserved", "consistency"}};
    for (const auto &row : r.filter_comparison) {
        const auto &m = row.metrics;
        rows.push_back({row.variant, s(m.size), s(m.label1_count), s(m.label0_count), m.imbalance_ratio, to_decimal(m.gamma, 4),
                        to_decimal(m.ceiling, 4), m.all_label1_preserved ? "true" : "false", std::string(to_string(m.consistency))});
    }
    files["filter_comparison.csv"] = table(rows);
    return files;
}

std::vector<std::filesystem::path> write_report(const AuditReport &report, const std::filesystem::path &directory,
                                                const std::vector<ReportFormat> &formats) {
    ensure_directory(directory);
    std::vector<std::filesystem::path> written;
    const std::set<ReportFormat> wanted(formats.begin(), formats.end());
    if (wanted.contains(ReportFormat::structured)) {
        written.push_back(directory / "audit.json");
        write_file_atomic(written.back(), render_structured(report));
    }
    if (wanted.contains(ReportFormat::markdown)) {
        written.push_back(directory / "audit.md");
        write_file_atomic(written.back(), render_markdown(report));
    }
    if (wanted.contains(ReportFormat::csv_bundle)) {
        const auto dir = directory / "audit_csv";
        ensure_directory(dir);
        for (const auto &[name, text] : render_csv_bundle(report)) {
            written.push_back(dir / name);
            write_file_atomic(written.back(), text);
        }
    }
    return written;
}

}  // namespace rsaudit
