#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rsaudit/error.hpp"
#include "rsaudit/report.hpp"

#include <filesystem>

using namespace rsaudit;

namespace {

bool contains(const std::string &haystack, std::string_view needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("audit report numbers for the toy dataset") {
    ReportOptions opts;
    opts.joints = {{"a", "b"}};
    const AuditReport r = build_audit_report(fixtures::toy(), opts);
    CHECK(r.attributes == std::vector<std::string>{"a", "b"});
    CHECK(r.universe_size == 8);
    CHECK(r.profile_count == 4);
    CHECK(r.inconsistent_count == 2);
    CHECK(r.positive_count == 3);
    CHECK(r.boundary_count == 5);
    CHECK(r.label1_count == 4);
    CHECK(r.label1_boundary_count == 3);
    CHECK(r.gamma == Rational(3, 8));
    CHECK(r.ceiling.value == Rational(3, 4));
    CHECK(r.majority_rule_correct == 6);
    CHECK(r.tie_profiles == 1);
    CHECK(r.boundary_fraction == Rational(5, 8));
    CHECK(r.label1_boundary_fraction == Rational(3, 4));
    CHECK(r.majority_baseline == Rational(1, 2));
    CHECK(r.joints.size() == 1);
    CHECK(r.top_profiles.size() == 2);
    REQUIRE(r.splits.has_value());
    CHECK(r.splits->at(Split::train).gamma == Rational(1, 2));
    REQUIRE(r.filter_comparison.size() == 3);
    CHECK(r.filter_comparison[0].variant == "no_filter");
    CHECK(r.filter_comparison[1].variant == "asymmetric");
    CHECK(r.filter_comparison[1].metrics.size == 6);
    CHECK(r.filter_comparison[2].metrics.size == 3);
}

TEST_CASE("structured report round-trips") {
    ReportOptions opts;
    opts.joints = {{"a", "b"}};
    const AuditReport r = build_audit_report(fixtures::toy(), opts);
    const std::string text = render_structured(r);
    const AuditReport back = parse_structured(text);
    CHECK(back == r);
    CHECK(render_structured(back) == text);

    const AuditReport unsplit = build_audit_report(fixtures::toy_unsplit());
    CHECK_FALSE(unsplit.splits.has_value());
    CHECK(parse_structured(render_structured(unsplit)) == unsplit);
}

TEST_CASE("structured report rejects malformed input") {
    CHECK_THROWS_AS((void)parse_structured("{}"), SchemaError);
    CHECK_THROWS_AS((void)parse_structured("not json"), SchemaError);
}

TEST_CASE("markdown report sections") {
    ReportOptions opts;
    opts.joints = {{"a", "b"}};
    const std::string md = render_markdown(build_audit_report(fixtures::toy(), opts));
    CHECK(contains(md, "| Records | 8 |"));
    CHECK(contains(md, "| Quality of classification | 3/8 = 0.3750 |"));
    CHECK(contains(md, "| Accuracy ceiling | 3/4 = 0.7500 |"));
    CHECK(contains(md, "## Most ambiguous profiles"));
    CHECK(contains(md, "## Filtering strategies"));
    CHECK(contains(md, "| Class imbalance (label 1 : label 0) | 1:1.0 | 1:0.5 | 1:2.0 |"));
    CHECK(contains(md, "## Per-split ceilings"));
    CHECK(contains(md, "a x b"));
}

TEST_CASE("csv bundle files") {
    ReportOptions opts;
    opts.joints = {{"a", "b"}};
    const auto files = render_csv_bundle(build_audit_report(fixtures::toy(), opts));
    for (const char *name : {"summary.csv", "prevalence.csv", "enrichment.csv", "top_profiles.csv", "conflict_histogram.csv",
                             "joint_a_x_b.csv", "split_ceilings.csv", "filter_comparison.csv"}) {
        CAPTURE(name);
        CHECK(files.count(name) == 1);
    }
    CHECK(contains(files.at("summary.csv"), "gamma,0.3750,3,8"));
}

TEST_CASE("default joint pairs follow normalised attribute names") {
    ConceptSchema schema;
    for (const char *n : {"pigment_network", "streaks", "dots_and_globules", "blue_whitish_veil"}) {
        schema.attributes.push_back({n, {"absent"}, std::string("absent")});
    }
    const auto pairs = default_joint_pairs(schema);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"blue_whitish_veil", "dots_and_globules"});
    CHECK(pairs[1] == std::pair<std::string, std::string>{"pigment_network", "streaks"});
    CHECK(default_joint_pairs(fixtures::toy().schema()).empty());
}

TEST_CASE("write_report emits the requested formats") {
    const auto dir = std::filesystem::temp_directory_path() / "rsaudit_report_test";
    std::filesystem::remove_all(dir);
    const AuditReport r = build_audit_report(fixtures::toy());
    const auto written = write_report(r, dir, {ReportFormat::structured, ReportFormat::markdown, ReportFormat::csv_bundle});
    CHECK(std::filesystem::exists(dir / "audit.json"));
    CHECK(std::filesystem::exists(dir / "audit.md"));
    CHECK(std::filesystem::exists(dir / "audit_csv" / "summary.csv"));
    CHECK(written.size() >= 3);
    std::filesystem::remove_all(dir);
}
