#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rsaudit/error.hpp"
#include "rsaudit/rational.hpp"
#include "rsaudit/roughset.hpp"

using namespace rsaudit;

TEST_CASE("rational decimals round half to even") {
    CHECK(to_decimal(Rational(1, 8), 2) == "0.12");
    CHECK(to_decimal(Rational(3, 8), 2) == "0.38");
    CHECK(to_decimal(Rational(5, 8), 2) == "0.62");
    CHECK(to_decimal(Rational(2, 3)) == "0.6667");
    CHECK(to_decimal(Rational(-1, 3)) == "-0.3333");
    CHECK(to_decimal(Rational(1)) == "1.0000");
    CHECK(to_decimal(Rational(0), 0) == "0");
    CHECK(to_decimal(0.125, 2) == "0.12");
}

TEST_CASE("partition of the toy dataset") {
    const Dataset d = fixtures::toy();
    const Partition p = build_partition(d);
    REQUIRE(p.size() == 4);
    CHECK(p.universe_size() == 8);
    const auto profiles = p.profiles();
    // keys in lexicographic order: (x,p) (x,q) (y,p) (y,q)
    CHECK(profiles[0].key == Signature{0, 0});
    CHECK(profiles[0].members == std::vector<std::size_t>{0, 1, 2});
    CHECK(profiles[0].count_label1 == 2);
    CHECK(profiles[0].count_label0 == 1);
    CHECK(profiles[1].consistent());
    CHECK(profiles[2].consistent());
    CHECK(profiles[3].tie());
    CHECK(profiles[3].majority_label() == Label::positive);
    CHECK(p.profile_of(7) == 3);
    const Signature yq{1, 1};
    REQUIRE(p.find(yq) != nullptr);
    CHECK(p.find(yq)->members == std::vector<std::size_t>{6, 7});
    const Signature missing{2, 0};
    CHECK(p.find(missing) == nullptr);
}

TEST_CASE("regions, quality and ceiling of the toy dataset") {
    const Dataset d = fixtures::toy();
    const Analysis a = analyze(d);
    const RegionAnalysis &r = a.regions;
    CHECK(r.universe_size == 8);
    CHECK(r.profile_count == 4);
    CHECK(r.positive == std::vector<std::size_t>{3, 4, 5});
    CHECK(r.boundary == std::vector<std::size_t>{0, 1, 2, 6, 7});
    CHECK(r.gamma == Rational(3, 8));
    REQUIRE(r.inconsistent.size() == 2);
    CHECK(r.inconsistent[0].conflict_ratio == Rational(1, 3));
    CHECK(r.inconsistent[1].conflict_ratio == Rational(1, 2));
    CHECK(r.ceiling.value == Rational(3, 4));
    CHECK(r.ceiling.correct == 6);
    CHECK(r.ceiling.majority_sum == 3);
    CHECK(r.boundary_count(Label::positive, d) == 3);
    CHECK(r.boundary_count(Label::negative, d) == 2);
    CHECK(accuracy_ceiling(r, d) == r.ceiling);
}

TEST_CASE("conflict ratio") {
    Profile p;
    p.count_label1 = 3;
    p.count_label0 = 7;
    CHECK(conflict_ratio(p) == Rational(3, 10));
    p.count_label1 = 0;
    CHECK(conflict_ratio(p) == Rational(0));
}

TEST_CASE("majority-vote rule attains the ceiling") {
    const Dataset d = fixtures::toy();
    const Partition p = build_partition(d);
    const MajorityRule rule = majority_vote_classifier(p);
    CHECK(rule.correct == 6);
    CHECK(rule.accuracy() == Rational(3, 4));
    CHECK(rule.tie_count() == 1);
    CHECK(measure_accuracy(rule, d) == Rational(3, 4));
    const Signature xq{0, 1};
    CHECK(rule.predict(xq) == Label::negative);
    const Signature yq{1, 1};
    CHECK(rule.predict(yq) == Label::positive);
}

TEST_CASE("brute force agrees with the closed form on the toy dataset") {
    const Dataset d = fixtures::toy();
    CHECK(brute_force_ceiling(d) == Rational(3, 4));
    CHECK_THROWS_AS((void)brute_force_ceiling(d, 3), ContractError);
}

TEST_CASE("fully consistent data has gamma and ceiling 1") {
    const Dataset d = fixtures::parse("id,c,label\n1,u,1\n2,u,1\n3,v,0\n");
    const Analysis a = analyze(d);
    CHECK(a.regions.gamma == Rational(1));
    CHECK(a.regions.ceiling.value == Rational(1));
    CHECK(a.regions.boundary.empty());
    CHECK(a.regions.inconsistent.empty());
}

TEST_CASE("single fully conflicted profile") {
    const Dataset d = fixtures::parse("id,c,label\n1,u,1\n2,u,0\n3,u,0\n4,u,1\n");
    const Analysis a = analyze(d);
    CHECK(a.regions.gamma == Rational(0));
    CHECK(a.regions.ceiling.value == Rational(1, 2));
    CHECK(brute_force_ceiling(d) == Rational(1, 2));
}

TEST_CASE("per-split ceilings rebuild the partition inside each split") {
    const Dataset d = fixtures::toy();
    const auto splits = per_split_ceiling(d);
    REQUIRE(splits.size() == 3);
    const auto &train = splits.at(Split::train);
    CHECK(train.size == 4);
    CHECK(train.profile_count == 3);
    CHECK(train.boundary_count == 2);
    CHECK(train.gamma == Rational(1, 2));
    CHECK(train.ceiling.value == Rational(3, 4));
    // r2 and r7 sit in the global boundary but are consistent within validation
    CHECK(splits.at(Split::valid).gamma == Rational(1));
    CHECK(splits.at(Split::valid).ceiling.value == Rational(1));
    CHECK(splits.at(Split::test).size == 1);
    CHECK_THROWS_AS((void)per_split_ceiling(fixtures::toy_unsplit()), ContractError);
}

TEST_CASE("analysis of an empty dataset is a contract violation") {
    CHECK_THROWS_AS((void)analyze(Dataset{}), ContractError);
}
