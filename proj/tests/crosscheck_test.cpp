#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include <linmaps/crosscheck.hpp>

using namespace linmaps;

namespace {

bool has_note(const CrossCheckReport& r, const std::string& needle)
{
    return std::any_of(r.notes.begin(), r.notes.end(),
                       [&](const std::string& n) { return n.find(needle) != std::string::npos; });
}

const CheckResult* find_check(const CrossCheckReport& r, const std::string& name)
{
    for (const auto& c : r.checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

} // namespace

TEST(CompareSequences, ReportsFirstDivergence)
{
    const auto ok = compare_sequences("s", "a vs b", {1, 2, 3}, {1, 2, 3});
    EXPECT_TRUE(ok.passed);
    EXPECT_EQ(ok.range, "n=1..3");
    EXPECT_FALSE(ok.divergence);

    const auto bad = compare_sequences("s", "a vs b", {1, 2, 3, 4}, {1, 2, 7, 5}, 2);
    EXPECT_FALSE(bad.passed);
    EXPECT_EQ(*bad.divergence, "n=4: 3 vs 7");

    EXPECT_FALSE(compare_sequences("s", "", {1, 2}, {1}).passed);
}

TEST(CompareTables, ReportsCell)
{
    CountTable a, b;
    a.provenance = "x";
    b.provenance = "y";
    a.set(1, 1, 4);
    b.set(1, 1, 4);
    a.set(2, 3, 2);
    EXPECT_TRUE(compare_tables("t", a, b, 0, 1).passed);
    const auto r = compare_tables("t", a, b, 0, 2);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(*r.divergence, "(n=2, k=3): 2 vs 0");
    EXPECT_EQ(r.producers, "x vs y");
}

TEST(RunCrosscheck, AllProducersAgreeToSizeThree)
{
    const auto report = run_crosscheck({});
    EXPECT_TRUE(report.passed()) << report.to_text();
    EXPECT_TRUE(has_note(report, "class-map row n=2 | series k=1:3 k=2:5 k=3:2 | maps k=1:3 k=2:5 k=3:2 | classes "
                                 "k=1:3 k=2:5 k=3:2"))
        << report.to_text();

    std::set<std::string> names;
    for (const auto& c : report.checks)
        names.insert(c.name);
    for (const char* expected :
         {"terms:linear", "terms:neutral", "terms:normal", "terms:planar-neutral", "terms:planar-normal",
          "quotient-routes:neutral", "quotient-routes:normal", "classes:neutral", "classes:normal", "closed-quotient-vs-neutral-at-1",
          "bijection:series-vs-maps", "bijection:classes-vs-maps", "planar-maps-vs-planar-normal",
          "maps-vs-quotient-normal", "trivalent-maps-vs-linear", "reference:linear", "reference:normal",
          "reference:planar-normal", "reference:quotient", "reference:quotient-maps", "term-core"})
        EXPECT_EQ(names.count(expected), 1u) << expected;

    const auto text = report.to_text();
    EXPECT_NE(text.find("OVERALL PASS"), std::string::npos);
    EXPECT_EQ(report.to_json()["passed"], true);
}

TEST(RunCrosscheck, TamperedReferenceIsLocated)
{
    CrossCheckOptions opt;
    opt.references.normal_closed[2] = 27;
    const auto report = run_crosscheck(opt);
    EXPECT_FALSE(report.passed());
    const auto* c = find_check(report, "reference:normal");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed);
    EXPECT_EQ(*c->divergence, "n=3: 27 vs 26");
    const auto* e = find_check(report, "reference:normal-enum");
    ASSERT_NE(e, nullptr);
    EXPECT_FALSE(e->passed);
    EXPECT_NE(report.to_text().find("FAIL reference:normal [reference vs series:LR] n=1..6 -- first divergence: "
                                    "n=3: 27 vs 26"),
              std::string::npos);
    EXPECT_NE(report.to_text().find("OVERALL FAIL"), std::string::npos);
}

TEST(RunCrosscheck, SizeFourIncludesQuotientRowFour)
{
    CrossCheckOptions opt;
    opt.max_n = 4;
    const auto report = run_crosscheck(opt);
    EXPECT_TRUE(report.passed()) << report.to_text();
    EXPECT_TRUE(has_note(report, "class-map row n=4 | series k=1:105 k=2:260 k=3:234 k=4:93 k=5:14"))
        << report.to_text();
}
