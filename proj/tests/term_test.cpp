#include <gtest/gtest.h>

#include <string>
#include <vector>

#include <linmaps/enumerate.hpp>
#include <linmaps/term.hpp>

using namespace linmaps;

namespace {

Term B(std::uint32_t i) { return Term::bound(i); }
Term F(std::uint32_t j) { return Term::free(j); }
Term A(const Term& f, const Term& a) { return Term::app(f, a); }
Term L(const Term& b) { return Term::lam(b); }

} // namespace

TEST(Parse, Identity) { EXPECT_EQ(parse("\\x. x"), L(B(0))); }

TEST(Parse, PairSwap) { EXPECT_EQ(parse("\\x. \\y. y(x)"), L(L(A(B(0), B(1))))); }

TEST(Parse, FreeHead)
{
    const std::vector<std::string> ctx{"x"};
    EXPECT_EQ(parse("x(\\y. y)", ctx), A(F(0), L(B(0))));
}

TEST(Parse, LambdaSymbolAndJuxtaposition)
{
    EXPECT_EQ(parse("λx.λy.y x"), parse("\\x.\\y. y(x)"));
    EXPECT_EQ(parse("\\x y. x y"), parse("\\x.\\y.x(y)"));
    EXPECT_EQ(parse("\\x. x \\y. y"), parse("\\x. x(\\y. y)"));
    EXPECT_EQ(parse("\\x.\\y.\\z. x(y)(z)"), L(L(L(A(A(B(2), B(1)), B(0))))));
}

TEST(Parse, AlphaEquivalentNamesGiveTheSameTerm)
{
    EXPECT_EQ(parse("\\x.\\y. y x"), parse("\\a.\\b. b a"));
    EXPECT_NE(parse("\\x.\\y. y x"), parse("\\a.\\b. a b"));
}

TEST(Parse, Errors)
{
    try {
        parse("\\x. y");
        FAIL() << "expected unbound name";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
        EXPECT_NE(std::string(e.what()).find("unbound"), std::string::npos);
    }
    try {
        parse("\\x. \\x. x");
        FAIL() << "expected shadowing error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 5u);
    }
    try {
        parse("\\x. (x");
        FAIL() << "expected syntax error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    const std::vector<std::string> ctx{"x"};
    EXPECT_THROW(parse("\\x. x", ctx), ParseError);
    EXPECT_THROW(parse("x )", ctx), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(CheckLinear, Examples)
{
    EXPECT_TRUE(check_linear(parse("\\x. x"), 0));
    EXPECT_FALSE(check_linear(parse("\\x. x x"), 0));
    EXPECT_TRUE(check_linear(parse("\\x.\\y. y x"), 0));
    EXPECT_FALSE(check_linear(parse("\\x.\\y. x"), 0));
    EXPECT_FALSE(check_linear(parse("\\x.\\y. y"), 0));
}

TEST(CheckLinear, ContextPositions)
{
    const auto t = A(F(0), F(1));
    EXPECT_TRUE(check_linear(t, 2));
    EXPECT_FALSE(check_linear(t, 3));  // position 2 unused
    EXPECT_FALSE(check_linear(t, 1));  // position 1 out of range
    EXPECT_FALSE(check_linear(A(F(0), F(0)), 1));
    EXPECT_FALSE(check_linear(L(B(1)), 0));  // escaping index
}

TEST(Classify, Examples)
{
    const auto var = classify(F(0));
    EXPECT_EQ(var.kind, TermKind::Neutral);
    EXPECT_EQ(var.occurrences, 1u);
    EXPECT_EQ(var.neutral_size(), 0u);

    const auto id = classify(parse("\\x. x"));
    EXPECT_EQ(id.kind, TermKind::NormalOnly);
    EXPECT_EQ(id.normal_size(), 1u);
    EXPECT_FALSE(id.neutral_size().has_value());

    EXPECT_EQ(classify(parse("(\\x. x)(\\y. y)")).kind, TermKind::NotNormal);
    EXPECT_FALSE(classify(parse("(\\x. x)(\\y. y)")).normal_size().has_value());

    const std::vector<std::string> ctx{"x"};
    const auto head = classify(parse("x(\\y. y)", ctx));
    EXPECT_EQ(head.kind, TermKind::Neutral);
    EXPECT_EQ(head.occurrences, 2u);
    EXPECT_EQ(head.neutral_size(), 1u);
    EXPECT_EQ(head.normal_size(), 2u);
}

TEST(Classify, RedexBuriedUnderAbstraction)
{
    EXPECT_EQ(classify(parse("\\y. (\\x. x) y")).kind, TermKind::NotNormal);
    EXPECT_EQ(classify(parse("\\f. f (\\y. (\\x. x) y)")).kind, TermKind::NotNormal);
}

TEST(Classify, RejectsNonLinear) { EXPECT_THROW(classify(parse("\\x. x x")), std::invalid_argument); }

TEST(Render, Examples)
{
    EXPECT_EQ(render(L(B(0))), "λa.a");
    EXPECT_EQ(render(L(L(A(B(0), B(1))))), "λa.λb.b(a)");
    EXPECT_EQ(render(A(L(B(0)), L(B(0)))), "(λa.a)(λa.a)");
    const std::vector<std::string> ctx{"a"};
    EXPECT_EQ(render(A(F(0), L(B(0))), ctx), "a(λb.b)");
}

TEST(Ascii, Format)
{
    const auto t = L(L(A(B(0), B(1))));
    EXPECT_EQ(t.to_ascii(), "L L A V0 V1");
    EXPECT_EQ(A(F(1), F(0)).to_ascii(), "A F1 F0");
    EXPECT_EQ(Term::from_ascii("L L A V0 V1"), t);
    EXPECT_THROW(Term::from_ascii("L A V0"), std::invalid_argument);
    EXPECT_THROW(Term::from_ascii("L X"), std::invalid_argument);
}

TEST(Accessors, Children)
{
    const auto t = A(A(F(0), F(1)), L(B(0)));
    EXPECT_EQ(t.function(), A(F(0), F(1)));
    EXPECT_EQ(t.argument(), L(B(0)));
    EXPECT_EQ(t.argument().body(), B(0));
    EXPECT_THROW(t.body(), std::logic_error);
}

TEST(OpenOuterBlock, TurnsBlockBindersIntoFreePositions)
{
    const auto opened = open_outer_block(parse("\\x.\\y. y(\\z. x z)"), 0);
    EXPECT_EQ(opened.binders, 2u);
    const std::vector<std::string> ctx{"x", "y"};
    EXPECT_EQ(opened.body, parse("y(\\z. x z)", ctx));
}

// Properties over enumerated terms.

TEST(TermProperties, RenderParseRoundTripUpToSize3)
{
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            std::vector<std::string> names;
            for (std::size_t j = 0; j < k; ++j)
                names.push_back("v" + std::to_string(j));
            for_each_term(Family::Linear, n, k, [&](const Term& t) {
                ASSERT_EQ(parse(render(t, names), names), t) << render(t, names);
                ASSERT_EQ(Term::from_ascii(t.to_ascii()), t);
                ++checked;
            });
        }
    EXPECT_GT(checked, 60u);
}

TEST(TermProperties, ClassificationAgreesWithRedexScanUpToSize4)
{
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            for_each_term(Family::Linear, n, k, [&](const Term& t) {
                ASSERT_TRUE(check_linear(t, k));
                const auto c = classify(t);
                EXPECT_EQ(c.is_normal(), !has_redex(t)) << t.to_ascii();
                EXPECT_EQ(c.occurrences, n);
                if (c.is_neutral()) {
                    EXPECT_TRUE(c.is_normal());
                    EXPECT_EQ(*c.neutral_size(), n - 1);
                }
                if (c.is_normal())
                    EXPECT_EQ(*c.normal_size(), n);
            });
}
