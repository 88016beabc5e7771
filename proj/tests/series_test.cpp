#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <linmaps/enumerate.hpp>
#include <linmaps/exchange.hpp>
#include <linmaps/series.hpp>

using namespace linmaps;

namespace {

Polynomial poly_of(std::initializer_list<int> cs)
{
    Polynomial p;
    for (int c : cs)
        p.emplace_back(c);
    poly::trim(p);
    return p;
}

BiSeries single_row(std::size_t order, XFlavor flavor, std::size_t n, Polynomial p)
{
    BiSeries s(order, flavor);
    s.set_row(n, std::move(p));
    return s;
}

// Fixed-point oracle for B(z,x) = x + z B(z,x) B(z,x+1), using plain 64-bit
// arithmetic and direct binomial expansion of p(x+1). Each pass fixes one
// more z-order, so order+1 passes reach the fixed point.
std::map<std::pair<int, int>, std::int64_t> quotient_fixed_point(int order)
{
    using Table = std::map<std::pair<int, int>, std::int64_t>;
    auto choose = [](int n, int k) {
        std::int64_t r = 1;
        for (int i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    };
    Table b{{{0, 1}, 1}};
    for (int pass = 0; pass <= order; ++pass) {
        Table shifted;
        for (const auto& [key, c] : b)
            for (int i = 0; i <= key.second; ++i)
                shifted[{key.first, i}] += c * choose(key.second, i);
        Table next{{{0, 1}, 1}};
        for (const auto& [ka, ca] : b)
            for (const auto& [kb, cb] : shifted)
                if (ka.first + kb.first + 1 <= order)
                    next[{ka.first + kb.first + 1, ka.second + kb.second}] += ca * cb;
        b = std::move(next);
    }
    return b;
}

} // namespace

TEST(Mul, OrdinaryPolynomialProduct)
{
    const auto a = single_row(2, XFlavor::Ordinary, 0, poly_of({0, 1}));
    const auto b = single_row(2, XFlavor::Ordinary, 0, poly_of({1, 1}));
    EXPECT_EQ(mul(a, b).row(0), poly_of({0, 1, 1}));
}

TEST(Mul, ExponentialBinomialConvolution)
{
    const auto x = single_row(2, XFlavor::Exponential, 0, poly_of({0, 1}));
    EXPECT_EQ(mul(x, x).at(0, 2), 2);
}

TEST(Mul, ConvolvesInZ)
{
    auto a = single_row(3, XFlavor::Ordinary, 1, poly_of({1}));
    a.set_row(2, poly_of({0, 1}));
    const auto sq = mul(a, a);
    EXPECT_EQ(sq.row(2), poly_of({1}));
    EXPECT_EQ(sq.row(3), poly_of({0, 2}));
}

TEST(Mul, FlavorAndTruncationMismatch)
{
    EXPECT_THROW(mul(BiSeries(2, XFlavor::Ordinary), BiSeries(2, XFlavor::Exponential)), std::invalid_argument);
    EXPECT_THROW(mul(BiSeries(2, XFlavor::Ordinary), BiSeries(3, XFlavor::Ordinary)), std::invalid_argument);
}

TEST(Mul, SquareOfLinearSeriesFeedsBackToSizeTwo)
{
    // t_{2,0} = [z^2 x^0](L^2) + [z^2 x^1] L, with the latter also computed.
    const auto l = solve_linear(3);
    const auto sq = mul(l, l);
    EXPECT_EQ(sq.at(2, 0) + l.at(2, 1), 5);
    EXPECT_EQ(l.at(2, 0), 5);
}

TEST(Derivatives, IndexShift)
{
    const auto a = single_row(2, XFlavor::Exponential, 1, poly_of({0, 0, 2}));
    EXPECT_EQ(d_dx(a).at(1, 1), 2);
    EXPECT_TRUE(d_dx(single_row(2, XFlavor::Exponential, 1, poly_of({7}))).row(1).empty());
    EXPECT_THROW(d_dx(BiSeries(1, XFlavor::Ordinary)), std::invalid_argument);

    const auto b = single_row(2, XFlavor::Ordinary, 0, poly_of({0, 1, 1}));
    EXPECT_EQ(discrete_d(b).row(0), poly_of({1, 1}));
    EXPECT_TRUE(discrete_d(single_row(2, XFlavor::Ordinary, 0, poly_of({3}))).row(0).empty());
    EXPECT_THROW(discrete_d(BiSeries(1, XFlavor::Exponential)), std::invalid_argument);
}

TEST(TaylorShift, Examples)
{
    EXPECT_EQ(taylor_shift(single_row(0, XFlavor::Ordinary, 0, poly_of({0, 1}))).row(0), poly_of({1, 1}));
    EXPECT_EQ(taylor_shift(single_row(0, XFlavor::Ordinary, 0, poly_of({0, 0, 1}))).row(0), poly_of({1, 2, 1}));
    EXPECT_THROW(taylor_shift(BiSeries(0, XFlavor::Exponential)), std::invalid_argument);
}

TEST(TaylorShift, AgreesWithDerivativeSumAndEvaluation)
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> coeff(-9, 9), degree(0, 7);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial p(static_cast<std::size_t>(degree(rng)) + 1);
        for (auto& c : p)
            c = coeff(rng);
        poly::trim(p);
        const auto shifted = poly::taylor_shift(p);
        EXPECT_EQ(shifted, poly::derivative_sum(p));
        for (int x = -3; x <= 3; ++x) {
            Integer lhs = 0, rhs = 0, pw = 1, pw1 = 1;
            for (std::size_t k = 0; k < std::max(p.size(), shifted.size()); ++k) {
                lhs += poly::coeff(shifted, k) * pw;
                rhs += poly::coeff(p, k) * pw1;
                pw *= x;
                pw1 *= x + 1;
            }
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Solve, LinearClosed)
{
    const auto s = solve(SeriesFamily::L, 6);
    std::vector<Integer> closed;
    for (std::size_t n = 1; n <= 6; ++n)
        closed.push_back(s.series.at(n, 0));
    EXPECT_EQ(closed, (std::vector<Integer>{1, 5, 60, 1105, 27120, 828250}));
    EXPECT_EQ(s.series.flavor(), XFlavor::Exponential);
}

TEST(Solve, NormalAndPlanarClosed)
{
    const auto lr = solve(SeriesFamily::LR, 6).series;
    const auto pr = solve(SeriesFamily::PR, 6).series;
    std::vector<Integer> a, b;
    for (std::size_t n = 1; n <= 6; ++n) {
        a.push_back(lr.at(n, 0));
        b.push_back(pr.at(n, 0));
    }
    EXPECT_EQ(a, (std::vector<Integer>{1, 3, 26, 367, 7142, 176766}));
    EXPECT_EQ(b, (std::vector<Integer>{1, 2, 9, 54, 378, 2916}));
}

TEST(Solve, QuotientNeutralLowOrders)
{
    const auto qb = solve(SeriesFamily::QB, 2).series;
    EXPECT_EQ(qb.row(0), poly_of({0, 1}));
    EXPECT_EQ(qb.row(1), poly_of({0, 1, 1}));
    EXPECT_EQ(qb.row(2), poly_of({0, 3, 5, 2}));
}

TEST(Solve, QuotientAgreesWithFixedPointOracle)
{
    constexpr int order = 8;
    const auto oracle = quotient_fixed_point(order);
    const auto qb = solve(SeriesFamily::QB, order).series;
    for (int n = 0; n <= order; ++n)
        for (int k = 0; k <= n + 2; ++k) {
            const auto it = oracle.find({n, k});
            const std::int64_t expected = it == oracle.end() ? 0 : it->second;
            EXPECT_EQ(qb.at(static_cast<std::size_t>(n), static_cast<std::size_t>(k)), expected)
                << "n=" << n << " k=" << k;
        }
}

TEST(Solve, QuotientNormalClosedAndNeutralAtOne)
{
    const auto [qb, qr] = solve_quotient(12);
    std::vector<Integer> closed;
    for (std::size_t n = 1; n <= 6; ++n)
        closed.push_back(qr.at(n, 0));
    EXPECT_EQ(closed, (std::vector<Integer>{1, 2, 10, 74, 706, 8162}));
    EXPECT_TRUE(closed_quotient_matches_neutral(qb, qr));
}

TEST(Solve, RoutesAgreeToOrderTwelve)
{
    const auto q = solve_quotient_routes(12);
    EXPECT_EQ(q.b_split, q.b_direct);
    EXPECT_EQ(q.r_split, q.r_direct);
}

TEST(Solve, ClosedQuotientCheckDetectsPerturbation)
{
    auto [qb, qr] = solve_quotient(6);
    qr.set(4, 0, qr.at(4, 0) + 1);
    EXPECT_FALSE(closed_quotient_matches_neutral(qb, qr));
}

TEST(SeriesProperties, TriangularAndNonNegative)
{
    for (auto f : all_series_families) {
        const auto s = solve(f, 12).series;
        EXPECT_TRUE(s.is_triangular()) << to_string(f);
        for (std::size_t n = 0; n <= 12; ++n)
            for (const auto& c : s.row(n))
                EXPECT_GE(c, 0);
        const bool ogf = f != SeriesFamily::L && f != SeriesFamily::LB && f != SeriesFamily::LR;
        EXPECT_EQ(s.flavor() == XFlavor::Ordinary, ogf);
    }
}

TEST(SeriesProperties, LargeCoefficientsStayExact)
{
    const auto l = solve_linear(14);
    EXPECT_EQ(l.at(7, 0), 30220800);
    EXPECT_EQ(l.at(12, 0), Integer("13437880555850250"));
    EXPECT_GT(l.at(14, 0), Integer(std::numeric_limits<std::uint64_t>::max()));
}

TEST(SeriesProperties, AgreesWithEnumerationUpToSize4)
{
    const std::pair<SeriesFamily, Family> pairs[] = {
        {SeriesFamily::L, Family::Linear},        {SeriesFamily::LB, Family::Neutral},
        {SeriesFamily::LR, Family::Normal},       {SeriesFamily::PB, Family::PlanarNeutral},
        {SeriesFamily::PR, Family::PlanarNormal},
    };
    for (const auto& [sf, f] : pairs)
        EXPECT_EQ(to_count_table(solve(sf, 4)).entries, count_family(f, 4).entries) << to_string(sf);
    EXPECT_EQ(to_count_table(solve(SeriesFamily::QB, 4)).entries, count_classes(Family::Neutral, 4).unlabeled.entries);
    EXPECT_EQ(to_count_table(solve(SeriesFamily::QR, 4)).entries, count_classes(Family::Normal, 4).unlabeled.entries);
}

TEST(SeriesFamilyNames, RoundTrip)
{
    for (auto f : all_series_families)
        EXPECT_EQ(series_family_from_string(to_string(f)), f);
    EXPECT_THROW(series_family_from_string("Z"), std::invalid_argument);
}
