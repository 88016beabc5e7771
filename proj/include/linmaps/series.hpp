#ifndef LINMAPS_SERIES_HPP
#define LINMAPS_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "count_table.hpp"

namespace linmaps {

enum class XFlavor {
    Exponential,  // row n represents sum_k c[n][k] x^k / k!
    Ordinary      // row n represents sum_k c[n][k] x^k
};

using Polynomial = std::vector<Integer>;

namespace poly {

inline Integer coeff(const Polynomial& p, std::size_t k) { return k < p.size() ? p[k] : Integer(0); }

inline void trim(Polynomial& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline void add_to(Polynomial& acc, const Polynomial& p)
{
    if (acc.size() < p.size())
        acc.resize(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
        acc[k] += p[k];
}

inline Integer binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    Integer r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline Polynomial mul(const Polynomial& a, const Polynomial& b, XFlavor flavor)
{
    if (a.empty() || b.empty())
        return {};
    Polynomial r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0)
                continue;
            if (flavor == XFlavor::Ordinary)
                r[i + j] += a[i] * b[j];
            else
                r[i + j] += binomial(i + j, i) * a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

// c'[k] = c[k+1]: the derivative under exponential flavor and the discrete
// derivative (p(x) - p(0)) / x under ordinary flavor.
inline Polynomial shift_down(const Polynomial& p)
{
    if (p.size() <= 1)
        return {};
    return Polynomial(p.begin() + 1, p.end());
}

/// p(x + 1) by Horner's rule.
inline Polynomial taylor_shift(const Polynomial& p)
{
    Polynomial r;
    for (std::size_t i = p.size(); i-- > 0;) {
        // r <- r * (x + 1) + p[i]
        Polynomial next(r.size() + 1);
        for (std::size_t k = 0; k < r.size(); ++k) {
            next[k] += r[k];
            next[k + 1] += r[k];
        }
        next[0] += p[i];
        r = std::move(next);
    }
    trim(r);
    return r;
}

/// Ordinary derivative of an ordinary polynomial.
inline Polynomial derivative(const Polynomial& p)
{
    Polynomial r;
    for (std::size_t k = 1; k < p.size(); ++k)
        r.push_back(p[k] * k);
    trim(r);
    return r;
}

/// sum_i (1/i!) d^i p / dx^i, each division exact.
inline Polynomial derivative_sum(const Polynomial& p)
{
    Polynomial acc;
    Polynomial d = p;
    Integer fact = 1;
    for (std::size_t i = 0; !d.empty(); ++i) {
        if (i > 0)
            fact *= i;
        Polynomial term = d;
        for (auto& c : term) {
            if (c % fact != 0)
                throw std::logic_error("derivative_sum: inexact division by i!");
            c /= fact;
        }
        add_to(acc, term);
        d = derivative(d);
    }
    trim(acc);
    return acc;
}

/// Solves c[k] = rhs[k] + c[k+1] from the top degree down.
inline Polynomial back_substitute(const Polynomial& rhs)
{
    Polynomial c(rhs.size());
    Integer carry = 0;
    for (std::size_t k = rhs.size(); k-- > 0;) {
        carry += rhs[k];
        c[k] = carry;
    }
    trim(c);
    return c;
}

} // namespace poly

/// Truncated bivariate series: z-degrees 0..order, each z-coefficient a
/// polynomial in x with exact integer coefficients.
class BiSeries {
public:
    BiSeries(std::size_t order, XFlavor flavor) : flavor_(flavor), rows_(order + 1) {}

    std::size_t order() const noexcept { return rows_.size() - 1; }
    XFlavor flavor() const noexcept { return flavor_; }

    Integer at(std::size_t n, std::size_t k) const { return n < rows_.size() ? poly::coeff(rows_[n], k) : Integer(0); }

    void set(std::size_t n, std::size_t k, Integer value)
    {
        auto& r = rows_.at(n);
        if (r.size() <= k)
            r.resize(k + 1);
        r[k] = std::move(value);
        poly::trim(r);
    }

    const Polynomial& row(std::size_t n) const { return rows_.at(n); }
    void set_row(std::size_t n, Polynomial p)
    {
        poly::trim(p);
        rows_.at(n) = std::move(p);
    }

    /// Highest x-degree with a nonzero coefficient in row n, or -1.
    long degree(std::size_t n) const { return static_cast<long>(rows_.at(n).size()) - 1; }

    bool is_triangular() const
    {
        for (std::size_t n = 0; n < rows_.size(); ++n)
            if (degree(n) > static_cast<long>(n) + 1)
                return false;
        return true;
    }

    friend bool operator==(const BiSeries&, const BiSeries&) = default;

private:
    XFlavor flavor_;
    std::vector<Polynomial> rows_;
};

inline BiSeries mul(const BiSeries& a, const BiSeries& b)
{
    if (a.flavor() != b.flavor())
        throw std::invalid_argument("mul: x-flavor mismatch");
    if (a.order() != b.order())
        throw std::invalid_argument("mul: truncation mismatch");
    BiSeries r(a.order(), a.flavor());
    for (std::size_t n = 0; n <= a.order(); ++n) {
        Polynomial acc;
        for (std::size_t i = 0; i <= n; ++i)
            poly::add_to(acc, poly::mul(a.row(i), b.row(n - i), a.flavor()));
        r.set_row(n, std::move(acc));
    }
    return r;
}

namespace detail {

template <class RowOp>
BiSeries map_rows(const BiSeries& a, RowOp op)
{
    BiSeries r(a.order(), a.flavor());
    for (std::size_t n = 0; n <= a.order(); ++n)
        r.set_row(n, op(a.row(n)));
    return r;
}

} // namespace detail

/// d/dx of an exponential-flavor series: an index shift on the stored t_{n,k}.
inline BiSeries d_dx(const BiSeries& a)
{
    if (a.flavor() != XFlavor::Exponential)
        throw std::invalid_argument("d_dx: requires exponential x-flavor");
    return detail::map_rows(a, poly::shift_down);
}

/// (a(z,x) - a(z,0)) / x of an ordinary-flavor series.
inline BiSeries discrete_d(const BiSeries& a)
{
    if (a.flavor() != XFlavor::Ordinary)
        throw std::invalid_argument("discrete_d: requires ordinary x-flavor");
    return detail::map_rows(a, poly::shift_down);
}

/// a(z, x + 1) for an ordinary-flavor series.
inline BiSeries taylor_shift(const BiSeries& a)
{
    if (a.flavor() != XFlavor::Ordinary)
        throw std::invalid_argument("taylor_shift: requires ordinary x-flavor");
    return detail::map_rows(a, poly::taylor_shift);
}

/// sum_i (1/i!) d^i a / dx^i for an ordinary-flavor series.
inline BiSeries derivative_sum(const BiSeries& a)
{
    if (a.flavor() != XFlavor::Ordinary)
        throw std::invalid_argument("derivative_sum: requires ordinary x-flavor");
    return detail::map_rows(a, poly::derivative_sum);
}

// ---------------------------------------------------------------------------
// Family solutions

enum class SeriesFamily {
    L,   // all linear terms, exponential in x
    LB,  // neutral terms, exponential
    LR,  // normal terms, exponential
    PB,  // planar neutral terms, ordinary
    PR,  // planar normal terms, ordinary
    QB,  // exchange classes of neutral terms, ordinary
    QR   // exchange classes of normal terms, ordinary
};

inline std::string_view to_string(SeriesFamily f)
{
    switch (f) {
    case SeriesFamily::L: return "L";
    case SeriesFamily::LB: return "LB";
    case SeriesFamily::LR: return "LR";
    case SeriesFamily::PB: return "PB";
    case SeriesFamily::PR: return "PR";
    case SeriesFamily::QB: return "QB";
    case SeriesFamily::QR: return "QR";
    }
    return "?";
}

inline constexpr SeriesFamily all_series_families[] = {SeriesFamily::L,  SeriesFamily::LB, SeriesFamily::LR,
                                                       SeriesFamily::PB, SeriesFamily::PR, SeriesFamily::QB,
                                                       SeriesFamily::QR};

inline SeriesFamily series_family_from_string(std::string_view s)
{
    for (auto f : all_series_families)
        if (to_string(f) == s)
            return f;
    throw std::invalid_argument("unknown series family '" + std::string(s) + "'");
}

struct FamilySolution {
    SeriesFamily which;
    BiSeries series;
};

class RouteDisagreement : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require_triangular(const BiSeries& s, std::string_view name)
{
    if (!s.is_triangular())
        throw std::logic_error(std::string(name) + ": x-degree exceeds n + 1");
}

} // namespace detail

/// L = z x + L^2 + dL/dx. Row n is back-substituted from its top x-degree,
/// since the derivative term sits at the same z-order.
inline BiSeries solve_linear(std::size_t order)
{
    BiSeries l(order, XFlavor::Exponential);
    for (std::size_t n = 1; n <= order; ++n) {
        Polynomial rhs = n == 1 ? Polynomial{0, 1} : Polynomial{};
        for (std::size_t i = 1; i < n; ++i)
            poly::add_to(rhs, poly::mul(l.row(i), l.row(n - i), XFlavor::Exponential));
        l.set_row(n, poly::back_substitute(rhs));
    }
    detail::require_triangular(l, "L");
    return l;
}

/// Neutral/normal pair B = x + B R, R = z B + D(R), where D is d/dx under
/// exponential flavor and the discrete derivative under ordinary flavor.
/// The two cases share the index-shift recurrence; only the product differs.
inline std::pair<BiSeries, BiSeries> solve_neutral_normal(std::size_t order, XFlavor flavor)
{
    BiSeries b(order, flavor), r(order, flavor);
    b.set_row(0, {0, 1});
    for (std::size_t n = 1; n <= order; ++n) {
        r.set_row(n, poly::back_substitute(b.row(n - 1)));
        Polynomial acc;
        for (std::size_t j = 1; j <= n; ++j)
            poly::add_to(acc, poly::mul(b.row(n - j), r.row(j), flavor));
        b.set_row(n, std::move(acc));
    }
    detail::require_triangular(b, "neutral");
    detail::require_triangular(r, "normal");
    return {std::move(b), std::move(r)};
}

/// Both quotient routes, kept separate for comparison.
struct QuotientRoutes {
    BiSeries b_split;   // B = x + B R with R = z sum_i (1/i!) d^i B / dx^i
    BiSeries r_split;
    BiSeries b_direct;  // B(z,x) = x + z B(z,x) B(z,x+1)
    BiSeries r_direct;  // z B(z,x+1)
};

inline QuotientRoutes solve_quotient_routes(std::size_t order)
{
    constexpr auto ogf = XFlavor::Ordinary;
    QuotientRoutes q{BiSeries(order, ogf), BiSeries(order, ogf), BiSeries(order, ogf), BiSeries(order, ogf)};

    q.b_split.set_row(0, {0, 1});
    for (std::size_t n = 1; n <= order; ++n) {
        q.r_split.set_row(n, poly::derivative_sum(q.b_split.row(n - 1)));
        Polynomial acc;
        for (std::size_t j = 1; j <= n; ++j)
            poly::add_to(acc, poly::mul(q.b_split.row(n - j), q.r_split.row(j), ogf));
        q.b_split.set_row(n, std::move(acc));
    }

    std::vector<Polynomial> shifted;
    q.b_direct.set_row(0, {0, 1});
    shifted.push_back(poly::taylor_shift(q.b_direct.row(0)));
    for (std::size_t n = 1; n <= order; ++n) {
        Polynomial acc;
        for (std::size_t i = 0; i < n; ++i)
            poly::add_to(acc, poly::mul(q.b_direct.row(i), shifted[n - 1 - i], ogf));
        q.b_direct.set_row(n, std::move(acc));
        shifted.push_back(poly::taylor_shift(q.b_direct.row(n)));
    }
    for (std::size_t n = 1; n <= order; ++n)
        q.r_direct.set_row(n, shifted[n - 1]);
    return q;
}

/// Solves the quotient pair and checks that both routes agree.
/// Throws RouteDisagreement otherwise.
inline std::pair<BiSeries, BiSeries> solve_quotient(std::size_t order)
{
    auto q = solve_quotient_routes(order);
    for (std::size_t n = 0; n <= order; ++n) {
        if (q.b_split.row(n) != q.b_direct.row(n))
            throw RouteDisagreement("quotient neutral series: routes disagree at z^" + std::to_string(n));
        if (q.r_split.row(n) != q.r_direct.row(n))
            throw RouteDisagreement("quotient normal series: routes disagree at z^" + std::to_string(n));
    }
    detail::require_triangular(q.b_direct, "QB");
    detail::require_triangular(q.r_direct, "QR");
    return {std::move(q.b_direct), std::move(q.r_direct)};
}

inline FamilySolution solve(SeriesFamily which, std::size_t order)
{
    switch (which) {
    case SeriesFamily::L: return {which, solve_linear(order)};
    case SeriesFamily::LB: return {which, solve_neutral_normal(order, XFlavor::Exponential).first};
    case SeriesFamily::LR: return {which, solve_neutral_normal(order, XFlavor::Exponential).second};
    case SeriesFamily::PB: return {which, solve_neutral_normal(order, XFlavor::Ordinary).first};
    case SeriesFamily::PR: return {which, solve_neutral_normal(order, XFlavor::Ordinary).second};
    case SeriesFamily::QB: return {which, solve_quotient(order).first};
    case SeriesFamily::QR: return {which, solve_quotient(order).second};
    }
    throw std::invalid_argument("solve: unknown family");
}

/// R(z,0) = z B(z,1), coefficientwise up to the common truncation.
inline bool closed_quotient_matches_neutral(const BiSeries& qb, const BiSeries& qr)
{
    if (qr.at(0, 0) != 0)
        return false;
    for (std::size_t n = 1; n <= std::min(qb.order() + 1, qr.order()); ++n) {
        Integer at_one = 0;
        for (const auto& c : qb.row(n - 1))
            at_one += c;
        if (qr.at(n, 0) != at_one)
            return false;
    }
    return true;
}

/// Coefficient table as a CountTable indexed (n, k) over 0 <= k <= n + 1.
inline CountTable to_count_table(const FamilySolution& s, bool closed_only = false)
{
    CountTable t;
    t.provenance = "series:" + std::string(to_string(s.which));
    t.max_n = s.series.order();
    for (std::size_t n = 0; n <= t.max_n; ++n)
        for (std::size_t k = 0; k <= (closed_only ? 0 : n + 1); ++k)
            t.set(n, k, s.series.at(n, k));
    return t;
}

} // namespace linmaps

#endif // LINMAPS_SERIES_HPP
