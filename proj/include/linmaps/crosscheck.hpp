#ifndef LINMAPS_CROSSCHECK_HPP
#define LINMAPS_CROSSCHECK_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "count_table.hpp"
#include "enumerate.hpp"
#include "exchange.hpp"
#include "maps.hpp"
#include "series.hpp"
#include "term.hpp"

namespace linmaps {

/// Closed-term prefixes, indexed from size n = 1.
struct ReferenceSequences {
    std::vector<Integer> linear_closed{1, 5, 60, 1105, 27120, 828250};
    std::vector<Integer> normal_closed{1, 3, 26, 367, 7142, 176766};
    std::vector<Integer> planar_normal_closed{1, 2, 9, 54, 378, 2916};
    std::vector<Integer> quotient_closed{1, 2, 10, 74, 706, 8162};
};

struct CheckResult {
    std::string name;
    std::string producers;
    std::string range;
    bool passed = true;
    std::optional<std::string> divergence;
};

struct CrossCheckReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }

    std::string to_text() const
    {
        std::ostringstream out;
        for (const auto& n : notes)
            out << "# " << n << '\n';
        for (const auto& c : checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << c.producers << "] " << c.range;
            if (c.divergence)
                out << " -- first divergence: " << *c.divergence;
            out << '\n';
        }
        out << (passed() ? "OVERALL PASS" : "OVERALL FAIL") << '\n';
        return out.str();
    }

    nlohmann::json to_json() const
    {
        nlohmann::json checks_json = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j{{"name", c.name}, {"producers", c.producers}, {"range", c.range}, {"passed", c.passed}};
            if (c.divergence)
                j["divergence"] = *c.divergence;
            checks_json.push_back(std::move(j));
        }
        return {{"passed", passed()}, {"notes", notes}, {"checks", std::move(checks_json)}};
    }
};

/// Compares two sequences position by position; `first_index` labels the
/// first entry in the report.
inline CheckResult compare_sequences(std::string name, std::string producers, const std::vector<Integer>& expected,
                                     const std::vector<Integer>& actual, std::size_t first_index = 1)
{
    CheckResult r{std::move(name), std::move(producers), {}, true, std::nullopt};
    const auto len = std::min(expected.size(), actual.size());
    r.range = "n=" + std::to_string(first_index) + ".." + std::to_string(first_index + len - 1);
    if (expected.size() != actual.size()) {
        r.passed = false;
        r.divergence = "length " + std::to_string(expected.size()) + " vs " + std::to_string(actual.size());
    }
    for (std::size_t i = 0; i < len; ++i)
        if (expected[i] != actual[i]) {
            r.passed = false;
            r.divergence = "n=" + std::to_string(first_index + i) + ": " + expected[i].str() + " vs " + actual[i].str();
            break;
        }
    return r;
}

/// Compares two bivariate tables over 0 <= k <= n + 1 for n in [first_n, max_n].
inline CheckResult compare_tables(std::string name, const CountTable& a, const CountTable& b, std::size_t first_n,
                                  std::size_t max_n)
{
    CheckResult r{std::move(name), a.provenance + " vs " + b.provenance, {}, true, std::nullopt};
    r.range = "n=" + std::to_string(first_n) + ".." + std::to_string(max_n) + ", all k";
    for (std::size_t n = first_n; n <= max_n && r.passed; ++n)
        for (std::size_t k = 0; k <= n + 1; ++k)
            if (a.at(n, k) != b.at(n, k)) {
                r.passed = false;
                r.divergence = "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + "): " + a.at(n, k).str() +
                               " vs " + b.at(n, k).str();
                break;
            }
    return r;
}

struct CrossCheckOptions {
    std::size_t max_n = 3;
    std::size_t enum_cap = 5;
    std::size_t maps_cap = 4;
    std::size_t series_order = 12;
    ReferenceSequences references{};
};

namespace detail {

inline std::vector<Integer> prefix(const std::vector<Integer>& v, std::size_t len)
{
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(len, v.size()))};
}

inline std::vector<Integer> closed_row(const BiSeries& s, std::size_t first, std::size_t last)
{
    std::vector<Integer> out;
    for (std::size_t n = first; n <= last; ++n)
        out.push_back(s.at(n, 0));
    return out;
}

} // namespace detail

/// Runs every producer against the others and against the reference
/// prefixes. Maps with n edges are compared with closed quotient and planar
/// terms of size n + 1; trivalent maps with 3(n - 1) edges with closed linear
/// terms of size n.
inline CrossCheckReport run_crosscheck(const CrossCheckOptions& opt)
{
    CrossCheckReport report;
    const auto enum_n = std::min(opt.max_n, opt.enum_cap);
    const auto maps_n = std::min(opt.max_n, opt.maps_cap);
    const auto order = std::max<std::size_t>({opt.series_order, opt.max_n, 6});
    const auto& ref = opt.references;

    report.notes.push_back("enumeration to n=" + std::to_string(enum_n) + ", map census to " +
                           std::to_string(maps_n) + " edges, series to z^" + std::to_string(order));
    report.notes.push_back("maps with n edges are compared with closed terms of size n+1");

    const auto l = solve_linear(order);
    const auto [lb, lr] = solve_neutral_normal(order, XFlavor::Exponential);
    const auto [pb, pr] = solve_neutral_normal(order, XFlavor::Ordinary);
    const auto routes = solve_quotient_routes(order);

    // (a) enumeration vs series, bivariately.
    const std::pair<Family, FamilySolution> term_pairs[] = {
        {Family::Linear, {SeriesFamily::L, l}},         {Family::Neutral, {SeriesFamily::LB, lb}},
        {Family::Normal, {SeriesFamily::LR, lr}},       {Family::PlanarNeutral, {SeriesFamily::PB, pb}},
        {Family::PlanarNormal, {SeriesFamily::PR, pr}},
    };
    for (const auto& [family, solution] : term_pairs)
        report.checks.push_back(compare_tables("terms:" + std::string(to_string(family)),
                                               count_family(family, enum_n), to_count_table(solution), 0, enum_n));

    // (b) exchange classes vs both quotient routes.
    const CountTable qb_split = to_count_table({SeriesFamily::QB, routes.b_split});
    const CountTable qb_direct = to_count_table({SeriesFamily::QB, routes.b_direct});
    const CountTable qr_split = to_count_table({SeriesFamily::QR, routes.r_split});
    const CountTable qr_direct = to_count_table({SeriesFamily::QR, routes.r_direct});
    {
        auto r = compare_tables("quotient-routes:neutral", qb_split, qb_direct, 0, order);
        r.producers = "series:QB derivative-sum vs series:QB shifted-product";
        report.checks.push_back(std::move(r));
        r = compare_tables("quotient-routes:normal", qr_split, qr_direct, 0, order);
        r.producers = "series:QR derivative-sum vs series:QR shifted-product";
        report.checks.push_back(std::move(r));
    }
    const auto neutral_classes = count_classes(Family::Neutral, enum_n);
    const auto normal_classes = count_classes(Family::Normal, enum_n);
    report.checks.push_back(compare_tables("classes:neutral", neutral_classes.unlabeled, qb_split, 0, enum_n));
    report.checks.push_back(compare_tables("classes:normal", normal_classes.unlabeled, qr_direct, 0, enum_n));
    {
        CheckResult r{"closed-quotient-vs-neutral-at-1", "series:QR(z,0) vs z*series:QB(z,1)", "n=1.." + std::to_string(order), true, {}};
        if (!closed_quotient_matches_neutral(routes.b_direct, routes.r_direct)) {
            r.passed = false;
            r.divergence = "coefficientwise mismatch";
        }
        report.checks.push_back(std::move(r));
    }

    // (c) series quotient vs map census.
    const CensusLimits limits{std::max<std::size_t>(maps_n, 5), 6};
    const auto all_maps_table = maps_n >= 1 ? census_table(maps_n, MapVariant::AllGenera, limits) : CountTable{};
    if (maps_n >= 1) {
        const auto& all_maps = all_maps_table;
        report.checks.push_back(compare_tables("bijection:series-vs-maps", qb_direct, all_maps, 1, maps_n));
        report.checks.push_back(
            compare_tables("bijection:classes-vs-maps", neutral_classes.unlabeled, all_maps, 1,
                           std::min(maps_n, enum_n)));
        for (std::size_t n = 1; n <= maps_n; ++n) {
            auto row = [n](const CountTable& t) {
                std::string s;
                for (std::size_t k = 1; k <= n + 1; ++k)
                    s += " k=" + std::to_string(k) + ":" + t.at(n, k).str();
                return s;
            };
            std::string line = "class-map row n=" + std::to_string(n) + " | series" + row(qb_direct) + " | maps" +
                               row(all_maps);
            if (n <= enum_n)
                line += " | classes" + row(neutral_classes.unlabeled);
            report.notes.push_back(std::move(line));
        }

        std::vector<Integer> planar_totals, all_totals;
        for (std::size_t e = 1; e <= maps_n; ++e) {
            planar_totals.push_back(census(e, MapVariant::PlanarOnly, limits).total());
            all_totals.push_back(all_maps.row_total(e));
        }
        report.checks.push_back(compare_sequences("planar-maps-vs-planar-normal", "maps:planar vs series:PR",
                                                  detail::closed_row(pr, 2, maps_n + 1), planar_totals, 1));
        report.checks.push_back(compare_sequences("maps-vs-quotient-normal", "maps:all vs series:QR",
                                                  detail::closed_row(routes.r_direct, 2, maps_n + 1), all_totals, 1));

        std::vector<Integer> trivalent, linear_closed;
        for (std::size_t size = 2; size <= std::min<std::size_t>(enum_n, 3); ++size) {
            trivalent.push_back(census(3 * (size - 1), MapVariant::Trivalent, limits).total());
            linear_closed.push_back(l.at(size, 0));
        }
        if (!trivalent.empty())
            report.checks.push_back(compare_sequences("trivalent-maps-vs-linear", "maps:trivalent vs series:L",
                                                      linear_closed, trivalent, 2));
    }

    // (d) every producer against the printed prefixes.
    const auto len = ref.linear_closed.size();
    report.checks.push_back(compare_sequences("reference:linear", "reference vs series:L", ref.linear_closed,
                                              detail::closed_row(l, 1, len)));
    report.checks.push_back(compare_sequences("reference:normal", "reference vs series:LR", ref.normal_closed,
                                              detail::closed_row(lr, 1, ref.normal_closed.size())));
    report.checks.push_back(compare_sequences("reference:planar-normal", "reference vs series:PR",
                                              ref.planar_normal_closed,
                                              detail::closed_row(pr, 1, ref.planar_normal_closed.size())));
    report.checks.push_back(compare_sequences("reference:quotient", "reference vs series:QR", ref.quotient_closed,
                                              detail::closed_row(routes.r_split, 1, ref.quotient_closed.size())));
    if (enum_n >= 1) {
        report.checks.push_back(compare_sequences("reference:linear-enum", "reference vs enum:linear",
                                                  detail::prefix(ref.linear_closed, enum_n),
                                                  count_family(Family::Linear, enum_n, true).closed()));
        report.checks.push_back(compare_sequences("reference:normal-enum", "reference vs enum:normal",
                                                  detail::prefix(ref.normal_closed, enum_n),
                                                  count_family(Family::Normal, enum_n, true).closed()));
        report.checks.push_back(compare_sequences("reference:planar-normal-enum", "reference vs enum:planar-normal",
                                                  detail::prefix(ref.planar_normal_closed, enum_n),
                                                  count_family(Family::PlanarNormal, enum_n, true).closed()));
        report.checks.push_back(compare_sequences("reference:quotient-enum", "reference vs classes:normal",
                                                  detail::prefix(ref.quotient_closed, enum_n),
                                                  normal_classes.unlabeled.closed()));
    }
    if (maps_n >= 1) {
        std::vector<Integer> totals;
        for (std::size_t e = 1; e <= maps_n; ++e)
            totals.push_back(all_maps_table.row_total(e));
        std::vector<Integer> expected;
        for (std::size_t e = 1; e <= maps_n && e < ref.quotient_closed.size(); ++e)
            expected.push_back(ref.quotient_closed[e]);
        totals.resize(expected.size());
        report.checks.push_back(compare_sequences("reference:quotient-maps", "reference vs maps:all (shifted)",
                                                  expected, totals, 1));
    }

    // Term-level sanity: round trips, classification and exchange invariance.
    {
        CheckResult r{"term-core", "parse/render/classify over enum:normal", "n=1.." + std::to_string(std::min<std::size_t>(enum_n, 3)), true, {}};
        for (std::size_t n = 1; n <= std::min<std::size_t>(enum_n, 3) && r.passed; ++n)
            for_each_term(Family::Normal, n, 0, [&](const Term& t) {
                if (!r.passed)
                    return;
                const auto c = classify(t);
                const bool ok = check_linear(t, 0) && parse(render(t)) == t && c.is_normal() &&
                                c.normal_size() == n && !has_redex(t) && canonicalize(canonicalize(t)) == canonicalize(t);
                bool exchanges_ok = true;
                for (const auto& e : local_exchanges(t))
                    exchanges_ok = exchanges_ok && is_isomorphic(e, t);
                if (!ok || !exchanges_ok) {
                    r.passed = false;
                    r.divergence = t.to_ascii();
                }
            });
        report.checks.push_back(std::move(r));
    }
    return report;
}

} // namespace linmaps

#endif // LINMAPS_CROSSCHECK_HPP
