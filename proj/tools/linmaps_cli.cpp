// Command-line front end: term and class counts, listings, series tables,
// map censuses and the cross-check report.

#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <linmaps/count_table.hpp>
#include <linmaps/crosscheck.hpp>
#include <linmaps/enumerate.hpp>
#include <linmaps/exchange.hpp>
#include <linmaps/maps.hpp>
#include <linmaps/series.hpp>
#include <linmaps/term.hpp>

namespace {

using namespace linmaps;

constexpr std::size_t enum_cap = 5;
constexpr std::size_t maps_cap = 4;
constexpr std::size_t list_cap = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> family_names{"linear",        "neutral",         "normal",        "planar-neutral",
                                            "planar-normal", "classes-neutral", "classes-normal"};

bool is_class_family(const std::string& f) { return f.rfind("classes-", 0) == 0; }

Family term_family(const std::string& f)
{
    return family_from_string(is_class_family(f) ? f.substr(8) : f);
}

SeriesFamily series_for(const std::string& f)
{
    if (f == "linear") return SeriesFamily::L;
    if (f == "neutral") return SeriesFamily::LB;
    if (f == "normal") return SeriesFamily::LR;
    if (f == "planar-neutral") return SeriesFamily::PB;
    if (f == "planar-normal") return SeriesFamily::PR;
    if (f == "classes-neutral") return SeriesFamily::QB;
    return SeriesFamily::QR;
}

void check_cap(std::size_t n, std::size_t cap, bool override_cap, const std::string& what)
{
    if (n > cap && !override_cap)
        throw ResourceCapError(what + " above n=" + std::to_string(cap) + " needs --cap-override");
}

// Map-census counterparts of term tables; row n of the result is the term size.
CountTable maps_producer(const std::string& family, std::size_t max_n, bool closed, bool override_cap)
{
    CensusLimits limits;
    if (override_cap)
        limits = {max_n + 1, 3 * max_n};
    CountTable t;
    t.max_n = max_n;
    if (family == "classes-neutral" && !closed) {
        check_cap(max_n, maps_cap, override_cap, "map census");
        t = census_table(max_n, MapVariant::AllGenera, limits);
        t.set(0, 0, 0);
        t.set(0, 1, 1);  // single-vertex map with no edges
        return t;
    }
    if (!closed)
        throw UsageError("producer 'maps' supports bivariate tables only for classes-neutral");
    if (family == "classes-normal" || family == "planar-normal") {
        const auto variant = family == "classes-normal" ? MapVariant::AllGenera : MapVariant::PlanarOnly;
        t.provenance = "maps:" + std::string(to_string(variant)) + " (edges = n-1)";
        if (max_n >= 1)
            check_cap(max_n - 1, maps_cap, override_cap, "map census");
        for (std::size_t n = 1; n <= max_n; ++n)
            t.set(n, 0, n == 1 ? Integer(1) : census(n - 1, variant, limits).total());
        return t;
    }
    if (family == "linear") {
        t.provenance = "maps:trivalent (edges = 3(n-1))";
        if (max_n > 3 && !override_cap)
            throw ResourceCapError("trivalent census above n=3 needs --cap-override");
        for (std::size_t n = 1; n <= max_n; ++n)
            t.set(n, 0, n == 1 ? Integer(1) : census(3 * (n - 1), MapVariant::Trivalent, limits).total());
        return t;
    }
    throw UsageError("producer 'maps' does not support family '" + family + "'");
}

void emit_table(const CountTable& t, bool closed, bool json)
{
    if (json)
        std::cout << to_json(t, closed).dump(2) << '\n';
    else
        std::cout << to_csv(t, closed);
}

std::vector<std::string> context_names(std::size_t k)
{
    static const std::string letters = "abcdefgh";
    std::vector<std::string> names;
    for (std::size_t j = 0; j < k; ++j)
        names.push_back(j < letters.size() ? std::string(1, letters[j]) : "a" + std::to_string(j));
    return names;
}

RenderOptions listing_style()
{
    RenderOptions opt;
    opt.binder_alphabet = "xyzwuvstpqrmnijklo";
    return opt;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Counts linear lambda terms, their exchange classes, and rooted maps"};
    app.require_subcommand(1);

    std::string family = "normal";
    std::string producer = "enum";
    std::string variant = "all";
    std::size_t max_n = 4, n = 1, k = 0;
    bool closed = false, json = false, cap_override = false, labeled = false, ascii = false, list_maps = false;

    auto* count = app.add_subcommand("count", "Census table of a term family");
    count->add_option("--family", family)->check(CLI::IsMember(family_names));
    count->add_option("--max-n", max_n);
    count->add_option("--producer", producer)->check(CLI::IsMember({"enum", "series", "maps"}));
    count->add_flag("--closed", closed, "Only closed terms (k = 0), from n = 1");
    count->add_flag("--labeled", labeled, "Class counts with labeled free variables");
    count->add_flag("--json", json);
    count->add_flag("--cap-override", cap_override);

    auto* list = app.add_subcommand("list", "List terms or exchange classes of one size");
    list->add_option("--family", family)->check(CLI::IsMember(family_names));
    list->add_option("--n", n)->required();
    list->add_option("--k", k);
    list->add_flag("--closed", closed);
    list->add_flag("--ascii", ascii, "Canonical prefix form instead of named syntax");
    list->add_flag("--json", json);
    list->add_flag("--cap-override", cap_override);

    auto* check = app.add_subcommand("crosscheck", "Compare all producers and the reference prefixes");
    std::size_t check_max_n = 3;
    check->add_option("--max-n", check_max_n);
    check->add_flag("--json", json);
    check->add_flag("--cap-override", cap_override);

    std::string series_family = "all";
    auto* table = app.add_subcommand("series-table", "Coefficients of the generating functions");
    table->add_option("--family", series_family)
        ->check(CLI::IsMember({"all", "L", "LB", "LR", "PB", "PR", "QB", "QR"}));
    table->add_option("--max-n", max_n);
    table->add_flag("--closed", closed, "Print the closed diagonal c[n][0] as a sequence line");
    table->add_flag("--json", json);

    auto* maps = app.add_subcommand("maps-census", "Brute-force rooted map census");
    maps->add_option("--max-n", max_n, "Largest edge count");
    maps->add_option("--variant", variant)->check(CLI::IsMember({"all", "planar", "trivalent"}));
    maps->add_flag("--list", list_maps, "Print every map in cycle notation");
    maps->add_flag("--json", json);
    maps->add_flag("--cap-override", cap_override);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) {
            const bool classes = is_class_family(family);
            CountTable t;
            if (producer == "enum") {
                check_cap(max_n, enum_cap, cap_override, "enumeration");
                if (classes) {
                    auto c = count_classes(term_family(family), max_n, closed);
                    t = labeled ? c.labeled : c.unlabeled;
                } else {
                    t = count_family(term_family(family), max_n, closed);
                }
            } else if (producer == "series") {
                if (labeled)
                    throw UsageError("--labeled applies to the enum producer only");
                t = to_count_table(solve(series_for(family), max_n), closed);
            } else {
                t = maps_producer(family, max_n, closed, cap_override);
            }
            emit_table(t, closed, json);
            return 0;
        }

        if (*list) {
            check_cap(n, list_cap, cap_override, "listing");
            if (closed)
                k = 0;
            const auto names = context_names(k);
            const auto style = listing_style();
            auto show = [&](const Term& t) { return ascii ? t.to_ascii() : render(t, names, style); };
            if (is_class_family(family)) {
                const auto classes = exchange_classes(term_family(family), n, k);
                if (json) {
                    nlohmann::json out = nlohmann::json::array();
                    for (const auto& c : classes) {
                        nlohmann::json group = nlohmann::json::array();
                        for (const auto& m : c.members)
                            group.push_back(show(m));
                        out.push_back(std::move(group));
                    }
                    std::cout << out.dump(2) << '\n';
                } else {
                    for (std::size_t i = 0; i < classes.size(); ++i) {
                        std::cout << "class " << i + 1 << " (" << classes[i].members.size() << ")\n";
                        for (const auto& m : classes[i].members)
                            std::cout << "  " << show(m) << '\n';
                    }
                }
            } else {
                const auto terms = enum_family(term_family(family), n, k);
                if (json) {
                    nlohmann::json out = nlohmann::json::array();
                    for (const auto& t : terms)
                        out.push_back(show(t));
                    std::cout << out.dump(2) << '\n';
                } else {
                    for (const auto& t : terms)
                        std::cout << show(t) << '\n';
                }
            }
            return 0;
        }

        if (*check) {
            CrossCheckOptions opt;
            opt.max_n = check_max_n;
            if (!cap_override && check_max_n > enum_cap)
                throw ResourceCapError("crosscheck above n=" + std::to_string(enum_cap) + " needs --cap-override");
            if (cap_override) {
                opt.enum_cap = check_max_n;
                opt.maps_cap = check_max_n;
            }
            const auto report = run_crosscheck(opt);
            if (json)
                std::cout << report.to_json().dump(2) << '\n';
            else
                std::cout << report.to_text();
            return report.passed() ? 0 : 1;
        }

        if (*table) {
            std::vector<SeriesFamily> which;
            if (series_family == "all")
                which.assign(std::begin(all_series_families), std::end(all_series_families));
            else
                which.push_back(series_family_from_string(series_family));
            nlohmann::json out = nlohmann::json::object();
            if (!closed && !json)
                std::cout << "family,n,k,coeff\n";
            for (auto f : which) {
                const auto s = solve(f, max_n);
                const auto t = to_count_table(s, closed);
                if (json) {
                    out[std::string(to_string(f))] = to_json(t, closed);
                } else if (closed) {
                    std::cout << to_string(f) << ':';
                    for (std::size_t i = 1; i <= max_n; ++i)
                        std::cout << (i == 1 ? " " : ", ") << s.series.at(i, 0);
                    std::cout << '\n';
                } else {
                    for (const auto& [key, value] : t.entries)
                        std::cout << to_string(f) << ',' << key.first << ',' << key.second << ',' << value << '\n';
                }
            }
            if (json)
                std::cout << out.dump(2) << '\n';
            return 0;
        }

        if (*maps) {
            const auto v = map_variant_from_string(variant);
            CensusLimits limits;
            if (cap_override)
                limits = {max_n, max_n};
            const auto cap = v == MapVariant::Trivalent ? limits.max_edges_trivalent : limits.max_edges_general;
            if (max_n > cap)
                throw ResourceCapError("map census above " + std::to_string(cap) + " edges needs --cap-override");
            nlohmann::json out = nlohmann::json::array();
            if (!json && !list_maps)
                std::cout << "edges,vertices,genus,count\n";
            for (std::size_t e = 1; e <= max_n; ++e) {
                if (v == MapVariant::Trivalent && e % 3 != 0)
                    continue;
                const auto c = census(e, v, limits);
                for (const auto& [key, count] : c.by_vertices_genus) {
                    if (json)
                        out.push_back({{"edges", e}, {"vertices", key.first}, {"genus", key.second},
                                       {"count", integer_to_json(count)}});
                    else if (!list_maps)
                        std::cout << e << ',' << key.first << ',' << key.second << ',' << count << '\n';
                }
                if (list_maps)
                    for (const auto& code : c.codes)
                        std::cout << to_cycle_text(from_code(code)) << '\n';
            }
            if (json)
                std::cout << out.dump(2) << '\n';
            return 0;
        }
    } catch (const ResourceCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
