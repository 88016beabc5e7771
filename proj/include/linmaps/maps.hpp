#ifndef LINMAPS_MAPS_HPP
#define LINMAPS_MAPS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "count_table.hpp"

namespace linmaps {

using Dart = std::uint32_t;
using Permutation = std::vector<Dart>;

inline bool is_permutation(const Permutation& p)
{
    std::vector<bool> hit(p.size(), false);
    for (auto d : p) {
        if (d >= p.size() || hit[d])
            return false;
        hit[d] = true;
    }
    return true;
}

inline Permutation inverse(const Permutation& p)
{
    Permutation inv(p.size());
    for (Dart d = 0; d < p.size(); ++d)
        inv[p[d]] = d;
    return inv;
}

/// Left-to-right composition: (p ; q)(d) = q(p(d)).
inline Permutation then(const Permutation& p, const Permutation& q)
{
    Permutation r(p.size());
    for (Dart d = 0; d < p.size(); ++d)
        r[d] = q[p[d]];
    return r;
}

inline std::size_t cycle_count(const Permutation& p)
{
    std::vector<bool> seen(p.size(), false);
    std::size_t cycles = 0;
    for (Dart d = 0; d < p.size(); ++d) {
        if (seen[d])
            continue;
        ++cycles;
        for (Dart e = d; !seen[e]; e = p[e])
            seen[e] = true;
    }
    return cycles;
}

inline std::string cycle_notation(const Permutation& p)
{
    std::vector<bool> seen(p.size(), false);
    std::string out;
    for (Dart d = 0; d < p.size(); ++d) {
        if (seen[d])
            continue;
        out += '(';
        for (Dart e = d; !seen[e]; e = p[e]) {
            seen[e] = true;
            if (e != d)
                out += ' ';
            out += std::to_string(e);
        }
        out += ')';
    }
    return out;
}

/// A rooted map: sigma rotates darts around vertices, alpha is the
/// fixed-point-free edge involution, and `root` is the distinguished dart.
struct RootedMap {
    Permutation sigma;
    Permutation alpha;
    Dart root = 0;

    std::size_t darts() const noexcept { return sigma.size(); }
    std::size_t edges() const noexcept { return sigma.size() / 2; }
    std::size_t vertices() const { return cycle_count(sigma); }

    friend bool operator==(const RootedMap&, const RootedMap&) = default;
};

/// The group generated by sigma and alpha acts transitively on the darts.
inline bool is_transitive(const Permutation& sigma, const Permutation& alpha)
{
    if (sigma.empty())
        return true;
    std::vector<bool> seen(sigma.size(), false);
    std::vector<Dart> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Dart d = stack.back();
        stack.pop_back();
        for (Dart e : {sigma[d], alpha[d]})
            if (!seen[e]) {
                seen[e] = true;
                ++reached;
                stack.push_back(e);
            }
    }
    return reached == sigma.size();
}

/// Throws std::invalid_argument unless `m` is a valid rooted map.
inline void validate(const RootedMap& m)
{
    const auto n = m.sigma.size();
    if (n == 0 || n % 2 != 0 || m.alpha.size() != n)
        throw std::invalid_argument("rooted map needs a positive even number of darts");
    if (!is_permutation(m.sigma) || !is_permutation(m.alpha))
        throw std::invalid_argument("sigma and alpha must be permutations");
    for (Dart d = 0; d < n; ++d)
        if (m.alpha[d] == d || m.alpha[m.alpha[d]] != d)
            throw std::invalid_argument("alpha must be a fixed-point-free involution");
    if (m.root >= n)
        throw std::invalid_argument("root dart out of range");
    if (!is_transitive(m.sigma, m.alpha))
        throw std::invalid_argument("sigma and alpha must act transitively");
}

/// Faces permutation: alpha^-1 applied first, then sigma^-1.
inline Permutation faces(const RootedMap& m) { return then(inverse(m.alpha), inverse(m.sigma)); }

inline long euler_characteristic(const RootedMap& m)
{
    return static_cast<long>(cycle_count(m.sigma)) - static_cast<long>(cycle_count(m.alpha)) +
           static_cast<long>(cycle_count(faces(m)));
}

inline std::size_t genus(const RootedMap& m)
{
    const long chi = euler_characteristic(m);
    if (chi > 2 || (2 - chi) % 2 != 0)
        throw std::logic_error("invalid Euler characteristic " + std::to_string(chi));
    return static_cast<std::size_t>((2 - chi) / 2);
}

/// m relabeled along the bijection `pi`: sigma' = pi sigma pi^-1, and
/// likewise for alpha and the root.
inline RootedMap conjugate(const RootedMap& m, const Permutation& pi)
{
    RootedMap r;
    r.sigma.resize(m.darts());
    r.alpha.resize(m.darts());
    for (Dart d = 0; d < m.darts(); ++d) {
        r.sigma[pi[d]] = pi[m.sigma[d]];
        r.alpha[pi[d]] = pi[m.alpha[d]];
    }
    r.root = pi[m.root];
    return r;
}

namespace detail {

// Dart relabeling by breadth-first traversal from the root, visiting each
// dart's sigma-successor before its alpha-partner.
inline Permutation traversal_labels(const Permutation& sigma, const Permutation& alpha, Dart root)
{
    constexpr Dart unseen = static_cast<Dart>(-1);
    Permutation label(sigma.size(), unseen);
    std::vector<Dart> order;
    order.reserve(sigma.size());
    label[root] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Dart d = order[i];
        for (Dart e : {sigma[d], alpha[d]})
            if (label[e] == unseen) {
                label[e] = static_cast<Dart>(order.size());
                order.push_back(e);
            }
    }
    return label;
}

inline std::string code_of(const Permutation& sigma, const Permutation& alpha, Dart root)
{
    const auto label = traversal_labels(sigma, alpha, root);
    const auto n = sigma.size();
    std::string code(2 * n + 1, '\0');
    code[0] = static_cast<char>(n);
    for (Dart d = 0; d < n; ++d) {
        code[1 + label[d]] = static_cast<char>(label[sigma[d]]);
        code[1 + n + label[d]] = static_cast<char>(label[alpha[d]]);
    }
    return code;
}

} // namespace detail

/// Byte string identifying the map up to root-preserving conjugation:
/// the dart count, then sigma and alpha under the traversal relabeling
/// (which sends the root to 0). Transitive maps only.
inline std::string canonical_code(const RootedMap& m)
{
    if (m.darts() > 255)
        throw std::length_error("canonical_code: too many darts");
    return detail::code_of(m.sigma, m.alpha, m.root);
}

/// Inverse of canonical_code: the relabeled representative.
inline RootedMap from_code(std::string_view code)
{
    const auto n = static_cast<std::size_t>(static_cast<unsigned char>(code.at(0)));
    if (code.size() != 2 * n + 1)
        throw std::invalid_argument("from_code: bad code length");
    RootedMap m;
    m.sigma.resize(n);
    m.alpha.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        m.sigma[d] = static_cast<unsigned char>(code[1 + d]);
        m.alpha[d] = static_cast<unsigned char>(code[1 + n + d]);
    }
    return m;
}

inline std::string to_cycle_text(const RootedMap& m)
{
    return "sigma=" + cycle_notation(m.sigma) + " alpha=" + cycle_notation(m.alpha) +
           " root=" + std::to_string(m.root);
}

// ---------------------------------------------------------------------------
// Census

enum class MapVariant { AllGenera, PlanarOnly, Trivalent };

inline std::string_view to_string(MapVariant v)
{
    switch (v) {
    case MapVariant::AllGenera: return "all";
    case MapVariant::PlanarOnly: return "planar";
    case MapVariant::Trivalent: return "trivalent";
    }
    return "?";
}

inline MapVariant map_variant_from_string(std::string_view s)
{
    for (auto v : {MapVariant::AllGenera, MapVariant::PlanarOnly, MapVariant::Trivalent})
        if (to_string(v) == s)
            return v;
    throw std::invalid_argument("unknown map variant '" + std::string(s) + "'");
}

class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CensusLimits {
    std::size_t max_edges_general = 5;    // 10! sigma candidates
    std::size_t max_edges_trivalent = 6;  // 12 darts in 3-cycles
};

/// Rooted maps with a fixed number of edges, tallied by (vertices, genus).
struct MapCensus {
    std::size_t edges = 0;
    MapVariant variant = MapVariant::AllGenera;
    std::map<std::pair<std::size_t, std::size_t>, Integer> by_vertices_genus;
    std::vector<std::string> codes;  // sorted canonical codes, one per map

    Integer total() const
    {
        Integer t = 0;
        for (const auto& [key, c] : by_vertices_genus)
            t += c;
        return t;
    }

    Integer vertices(std::size_t k) const
    {
        Integer t = 0;
        for (const auto& [key, c] : by_vertices_genus)
            if (key.first == k)
                t += c;
        return t;
    }
};

namespace detail {

// Every permutation of 0..n-1 whose cycles all have length 3.
inline void for_each_three_cycle_permutation(std::size_t n, const std::function<void(const Permutation&)>& visit)
{
    constexpr Dart unset = static_cast<Dart>(-1);
    Permutation p(n, unset);
    std::function<void()> extend = [&] {
        Dart first = 0;
        while (first < n && p[first] != unset)
            ++first;
        if (first == n) {
            visit(p);
            return;
        }
        for (Dart b = 0; b < n; ++b) {
            if (b == first || p[b] != unset)
                continue;
            for (Dart c = 0; c < n; ++c) {
                if (c == first || c == b || p[c] != unset)
                    continue;
                p[first] = b;
                p[b] = c;
                p[c] = first;
                extend();
                p[first] = p[b] = p[c] = unset;
            }
        }
    };
    if (n % 3 == 0)
        extend();
}

} // namespace detail

/// Exhaustive census of rooted maps with `n_edges` edges. The involution is
/// fixed to (0 1)(2 3)... and the root to dart 0; every sigma is scanned,
/// non-transitive pairs are dropped, and duplicates are removed by
/// canonical code. Trivalent scans only sigma made of 3-cycles.
inline MapCensus census(std::size_t n_edges, MapVariant variant, const CensusLimits& limits = {})
{
    const auto cap = variant == MapVariant::Trivalent ? limits.max_edges_trivalent : limits.max_edges_general;
    if (n_edges > cap)
        throw ResourceCapError("map census with " + std::to_string(n_edges) + " edges exceeds the cap of " +
                               std::to_string(cap) + " for variant " + std::string(to_string(variant)));

    MapCensus result;
    result.edges = n_edges;
    result.variant = variant;
    if (n_edges == 0)
        return result;

    const std::size_t n = 2 * n_edges;
    Permutation alpha(n);
    for (Dart d = 0; d < n; ++d)
        alpha[d] = d ^ 1u;

    std::unordered_set<std::string> seen;
    auto consider = [&](const Permutation& sigma) {
        if (!is_transitive(sigma, alpha))
            return;
        auto code = detail::code_of(sigma, alpha, 0);
        if (!seen.insert(code).second)
            return;
        const RootedMap m{sigma, alpha, 0};
        const auto g = genus(m);
        if (variant == MapVariant::PlanarOnly && g != 0)
            return;
        result.by_vertices_genus[{m.vertices(), g}] += 1;
        result.codes.push_back(std::move(code));
    };

    if (variant == MapVariant::Trivalent) {
        detail::for_each_three_cycle_permutation(n, consider);
    } else {
        Permutation sigma(n);
        std::iota(sigma.begin(), sigma.end(), Dart{0});
        do {
            consider(sigma);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    std::sort(result.codes.begin(), result.codes.end());
    return result;
}

/// (edges, vertices) table for every edge count 1..max_edges.
inline CountTable census_table(std::size_t max_edges, MapVariant variant, const CensusLimits& limits = {})
{
    CountTable t;
    t.provenance = "maps:" + std::string(to_string(variant));
    t.max_n = max_edges;
    const auto cap = variant == MapVariant::Trivalent ? limits.max_edges_trivalent : limits.max_edges_general;
    if (max_edges > cap)
        throw ResourceCapError("map census with " + std::to_string(max_edges) + " edges exceeds the cap of " +
                               std::to_string(cap) + " for variant " + std::string(to_string(variant)));
    for (std::size_t e = 1; e <= max_edges; ++e) {
        const auto c = census(e, variant, limits);
        for (std::size_t k = 0; k <= e + 1; ++k)
            t.set(e, k, c.vertices(k));
    }
    return t;
}

} // namespace linmaps

#endif // LINMAPS_MAPS_HPP
