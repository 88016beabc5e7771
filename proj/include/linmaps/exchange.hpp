#ifndef LINMAPS_EXCHANGE_HPP
#define LINMAPS_EXCHANGE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "count_table.hpp"
#include "enumerate.hpp"
#include "term.hpp"

namespace linmaps {

/// All terms reachable by swapping one pair of adjacent abstractions
/// `λx.λy.u` into `λy.λx.u`, one result per adjacent pair, in prefix order.
inline std::vector<Term> local_exchanges(const Term& t)
{
    const auto nodes = t.nodes();
    const auto b = binding_of(t);
    std::vector<Term> out;
    for (std::size_t p = 0; p + 1 < nodes.size(); ++p) {
        if (nodes[p].kind != NodeKind::Lam || nodes[p + 1].kind != NodeKind::Lam)
            continue;
        std::vector<Node> swapped(nodes.begin(), nodes.end());
        for (std::size_t q = p + 2; q < nodes.size(); ++q) {
            if (nodes[q].kind != NodeKind::Bound)
                continue;
            if (b.binder[q] == p)
                --swapped[q].index;
            else if (b.binder[q] == p + 1)
                ++swapped[q].index;
        }
        out.emplace_back(std::move(swapped));
    }
    return out;
}

/// Distinguished representative of an exchange class. Within every maximal
/// run of abstractions, binders are reordered so that their occurrences
/// appear in left-to-right prefix order of the run's body.
inline Term canonicalize(const Term& t)
{
    const auto nodes = t.nodes();
    const auto b = binding_of(t);

    std::vector<std::size_t> occurrence(nodes.size(), Binding::npos);
    for (std::size_t q = 0; q < nodes.size(); ++q)
        if (nodes[q].kind == NodeKind::Bound && b.binder[q] != Binding::npos) {
            if (occurrence[b.binder[q]] != Binding::npos)
                throw std::invalid_argument("canonicalize: binder used more than once");
            occurrence[b.binder[q]] = q;
        }

    // New depth of each binder once its block is sorted.
    std::vector<std::uint32_t> new_depth(nodes.size(), 0);
    for (std::size_t p = 0; p < nodes.size(); ++p) {
        if (nodes[p].kind != NodeKind::Lam || (p > 0 && nodes[p - 1].kind == NodeKind::Lam))
            continue;
        std::size_t len = 0;
        while (p + len < nodes.size() && nodes[p + len].kind == NodeKind::Lam)
            ++len;
        std::vector<std::size_t> order(len);
        std::iota(order.begin(), order.end(), p);
        for (auto lam : order)
            if (occurrence[lam] == Binding::npos)
                throw std::invalid_argument("canonicalize: unused binder");
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return occurrence[x] < occurrence[y]; });
        for (std::size_t r = 0; r < len; ++r)
            new_depth[order[r]] = b.depth[p] + static_cast<std::uint32_t>(r);
    }

    std::vector<Node> out(nodes.begin(), nodes.end());
    for (std::size_t q = 0; q < nodes.size(); ++q)
        if (nodes[q].kind == NodeKind::Bound && b.binder[q] != Binding::npos)
            out[q].index = b.depth[q] - 1 - new_depth[b.binder[q]];
    return Term(std::move(out));
}

inline bool is_isomorphic(const Term& a, const Term& b) { return canonicalize(a) == canonicalize(b); }

/// One exchange class: the canonical representative and the members found,
/// in enumeration order.
struct ExchangeClass {
    Term canonical;
    std::vector<Term> members;
};

/// Groups enum_family(f, n, k) into exchange classes, ordered by first
/// appearance; within a class the canonical representative is listed first.
inline std::vector<ExchangeClass> exchange_classes(Family f, std::size_t n, std::size_t k)
{
    std::vector<ExchangeClass> classes;
    std::unordered_map<Term, std::size_t, TermHash> index;
    for_each_term(f, n, k, [&](Term t) {
        auto c = canonicalize(t);
        auto [it, fresh] = index.try_emplace(c, classes.size());
        if (fresh)
            classes.push_back({std::move(c), {}});
        classes[it->second].members.push_back(std::move(t));
    });
    for (auto& cls : classes)
        std::stable_partition(cls.members.begin(), cls.members.end(),
                              [&](const Term& m) { return m == cls.canonical; });
    return classes;
}

/// Number of exchange classes among the labeled terms at (n, k).
inline std::uint64_t count_labeled_classes(Family f, std::size_t n, std::size_t k)
{
    std::unordered_set<Term, TermHash> seen;
    for_each_term(f, n, k, [&](const Term& t) { seen.insert(canonicalize(t)); });
    return seen.size();
}

struct ClassCensus {
    CountTable labeled;
    CountTable unlabeled;  // labeled / k!
};

/// Exchange-class census for the neutral or normal family. The unlabeled
/// table divides by k!, since relabeling free variables acts freely on classes.
inline ClassCensus count_classes(Family f, std::size_t max_n, bool closed_only = false)
{
    if (f != Family::Neutral && f != Family::Normal)
        throw std::invalid_argument("count_classes: family must be neutral or normal");
    ClassCensus census;
    census.labeled.provenance = "classes-labeled:" + std::string(to_string(f));
    census.unlabeled.provenance = "classes:" + std::string(to_string(f));
    census.labeled.max_n = census.unlabeled.max_n = max_n;
    for (std::size_t n = 0; n <= max_n; ++n)
        for (std::size_t k = 0; k <= (closed_only ? 0 : n + 1); ++k) {
            const Integer labeled = count_labeled_classes(f, n, k);
            const Integer perms = factorial(k);
            if (labeled % perms != 0)
                throw std::logic_error("class count at (" + std::to_string(n) + ", " + std::to_string(k) +
                                       ") is not divisible by k!");
            census.labeled.set(n, k, labeled);
            census.unlabeled.set(n, k, labeled / perms);
        }
    return census;
}

} // namespace linmaps

#endif // LINMAPS_EXCHANGE_HPP
