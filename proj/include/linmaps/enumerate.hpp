#ifndef LINMAPS_ENUMERATE_HPP
#define LINMAPS_ENUMERATE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "count_table.hpp"
#include "term.hpp"

namespace linmaps {

enum class Family { Linear, Neutral, Normal, PlanarNeutral, PlanarNormal };

inline std::string_view to_string(Family f)
{
    switch (f) {
    case Family::Linear: return "linear";
    case Family::Neutral: return "neutral";
    case Family::Normal: return "normal";
    case Family::PlanarNeutral: return "planar-neutral";
    case Family::PlanarNormal: return "planar-normal";
    }
    return "?";
}

inline Family family_from_string(std::string_view s)
{
    for (auto f : {Family::Linear, Family::Neutral, Family::Normal, Family::PlanarNeutral, Family::PlanarNormal})
        if (to_string(f) == s)
            return f;
    throw std::invalid_argument("unknown term family '" + std::string(s) + "'");
}

inline bool is_planar(Family f) { return f == Family::PlanarNeutral || f == Family::PlanarNormal; }
inline bool is_neutral_family(Family f) { return f == Family::Neutral || f == Family::PlanarNeutral; }

namespace detail {

// A variable available to the term under construction: either a context
// position, or the binder introduced at a given depth.
struct Slot {
    bool is_free;
    std::uint32_t id;
};

using Context = std::vector<Slot>;

/// Grammar-driven generator. Each production writes its nodes into a shared
/// prefix buffer and calls its continuation once per completed subterm, so
/// a whole stream is produced without materializing intermediate lists.
///
/// Planar families keep the context ordered: abstraction binds the newest
/// (last) variable and application gives the function a prefix of the
/// context and the argument the remaining suffix. Other families split the
/// context over all subsets.
class TermGenerator {
public:
    using Yield = std::function<void(std::span<const Node>)>;

    explicit TermGenerator(Family family) : family_(family) {}

    void run(std::size_t n, std::size_t k, const Yield& yield)
    {
        Context ctx;
        for (std::uint32_t j = 0; j < k; ++j)
            ctx.push_back({true, j});
        buf_.clear();
        const Cont done = [&] { yield(buf_); };
        switch (family_) {
        case Family::Linear: linear(n, ctx, 0, done); break;
        case Family::Neutral:
        case Family::PlanarNeutral: neutral(n, ctx, 0, done); break;
        case Family::Normal:
        case Family::PlanarNormal: normal(n, ctx, 0, done); break;
        }
    }

private:
    using Cont = std::function<void()>;

    void variable(const Slot& s, std::uint32_t depth, const Cont& k)
    {
        buf_.push_back(s.is_free ? Node{NodeKind::Free, s.id} : Node{NodeKind::Bound, depth - 1 - s.id});
        k();
        buf_.pop_back();
    }

    // Calls `body(function_ctx, argument_ctx)` for every admissible split.
    template <class Body>
    void splits(const Context& ctx, Body&& body)
    {
        if (is_planar(family_)) {
            for (std::size_t i = 0; i <= ctx.size(); ++i)
                body(Context(ctx.begin(), ctx.begin() + static_cast<std::ptrdiff_t>(i)),
                     Context(ctx.begin() + static_cast<std::ptrdiff_t>(i), ctx.end()));
            return;
        }
        // Mask bit i set: ctx[i] goes to the function.
        const std::size_t masks = std::size_t{1} << ctx.size();
        for (std::size_t m = 0; m < masks; ++m) {
            Context f, a;
            for (std::size_t i = 0; i < ctx.size(); ++i)
                ((m >> i) & 1u ? f : a).push_back(ctx[i]);
            body(f, a);
        }
    }

    void linear(std::size_t n, const Context& ctx, std::uint32_t depth, const Cont& k)
    {
        if (ctx.size() > n)
            return;
        if (n == 1 && ctx.size() == 1)
            variable(ctx[0], depth, k);
        for (std::size_t n1 = 1; n1 < n; ++n1) {
            const std::size_t n2 = n - n1;
            splits(ctx, [&](const Context& f, const Context& a) {
                if (f.size() > n1 || a.size() > n2)
                    return;
                buf_.push_back({NodeKind::App, 0});
                linear(n1, f, depth, [&] { linear(n2, a, depth, k); });
                buf_.pop_back();
            });
        }
        if (ctx.size() + 1 <= n)
            abstraction(n, ctx, depth, k, &TermGenerator::linear);
    }

    // Neutral size n: n + 1 variable occurrences, head variable free.
    void neutral(std::size_t n, const Context& ctx, std::uint32_t depth, const Cont& k)
    {
        if (ctx.empty() || ctx.size() > n + 1)
            return;
        if (n == 0 && ctx.size() == 1)
            variable(ctx[0], depth, k);
        for (std::size_t n1 = 0; n1 < n; ++n1) {
            const std::size_t n2 = n - n1;
            splits(ctx, [&](const Context& f, const Context& a) {
                if (f.empty() || f.size() > n1 + 1 || a.size() > n2)
                    return;
                buf_.push_back({NodeKind::App, 0});
                neutral(n1, f, depth, [&] { normal(n2, a, depth, k); });
                buf_.pop_back();
            });
        }
    }

    void normal(std::size_t n, const Context& ctx, std::uint32_t depth, const Cont& k)
    {
        if (n == 0 || ctx.size() > n)
            return;
        neutral(n - 1, ctx, depth, k);
        if (ctx.size() + 1 <= n)
            abstraction(n, ctx, depth, k, &TermGenerator::normal);
    }

    using Production = void (TermGenerator::*)(std::size_t, const Context&, std::uint32_t, const Cont&);

    void abstraction(std::size_t n, const Context& ctx, std::uint32_t depth, const Cont& k, Production body)
    {
        Context inner = ctx;
        inner.push_back({false, depth});
        buf_.push_back({NodeKind::Lam, 0});
        (this->*body)(n, inner, depth + 1, k);
        buf_.pop_back();
    }

    Family family_;
    std::vector<Node> buf_;
};

} // namespace detail

/// Streams every term of family `f` with size `n` over a context of `k`
/// labeled free variables, each exactly once, in a deterministic order.
template <class Visitor>
void for_each_term(Family f, std::size_t n, std::size_t k, Visitor&& visit)
{
    detail::TermGenerator gen(f);
    gen.run(n, k, [&](std::span<const Node> prefix) { visit(Term(std::vector<Node>(prefix.begin(), prefix.end()))); });
}

inline std::vector<Term> enum_family(Family f, std::size_t n, std::size_t k)
{
    std::vector<Term> out;
    for_each_term(f, n, k, [&](Term t) { out.push_back(std::move(t)); });
    return out;
}

inline std::uint64_t count_terms(Family f, std::size_t n, std::size_t k)
{
    std::uint64_t count = 0;
    detail::TermGenerator gen(f);
    gen.run(n, k, [&](std::span<const Node>) { ++count; });
    return count;
}

/// Counts of enum_family over every n <= max_n and k <= n + 1, or only k = 0
/// when `closed_only` is set.
inline CountTable count_family(Family f, std::size_t max_n, bool closed_only = false)
{
    CountTable table;
    table.provenance = "enum:" + std::string(to_string(f));
    table.max_n = max_n;
    for (std::size_t n = 0; n <= max_n; ++n)
        for (std::size_t k = 0; k <= (closed_only ? 0 : n + 1); ++k)
            table.set(n, k, count_terms(f, n, k));
    return table;
}

} // namespace linmaps

#endif // LINMAPS_ENUMERATE_HPP
