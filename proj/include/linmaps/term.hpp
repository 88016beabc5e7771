#ifndef LINMAPS_TERM_HPP
#define LINMAPS_TERM_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linmaps {

enum class NodeKind : std::uint8_t { Bound, Free, App, Lam };

// One node of a term in prefix order. `index` is the de Bruijn index for
// Bound nodes and the context position for Free nodes; unused otherwise.
struct Node {
    NodeKind kind = NodeKind::Bound;
    std::uint32_t index = 0;

    friend auto operator<=>(const Node&, const Node&) = default;
};

namespace detail {

// One past the last node of the subtree rooted at `pos`.
inline std::size_t subtree_end(std::span<const Node> nodes, std::size_t pos)
{
    std::size_t pending = 1;
    while (pending > 0) {
        if (pos >= nodes.size())
            throw std::invalid_argument("truncated term encoding");
        switch (nodes[pos].kind) {
        case NodeKind::App: pending += 1; break;
        case NodeKind::Lam: break;
        case NodeKind::Bound:
        case NodeKind::Free: pending -= 1; break;
        }
        ++pos;
    }
    return pos;
}

} // namespace detail

/// A lambda term modulo alpha-equivalence, stored as a flat prefix sequence
/// of nodes. Bound variables use de Bruijn indices, free variables refer to
/// positions of an ordered context, so structural equality is alpha-equality.
class Term {
public:
    Term() = default;

    explicit Term(std::vector<Node> prefix) : nodes_(std::move(prefix))
    {
        if (nodes_.empty() || detail::subtree_end(nodes_, 0) != nodes_.size())
            throw std::invalid_argument("malformed term encoding");
    }

    static Term bound(std::uint32_t index) { return Term(Raw{}, {{NodeKind::Bound, index}}); }
    static Term free(std::uint32_t position) { return Term(Raw{}, {{NodeKind::Free, position}}); }

    static Term app(const Term& function, const Term& argument)
    {
        std::vector<Node> out;
        out.reserve(1 + function.nodes_.size() + argument.nodes_.size());
        out.push_back({NodeKind::App, 0});
        out.insert(out.end(), function.nodes_.begin(), function.nodes_.end());
        out.insert(out.end(), argument.nodes_.begin(), argument.nodes_.end());
        return Term(Raw{}, std::move(out));
    }

    static Term lam(const Term& body)
    {
        std::vector<Node> out;
        out.reserve(1 + body.nodes_.size());
        out.push_back({NodeKind::Lam, 0});
        out.insert(out.end(), body.nodes_.begin(), body.nodes_.end());
        return Term(Raw{}, std::move(out));
    }

    bool empty() const noexcept { return nodes_.empty(); }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    NodeKind kind() const { return nodes_.at(0).kind; }
    std::uint32_t index() const { return nodes_.at(0).index; }

    Term function() const
    {
        expect(NodeKind::App);
        const auto end = detail::subtree_end(nodes_, 1);
        return slice(1, end);
    }

    Term argument() const
    {
        expect(NodeKind::App);
        const auto mid = detail::subtree_end(nodes_, 1);
        return slice(mid, nodes_.size());
    }

    Term body() const
    {
        expect(NodeKind::Lam);
        return slice(1, nodes_.size());
    }

    std::size_t occurrences() const noexcept
    {
        return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) {
            return n.kind == NodeKind::Bound || n.kind == NodeKind::Free;
        }));
    }

    /// Canonical ASCII form: space-separated prefix tokens L, A, V<i>, F<j>.
    std::string to_ascii() const
    {
        std::string out;
        for (const auto& n : nodes_) {
            if (!out.empty())
                out += ' ';
            switch (n.kind) {
            case NodeKind::Lam: out += 'L'; break;
            case NodeKind::App: out += 'A'; break;
            case NodeKind::Bound: out += 'V' + std::to_string(n.index); break;
            case NodeKind::Free: out += 'F' + std::to_string(n.index); break;
            }
        }
        return out;
    }

    static Term from_ascii(std::string_view text)
    {
        std::vector<Node> out;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == ' ' || text[i] == '\t') {
                ++i;
                continue;
            }
            const char c = text[i++];
            if (c == 'L' || c == 'A') {
                out.push_back({c == 'L' ? NodeKind::Lam : NodeKind::App, 0});
                continue;
            }
            if (c != 'V' && c != 'F')
                throw std::invalid_argument("bad token in ASCII term at offset " + std::to_string(i - 1));
            std::size_t j = i;
            std::uint32_t value = 0;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9')
                value = value * 10 + static_cast<std::uint32_t>(text[j++] - '0');
            if (j == i)
                throw std::invalid_argument("missing index in ASCII term at offset " + std::to_string(i));
            out.push_back({c == 'V' ? NodeKind::Bound : NodeKind::Free, value});
            i = j;
        }
        return Term(std::move(out));
    }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term& a, const Term& b) { return a.nodes_ <=> b.nodes_; }

private:
    struct Raw {};
    Term(Raw, std::vector<Node> prefix) : nodes_(std::move(prefix)) {}

    void expect(NodeKind k) const
    {
        if (nodes_.empty() || nodes_[0].kind != k)
            throw std::logic_error("term has the wrong node kind for this accessor");
    }

    Term slice(std::size_t first, std::size_t last) const
    {
        return Term(Raw{}, std::vector<Node>(nodes_.begin() + static_cast<std::ptrdiff_t>(first),
                                             nodes_.begin() + static_cast<std::ptrdiff_t>(last)));
    }

    std::vector<Node> nodes_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (const auto& n : t.nodes()) {
            h ^= (static_cast<std::size_t>(n.kind) << 24) ^ n.index;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// ---------------------------------------------------------------------------
// Binding structure

/// For every node: its binder depth, and for Bound nodes the position of the
/// Lam node that binds it (npos if the index escapes all binders).
struct Binding {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::uint32_t> depth;
    std::vector<std::size_t> binder;
};

inline Binding binding_of(const Term& t)
{
    const auto nodes = t.nodes();
    Binding b;
    b.depth.resize(nodes.size());
    b.binder.assign(nodes.size(), Binding::npos);

    std::vector<std::size_t> lams;               // Lam positions on the current path
    std::vector<std::size_t> close_at;           // subtree end of each open Lam
    for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
        while (!close_at.empty() && close_at.back() == pos) {
            close_at.pop_back();
            lams.pop_back();
        }
        b.depth[pos] = static_cast<std::uint32_t>(lams.size());
        const auto& n = nodes[pos];
        if (n.kind == NodeKind::Lam) {
            lams.push_back(pos);
            close_at.push_back(detail::subtree_end(nodes, pos));
        } else if (n.kind == NodeKind::Bound && n.index < lams.size()) {
            b.binder[pos] = lams[lams.size() - 1 - n.index];
        }
    }
    return b;
}

/// Number of context positions a term refers to: one past its largest Free index.
inline std::size_t context_extent(const Term& t)
{
    std::size_t k = 0;
    for (const auto& n : t.nodes())
        if (n.kind == NodeKind::Free)
            k = std::max<std::size_t>(k, n.index + 1);
    return k;
}

/// True iff every binder and every one of the `context_size` context
/// positions is used exactly once, and no reference escapes.
inline bool check_linear(const Term& t, std::size_t context_size)
{
    if (t.empty())
        return false;
    const auto nodes = t.nodes();
    const auto b = binding_of(t);
    std::vector<int> uses(nodes.size(), 0);
    std::vector<int> free_uses(context_size, 0);
    for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
        if (nodes[pos].kind == NodeKind::Bound) {
            if (b.binder[pos] == Binding::npos)
                return false;
            ++uses[b.binder[pos]];
        } else if (nodes[pos].kind == NodeKind::Free) {
            if (nodes[pos].index >= context_size)
                return false;
            ++free_uses[nodes[pos].index];
        }
    }
    for (std::size_t pos = 0; pos < nodes.size(); ++pos)
        if (nodes[pos].kind == NodeKind::Lam && uses[pos] != 1)
            return false;
    return std::all_of(free_uses.begin(), free_uses.end(), [](int u) { return u == 1; });
}

/// Result of opening the outermost run of abstractions of a term.
struct OpenedBlock {
    std::size_t binders = 0;
    Term body;
};

/// Strips the leading abstractions of `t` and turns their variables into
/// free references: binder b (outermost first) becomes context position
/// `context_size + b`, after the term's own `context_size` positions.
inline OpenedBlock open_outer_block(const Term& t, std::size_t context_size)
{
    const auto nodes = t.nodes();
    std::size_t i = 0;
    while (i < nodes.size() && nodes[i].kind == NodeKind::Lam)
        ++i;
    const auto b = binding_of(t);
    std::vector<Node> body(nodes.begin() + static_cast<std::ptrdiff_t>(i), nodes.end());
    for (std::size_t pos = i; pos < nodes.size(); ++pos) {
        if (nodes[pos].kind != NodeKind::Bound || b.binder[pos] == Binding::npos || b.binder[pos] >= i)
            continue;
        body[pos - i] = {NodeKind::Free, static_cast<std::uint32_t>(context_size + b.binder[pos])};
    }
    return {i, Term(std::move(body))};
}

// ---------------------------------------------------------------------------
// Neutral / normal classification

enum class TermKind { Neutral, NormalOnly, NotNormal };

struct Classification {
    TermKind kind = TermKind::NotNormal;
    std::size_t occurrences = 0;

    bool is_normal() const noexcept { return kind != TermKind::NotNormal; }
    bool is_neutral() const noexcept { return kind == TermKind::Neutral; }

    // Size counts uses of the neutral-to-normal coercion in the derivation.
    std::optional<std::size_t> normal_size() const
    {
        return is_normal() ? std::optional<std::size_t>(occurrences) : std::nullopt;
    }
    std::optional<std::size_t> neutral_size() const
    {
        return is_neutral() ? std::optional<std::size_t>(occurrences - 1) : std::nullopt;
    }

    friend bool operator==(const Classification&, const Classification&) = default;
};

namespace detail {

struct NeutralNormal {
    bool neutral;
    bool normal;
};

inline NeutralNormal classify_at(std::span<const Node> nodes, std::size_t pos, std::size_t& end)
{
    switch (nodes[pos].kind) {
    case NodeKind::Bound:
    case NodeKind::Free:
        end = pos + 1;
        return {true, true};
    case NodeKind::App: {
        std::size_t mid = 0;
        const auto f = classify_at(nodes, pos + 1, mid);
        const auto a = classify_at(nodes, mid, end);
        const bool neutral = f.neutral && a.normal;
        return {neutral, neutral};
    }
    case NodeKind::Lam: {
        const auto body = classify_at(nodes, pos + 1, end);
        return {false, body.normal};
    }
    }
    throw std::logic_error("unreachable node kind");
}

} // namespace detail

/// Classifies a linear term by the mutual induction: variables are neutral,
/// neutral applied to normal is neutral, neutral is normal, and abstraction
/// of a normal term is normal. Throws std::invalid_argument on non-linear input.
inline Classification classify(const Term& t)
{
    if (!check_linear(t, context_extent(t)))
        throw std::invalid_argument("classify: term is not linear");
    std::size_t end = 0;
    const auto r = detail::classify_at(t.nodes(), 0, end);
    Classification c;
    c.occurrences = t.occurrences();
    c.kind = r.neutral ? TermKind::Neutral : (r.normal ? TermKind::NormalOnly : TermKind::NotNormal);
    return c;
}

/// True iff some application has an abstraction in function position.
inline bool has_redex(const Term& t)
{
    const auto nodes = t.nodes();
    for (std::size_t pos = 0; pos + 1 < nodes.size(); ++pos)
        if (nodes[pos].kind == NodeKind::App && nodes[pos + 1].kind == NodeKind::Lam)
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Named syntax

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> context) : text_(text), context_(context)
    {
        for (std::size_t i = 0; i < context_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (context_[i] == context_[j])
                    throw ParseError("duplicate context name '" + context_[i] + "'", 0);
    }

    Term parse()
    {
        auto t = term();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return t;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
            ++pos_;
    }

    bool at_lambda()
    {
        skip_space();
        return text_.substr(pos_, 1) == "\\" || text_.substr(pos_, 2) == "\xCE\xBB";
    }

    static bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
    static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

    bool at_atom()
    {
        skip_space();
        return pos_ < text_.size() && (text_[pos_] == '(' || ident_start(text_[pos_]));
    }

    std::string ident()
    {
        skip_space();
        if (pos_ >= text_.size() || !ident_start(text_[pos_]))
            throw ParseError("expected a variable name", pos_);
        const auto start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_]))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void bind(const std::string& name, std::size_t at)
    {
        const bool clash = std::find(scope_.begin(), scope_.end(), name) != scope_.end() ||
                           std::find(context_.begin(), context_.end(), name) != context_.end();
        if (clash)
            throw ParseError("name '" + name + "' is bound twice in overlapping scopes", at);
        scope_.push_back(name);
    }

    Term term()
    {
        if (at_lambda())
            return abstraction();
        if (!at_atom())
            throw ParseError("expected a term", pos_);
        Term t = atom();
        for (;;) {
            if (at_atom()) {
                t = Term::app(t, atom());
            } else if (at_lambda()) {
                t = Term::app(t, abstraction());
                break;
            } else {
                break;
            }
        }
        return t;
    }

    Term abstraction()
    {
        pos_ += text_[pos_] == '\\' ? 1 : 2;
        std::size_t bound_here = 0;
        do {
            const auto at = (skip_space(), pos_);
            bind(ident(), at);
            ++bound_here;
            skip_space();
        } while (pos_ < text_.size() && text_[pos_] != '.');
        if (pos_ >= text_.size())
            throw ParseError("expected '.' after binder", pos_);
        ++pos_;
        Term body = term();
        for (std::size_t i = 0; i < bound_here; ++i) {
            body = Term::lam(body);
            scope_.pop_back();
        }
        return body;
    }

    Term atom()
    {
        skip_space();
        if (text_[pos_] == '(') {
            ++pos_;
            Term t = term();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return t;
        }
        const auto at = pos_;
        const auto name = ident();
        for (std::size_t i = scope_.size(); i-- > 0;)
            if (scope_[i] == name)
                return Term::bound(static_cast<std::uint32_t>(scope_.size() - 1 - i));
        for (std::size_t j = 0; j < context_.size(); ++j)
            if (context_[j] == name)
                return Term::free(static_cast<std::uint32_t>(j));
        throw ParseError("unbound name '" + name + "'", at);
    }

    std::string_view text_;
    std::span<const std::string> context_;
    std::vector<std::string> scope_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses named syntax (`\x. t` or `λx. t`, application by juxtaposition or
/// `f(x)`) into a de Bruijn term. Free names resolve against `context`.
inline Term parse(std::string_view text, std::span<const std::string> context = {})
{
    return detail::Parser(text, context).parse();
}

inline Term parse(std::string_view text, std::initializer_list<std::string> context)
{
    const std::vector<std::string> names(context);
    return parse(text, std::span<const std::string>(names));
}

// ---------------------------------------------------------------------------
// Rendering

struct RenderOptions {
    std::string lambda = "\xCE\xBB";
    // Binder names are drawn from this alphabet in order, skipping any name
    // already in the context; exhausted alphabets continue with numbered names.
    std::string binder_alphabet = "abcdefghijklmnopqrstuvwxyz";
};

namespace detail {

inline std::string fresh_name(std::size_t level, std::span<const std::string> context, const RenderOptions& opt)
{
    std::size_t seen = 0;
    for (std::size_t round = 0;; ++round) {
        for (char c : opt.binder_alphabet) {
            std::string name(1, c);
            if (round > 0)
                name += std::to_string(round);
            if (std::find(context.begin(), context.end(), name) != context.end())
                continue;
            if (seen++ == level)
                return name;
        }
    }
}

inline void render_at(std::span<const Node> nodes, std::size_t pos, std::size_t& end, std::vector<std::string>& scope,
                      std::span<const std::string> context, const RenderOptions& opt, std::string& out)
{
    const auto& n = nodes[pos];
    switch (n.kind) {
    case NodeKind::Bound:
        if (n.index >= scope.size())
            throw std::invalid_argument("render: dangling de Bruijn index");
        out += scope[scope.size() - 1 - n.index];
        end = pos + 1;
        return;
    case NodeKind::Free:
        out += n.index < context.size() ? context[n.index] : "_" + std::to_string(n.index);
        end = pos + 1;
        return;
    case NodeKind::App: {
        const bool wrap = nodes[pos + 1].kind == NodeKind::Lam;
        std::size_t mid = 0;
        if (wrap)
            out += '(';
        render_at(nodes, pos + 1, mid, scope, context, opt, out);
        if (wrap)
            out += ')';
        out += '(';
        render_at(nodes, mid, end, scope, context, opt, out);
        out += ')';
        return;
    }
    case NodeKind::Lam: {
        scope.push_back(fresh_name(scope.size(), context, opt));
        out += opt.lambda + scope.back() + '.';
        render_at(nodes, pos + 1, end, scope, context, opt, out);
        scope.pop_back();
        return;
    }
    }
}

} // namespace detail

/// Renders a term in the `λa.λb.b(a)` style; binders get names by depth.
inline std::string render(const Term& t, std::span<const std::string> context = {}, const RenderOptions& opt = {})
{
    std::string out;
    std::vector<std::string> scope;
    std::size_t end = 0;
    detail::render_at(t.nodes(), 0, end, scope, context, opt, out);
    return out;
}

} // namespace linmaps

#endif // LINMAPS_TERM_HPP
