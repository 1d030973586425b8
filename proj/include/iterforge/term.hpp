#pragma once

#include "iterforge/error.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iterforge {

/**
 * An iterate of a binary operation: a full binary tree whose leaves are the
 * variables x_1 ... x_{n+1}, numbered left to right.
 *
 * Terms are immutable values. Subtrees are shared, so copying is cheap and
 * equality is structural.
 */
class Term {
public:
    /// The single variable x.
    Term() = default;

    static Term leaf() { return Term{}; }
    static Term node(Term left, Term right);

    bool is_leaf() const noexcept { return node_ == nullptr; }

    /// Number of operation symbols; a term of order n has n+1 leaves.
    std::size_t order() const noexcept;
    std::size_t leaf_count() const noexcept { return order() + 1; }

    const Term& left() const;
    const Term& right() const;

    friend bool operator==(const Term& a, const Term& b) noexcept;

private:
    struct Node;

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    void require_node() const {
        if (!node_) throw OrderZero("the variable x has no subterms");
    }

    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Term left;
    Term right;
    std::size_t order;
};

inline Term Term::node(Term left, Term right) {
    const std::size_t order = left.order() + right.order() + 1;
    return Term{std::make_shared<const Node>(Node{std::move(left), std::move(right), order})};
}

inline std::size_t Term::order() const noexcept { return node_ ? node_->order : 0; }

inline const Term& Term::left() const {
    require_node();
    return node_->left;
}

inline const Term& Term::right() const {
    require_node();
    return node_->right;
}

inline bool operator==(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    return a.node_->order == b.node_->order && a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

// ---------------------------------------------------------------------------
// Prefix words over {V, x}

inline void render_word_into(const Term& t, std::string& out) {
    if (t.is_leaf()) {
        out.push_back('x');
        return;
    }
    out.push_back('V');
    render_word_into(t.left(), out);
    render_word_into(t.right(), out);
}

inline std::string render_word(const Term& t) {
    std::string out;
    out.reserve(2 * t.order() + 1);
    render_word_into(t, out);
    return out;
}

/// Parses a prefix (Polish) word such as "VVxxVxx". Throws MalformedWord if the
/// string is not exactly one well-formed term.
inline Term parse_word(std::string_view w) {
    // Each frame is an operator still waiting for its arguments.
    struct Frame {
        std::optional<Term> left;
    };
    std::vector<Frame> stack;
    std::optional<Term> done;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (done) throw MalformedWord("trailing symbols after a complete term in \"" + std::string(w) + "\"");
        const char c = w[i];
        if (c == 'V') {
            stack.push_back({});
            continue;
        }
        if (c != 'x') {
            throw MalformedWord("unexpected symbol '" + std::string(1, c) + "' in \"" + std::string(w) + "\"");
        }
        Term current = Term::leaf();
        while (true) {
            if (stack.empty()) {
                done = std::move(current);
                break;
            }
            Frame& top = stack.back();
            if (!top.left) {
                top.left = std::move(current);
                break;
            }
            current = Term::node(std::move(*top.left), std::move(current));
            stack.pop_back();
        }
    }
    if (!done) throw MalformedWord("too few arguments in \"" + std::string(w) + "\"");
    return *done;
}

// ---------------------------------------------------------------------------
// Run-length codes a1 b1 ... ak bk of words

struct RunLengthCode {
    /// (V-run length, x-run length) pairs, all positive.
    std::vector<std::pair<std::size_t, std::size_t>> runs;

    std::size_t k() const noexcept { return runs.size(); }

    /// Digits concatenated, e.g. "321113"; comma separated if any run exceeds 9.
    std::string to_string() const {
        bool small = true;
        for (auto [a, b] : runs) small = small && a < 10 && b < 10;
        std::string s;
        for (auto [a, b] : runs) {
            if (!small && !s.empty()) s += ',';
            s += std::to_string(a);
            s += small ? "" : ",";
            s += std::to_string(b);
        }
        return s;
    }
};

/// Encodes a word that starts with V and ends with x. Returns nullopt for
/// anything else (including "x", which has no V-run).
inline std::optional<RunLengthCode> run_length_encode(std::string_view w) {
    if (w.empty() || w.front() != 'V' || w.back() != 'x') return std::nullopt;
    RunLengthCode code;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t a = 0, b = 0;
        while (i < w.size() && w[i] == 'V') ++a, ++i;
        while (i < w.size() && w[i] == 'x') ++b, ++i;
        if (i < w.size() && w[i] != 'V') return std::nullopt;
        code.runs.emplace_back(a, b);
    }
    return code;
}

/// Decides well-formedness from the run-length code alone: totals must be
/// n V's and n+1 x's, and every partial sum of V-runs through run j < k must
/// dominate the partial sum of x-runs.
inline bool is_well_formed(const RunLengthCode& code) {
    if (code.runs.empty()) return false;
    std::size_t n = 0, leaves = 0;
    for (auto [a, b] : code.runs) {
        if (a == 0 || b == 0) return false;
        n += a;
        leaves += b;
    }
    if (leaves != n + 1) return false;
    if (code.k() == 1) return true;
    std::size_t sa = 0, sb = 0;
    for (std::size_t j = 0; j + 1 < code.k(); ++j) {
        sa += code.runs[j].first;
        sb += code.runs[j].second;
        if (sa < sb) return false;
    }
    return true;
}

inline bool validate_word_diophantine(std::string_view w) {
    if (w == "x") return true;
    auto code = run_length_encode(w);
    return code && is_well_formed(*code);
}

// ---------------------------------------------------------------------------
// Structural operations. Leaf positions are 1-based.

namespace detail {

inline void collect_cherries(const Term& t, std::size_t first_leaf, std::vector<std::size_t>& out) {
    if (t.is_leaf()) return;
    if (t.left().is_leaf() && t.right().is_leaf()) {
        out.push_back(first_leaf);
        return;
    }
    collect_cherries(t.left(), first_leaf, out);
    collect_cherries(t.right(), first_leaf + t.left().leaf_count(), out);
}

} // namespace detail

/// Positions p such that leaves p and p+1 hang from a common node (a Vxx
/// subterm), in increasing order.
inline std::vector<std::size_t> cherries(const Term& t) {
    if (t.is_leaf()) throw OrderZero("the variable x has no cherries");
    std::vector<std::size_t> out;
    detail::collect_cherries(t, 1, out);
    return out;
}

/// Replaces leaf p with Vxx, raising the order by one.
inline Term substitute_cherry(const Term& t, std::size_t p) {
    if (p < 1 || p > t.leaf_count()) {
        throw PositionOutOfRange("leaf position " + std::to_string(p) + " outside 1.." +
                                 std::to_string(t.leaf_count()));
    }
    if (t.is_leaf()) return Term::node(Term::leaf(), Term::leaf());
    const std::size_t left_leaves = t.left().leaf_count();
    if (p <= left_leaves) return Term::node(substitute_cherry(t.left(), p), t.right());
    return Term::node(t.left(), substitute_cherry(t.right(), p - left_leaves));
}

/// Replaces the cherry covering leaves p, p+1 with a single leaf.
inline Term collapse_cherry(const Term& t, std::size_t p) {
    if (t.is_leaf()) throw PositionOutOfRange("no cherry at position " + std::to_string(p));
    if (t.left().is_leaf() && t.right().is_leaf()) {
        if (p != 1) throw PositionOutOfRange("no cherry at position " + std::to_string(p));
        return Term::leaf();
    }
    const std::size_t left_leaves = t.left().leaf_count();
    if (p < left_leaves) return Term::node(collapse_cherry(t.left(), p), t.right());
    if (p > left_leaves) return Term::node(t.left(), collapse_cherry(t.right(), p - left_leaves));
    throw PositionOutOfRange("no cherry at position " + std::to_string(p));
}

inline std::pair<Term, Term> decompose(const Term& t) {
    if (t.is_leaf()) throw OrderZero("the variable x cannot be decomposed");
    return {t.left(), t.right()};
}

/// All terms of order n, in no particular labeled order. Used for exhaustive
/// checks independent of the tableau labeling.
inline std::vector<Term> all_terms(std::size_t n) {
    std::vector<std::vector<Term>> by_order(n + 1);
    by_order[0].push_back(Term::leaf());
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t l = 0; l < m; ++l) {
            for (const Term& a : by_order[l]) {
                for (const Term& b : by_order[m - 1 - l]) by_order[m].push_back(Term::node(a, b));
            }
        }
    }
    return std::move(by_order[n]);
}

} // namespace iterforge
