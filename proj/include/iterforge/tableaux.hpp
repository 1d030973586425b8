#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/catalan.hpp"
#include "iterforge/error.hpp"
#include "iterforge/term.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace iterforge {

/// 1-based label of an iterate within its order.
using Label = std::uint32_t;

/**
 * All iterates of one order, indexed by label. Labels are the order of first
 * occurrence in the row-major scan of tableau A_n built from the previous
 * catalog.
 */
class Catalog {
public:
    /// Where the two factors of V(left, right) live in the lower catalogs.
    struct Split {
        std::size_t left_order;
        Label left;
        std::size_t right_order;
        Label right;
    };

    Catalog() = default;
    explicit Catalog(std::size_t order) : order_(order) {}

    std::size_t order() const noexcept { return order_; }
    std::size_t size() const noexcept { return terms_.size(); }

    const Term& term(Label label) const { return terms_.at(check(label) - 1); }
    const std::string& word(Label label) const { return words_.at(check(label) - 1); }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    const std::vector<std::string>& words() const noexcept { return words_; }

    std::optional<Label> find(const std::string& word) const {
        auto it = index_.find(word);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<Label> find(const Term& t) const { return find(render_word(t)); }

    Label label_of(const Term& t) const {
        auto w = render_word(t);
        auto found = find(w);
        if (!found) throw UnknownLabel("term " + w + " is not in the catalog of order " + std::to_string(order_));
        return *found;
    }

    /// Decomposition of a label of order >= 1; filled once all lower
    /// catalogs are known.
    const Split& split(Label label) const { return splits_.at(check(label) - 1); }

    /// Appends t if absent and returns its label.
    Label intern(const Term& t) {
        auto w = render_word(t);
        auto [it, inserted] = index_.emplace(w, static_cast<Label>(terms_.size() + 1));
        if (inserted) {
            terms_.push_back(t);
            words_.push_back(std::move(w));
        }
        return it->second;
    }

    void set_splits(std::vector<Split> splits) { splits_ = std::move(splits); }

private:
    Label check(Label label) const {
        if (label < 1 || label > terms_.size()) {
            throw UnknownLabel("label " + std::to_string(label) + " outside 1.." + std::to_string(terms_.size()) +
                               " at order " + std::to_string(order_));
        }
        return label;
    }

    std::size_t order_ = 0;
    std::vector<Term> terms_;
    std::vector<std::string> words_;
    std::unordered_map<std::string, Label> index_;
    std::vector<Split> splits_;
};

/// n lines x S_{n-1} columns; rows[k-1][i-1] is the label of the (n-1)-iterate
/// i with its k-th leaf replaced by Vxx.
struct TableauA {
    std::size_t order = 0;
    std::vector<std::vector<Label>> rows;
};

/// Two rows: V(J_i, x) and V(x, J_i) for every (n-1)-iterate J_i.
struct TableauB {
    std::size_t order = 0;
    std::array<std::vector<Label>, 2> rows;
};

/// Builds Catalog_n and A_n from Catalog_{n-1}.
inline std::pair<Catalog, TableauA> build_level(const Catalog& previous) {
    const std::size_t n = previous.order() + 1;
    Catalog catalog(n);
    TableauA a{n, {}};
    a.rows.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Label> row;
        row.reserve(previous.size());
        for (const Term& t : previous.terms()) row.push_back(catalog.intern(substitute_cherry(t, k)));
        a.rows.push_back(std::move(row));
    }
    return {std::move(catalog), std::move(a)};
}

inline TableauB build_b(const Catalog& previous, const Catalog& current) {
    TableauB b;
    b.order = current.order();
    for (const Term& t : previous.terms()) {
        b.rows[0].push_back(current.label_of(Term::node(t, Term::leaf())));
        b.rows[1].push_back(current.label_of(Term::node(Term::leaf(), t)));
    }
    return b;
}

/**
 * Catalogs and tableaux for orders 0..max_order, built once and then read
 * only. Every consumer borrows from one set so labels stay consistent.
 */
class TableauSet {
public:
    static constexpr std::size_t default_max_order = 9;

    explicit TableauSet(std::size_t max_order = default_max_order) {
        Catalog zero(0);
        zero.intern(Term::leaf());
        catalogs_.push_back(std::move(zero));
        a_.push_back({});
        b_.push_back({});
        extend_to(max_order);
    }

    /// Assembles a set from previously computed levels (used by the disk
    /// cache). Levels must be contiguous from order 0.
    static TableauSet from_levels(std::vector<Catalog> catalogs, std::vector<TableauA> a, std::vector<TableauB> b) {
        TableauSet set(0);
        set.catalogs_ = std::move(catalogs);
        set.a_ = std::move(a);
        set.b_ = std::move(b);
        for (std::size_t n = 1; n < set.catalogs_.size(); ++n) set.fill_splits(n);
        return set;
    }

    void extend_to(std::size_t max_order) {
        while (max_order_plus_one() <= max_order) {
            const Catalog& prev = catalogs_.back();
            auto [catalog, a] = build_level(prev);
            TableauB b = build_b(prev, catalog);
            catalogs_.push_back(std::move(catalog));
            a_.push_back(std::move(a));
            b_.push_back(std::move(b));
            fill_splits(catalogs_.size() - 1);
        }
    }

    std::size_t max_order() const noexcept { return catalogs_.size() - 1; }

    const Catalog& catalog(std::size_t n) const { return catalogs_.at(require(n)); }
    const TableauA& a(std::size_t n) const {
        if (n == 0) throw OrderZero("tableau A_0 does not exist");
        return a_.at(require(n));
    }
    const TableauB& b(std::size_t n) const {
        if (n == 0) throw OrderZero("tableau B_0 does not exist");
        return b_.at(require(n));
    }

    /// Label of V(left, right) where left/right are labels at the given orders.
    Label compose(std::size_t left_order, Label left, std::size_t right_order, Label right) const {
        const std::size_t n = left_order + right_order + 1;
        if (n > max_order()) {
            throw OrderOverflow("composite order " + std::to_string(n) + " exceeds built order " +
                                std::to_string(max_order()));
        }
        const std::string w = "V" + catalog(left_order).word(left) + catalog(right_order).word(right);
        return *catalog(n).find(w);
    }

private:
    std::size_t max_order_plus_one() const { return catalogs_.size(); }

    std::size_t require(std::size_t n) const {
        if (n >= catalogs_.size()) {
            throw IndexOutOfRange("order " + std::to_string(n) + " exceeds built order " +
                                  std::to_string(max_order()));
        }
        return n;
    }

    void fill_splits(std::size_t n) {
        Catalog& c = catalogs_[n];
        std::vector<Catalog::Split> splits;
        splits.reserve(c.size());
        for (const Term& t : c.terms()) {
            const Term& l = t.left();
            const Term& r = t.right();
            splits.push_back({l.order(), catalogs_[l.order()].label_of(l), r.order(), catalogs_[r.order()].label_of(r)});
        }
        c.set_splits(std::move(splits));
    }

    std::vector<Catalog> catalogs_;
    std::vector<TableauA> a_;
    std::vector<TableauB> b_;
};

// ---------------------------------------------------------------------------
// Counting properties of A_n

inline std::size_t multiplicity(const TableauA& a, Label label) {
    std::size_t count = 0;
    for (const auto& row : a.rows) {
        for (Label l : row) count += l == label;
    }
    if (count == 0) throw UnknownLabel("label " + std::to_string(label) + " does not occur in A_" + std::to_string(a.order));
    return count;
}

/// Occurrence count per label (index label-1).
inline std::vector<std::size_t> occurrence_counts(const std::vector<std::vector<Label>>& rows, std::size_t labels) {
    std::vector<std::size_t> counts(labels, 0);
    for (const auto& row : rows) {
        for (Label l : row) ++counts.at(l - 1);
    }
    return counts;
}

/// multiplicity k -> number of labels with that multiplicity.
inline std::map<std::size_t, std::size_t> multiplicity_histogram(const std::vector<std::vector<Label>>& rows,
                                                                 std::size_t labels) {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t c : occurrence_counts(rows, labels)) ++hist[c];
    return hist;
}

inline std::map<std::size_t, std::size_t> multiplicity_histogram(const TableauSet& set, std::size_t n) {
    return multiplicity_histogram(set.a(n).rows, set.catalog(n).size());
}

/// T_{n,k} = 2^{n-2k+1} (n-1 choose 2k-2) S_{k-1}, zero outside 1 <= k <= [(n+1)/2].
inline BigInt multiplicity_count_formula(std::size_t n, std::size_t k) {
    if (n < 1 || k < 1 || 2 * k - 2 > n - 1) return 0;
    return pow2(n - 2 * k + 1) * binomial(static_cast<long long>(n - 1), static_cast<long long>(2 * k - 2)) *
           catalan(k - 1);
}

/// Both sides of sum_{v>=0} (k+v choose k) T_{n,k+v} = (n-k+1 choose k) S_{n-k}.
inline std::pair<BigInt, BigInt> multiplicity_binomial_identity(std::size_t n, std::size_t k) {
    BigInt lhs = 0;
    for (std::size_t j = std::max<std::size_t>(k, 1); 2 * j <= n + 1; ++j) {
        lhs += binomial(static_cast<long long>(j), static_cast<long long>(k)) * multiplicity_count_formula(n, j);
    }
    BigInt rhs = k > n ? BigInt(0)
                       : binomial(static_cast<long long>(n - k + 1), static_cast<long long>(k)) * catalan(n - k);
    return {lhs, rhs};
}

/// |L_{i1} ∩ ... ∩ L_{ik}| over the label sets of the given lines (1-based).
inline std::size_t line_intersection_card(const TableauA& a, const std::set<std::size_t>& lines) {
    if (lines.empty()) throw IndexOutOfRange("at least one line index is required");
    for (std::size_t line : lines) {
        if (line < 1 || line > a.rows.size()) {
            throw IndexOutOfRange("line " + std::to_string(line) + " outside 1.." + std::to_string(a.rows.size()));
        }
    }
    auto it = lines.begin();
    std::set<Label> acc(a.rows[*it - 1].begin(), a.rows[*it - 1].end());
    for (++it; it != lines.end(); ++it) {
        const std::set<Label> next(a.rows[*it - 1].begin(), a.rows[*it - 1].end());
        std::set<Label> kept;
        for (Label l : acc) {
            if (next.count(l)) kept.insert(l);
        }
        acc = std::move(kept);
    }
    return acc.size();
}

/// Case formula for the intersection cardinality: S_{n-1} for a single line,
/// 0 if two indices are adjacent, S_{n-k} otherwise.
inline BigInt line_intersection_formula(std::size_t n, const std::set<std::size_t>& lines) {
    if (lines.size() == 1) return catalan(n - 1);
    std::size_t prev = 0;
    for (std::size_t line : lines) {
        if (prev != 0 && line == prev + 1) return 0;
        prev = line;
    }
    if (lines.size() > n) return 0;
    return catalan(n - lines.size());
}

/// Number of labels making their first appearance on each line.
inline std::vector<std::size_t> fresh_label_counts(const TableauA& a) {
    std::vector<std::size_t> counts;
    Label highest = 0;
    for (const auto& row : a.rows) {
        std::size_t fresh = 0;
        for (Label l : row) {
            if (l > highest) {
                highest = l;
                ++fresh;
            }
        }
        counts.push_back(fresh);
    }
    return counts;
}

} // namespace iterforge
