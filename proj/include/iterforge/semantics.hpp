#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/catalan.hpp"
#include "iterforge/error.hpp"
#include "iterforge/incidence.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace iterforge {

// ---------------------------------------------------------------------------
// Identity specifications

/// A set of identities J_i = J_j between labels of one order. Pairs are kept
/// normalized (i < j) and sorted.
struct IdentitySpec {
    std::size_t order = 0;
    std::vector<std::pair<Label, Label>> pairs;

    IdentitySpec() = default;
    IdentitySpec(std::size_t n, std::vector<std::pair<Label, Label>> ps) : order(n), pairs(std::move(ps)) { normalize(); }

    void normalize() {
        for (auto& [i, j] : pairs) {
            if (i == j) throw InvalidSpec("reflexive pair " + std::to_string(i) + "=" + std::to_string(j));
            if (i > j) std::swap(i, j);
        }
        std::sort(pairs.begin(), pairs.end());
        if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
            throw InvalidSpec("duplicate identity pair");
        }
    }

    void validate(const TableauSet& set) const {
        if (order == 0) throw InvalidSpec("identities need order at least 1");
        if (pairs.empty()) throw InvalidSpec("no identity pairs given");
        if (order > set.max_order()) {
            throw InvalidSpec("order " + std::to_string(order) + " exceeds built order " +
                              std::to_string(set.max_order()));
        }
        const std::size_t size = set.catalog(order).size();
        for (auto [i, j] : pairs) {
            if (i < 1 || j > size) {
                throw InvalidSpec("pair " + std::to_string(i) + " " + std::to_string(j) + " outside labels 1.." +
                                  std::to_string(size));
            }
        }
    }

    /// Reads "order n" followed by one "i j" line per pair. Blank lines and
    /// text after '#' are ignored.
    static IdentitySpec parse(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        std::optional<std::size_t> n;
        std::vector<std::pair<Label, Label>> ps;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            std::string first;
            if (!(fields >> first)) continue;
            auto fail = [&](const std::string& why) {
                throw InvalidSpec("spec line " + std::to_string(line_no) + ": " + why);
            };
            if (!n) {
                long long value = 0;
                if (first != "order" || !(fields >> value) || value < 1) fail("expected \"order n\" with n >= 1");
                n = static_cast<std::size_t>(value);
            } else {
                long long i = 0, j = 0;
                try {
                    i = std::stoll(first);
                } catch (const std::exception&) {
                    fail("expected two labels");
                }
                if (!(fields >> j) || i < 1 || j < 1) fail("expected two positive labels");
                ps.emplace_back(static_cast<Label>(i), static_cast<Label>(j));
            }
            std::string extra;
            if (fields >> extra) fail("unexpected trailing text \"" + extra + "\"");
        }
        if (!n) throw InvalidSpec("spec is missing the \"order n\" line");
        return IdentitySpec(*n, std::move(ps));
    }

    std::string to_text() const {
        std::string s = "order " + std::to_string(order) + "\n";
        for (auto [i, j] : pairs) s += std::to_string(i) + " " + std::to_string(j) + "\n";
        return s;
    }
};

struct ClosureConfig {
    std::size_t max_order = 7;
    TableauMode mode = TableauMode::ab;
    bool unicity = false;
    /// Stop as soon as a merge below the defining order is derived.
    bool stop_at_reduction = false;
};

// ---------------------------------------------------------------------------
// Union-find with the minimum label as representative

class DisjointSet {
public:
    DisjointSet() = default;
    explicit DisjointSet(std::size_t n) : parent_(n + 1) { std::iota(parent_.begin(), parent_.end(), Label{0}); }

    std::size_t size() const noexcept { return parent_.empty() ? 0 : parent_.size() - 1; }

    Label find(Label x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool same(Label a, Label b) const { return find(a) == find(b); }

    bool unite(Label a, Label b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
        return true;
    }

private:
    mutable std::vector<Label> parent_;
};

// ---------------------------------------------------------------------------
// Derivation log

enum class Rule { seed, a_line, b_row, cancel_left, cancel_right };

inline std::string to_string(Rule r) {
    switch (r) {
    case Rule::seed: return "seed";
    case Rule::a_line: return "a_line";
    case Rule::b_row: return "b_row";
    case Rule::cancel_left: return "cancel_left";
    case Rule::cancel_right: return "cancel_right";
    }
    return "?";
}

/**
 * One effective merge. For tableau rules the source is the pair at order-1
 * whose images on the given line were merged. For cancellation rules the
 * source is the pair of equal iterates whose left (cancel_left) or right
 * (cancel_right) factors agree, and the merged pair is the other factors.
 */
struct Derivation {
    std::size_t order = 0;
    Label a = 0;
    Label b = 0;
    Rule rule = Rule::seed;
    std::size_t line = 0;
    std::size_t source_order = 0;
    Label source_a = 0;
    Label source_b = 0;
};

/// One step of a formal cancellation chain: the pair (a, b) of distinct
/// labels at the given order.
struct ChainStep {
    std::size_t order = 0;
    Label a = 0;
    Label b = 0;

    friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/**
 * Strips formally identical factors: from V(p,q) = V(p,q') go to q = q', from
 * V(p,q) = V(p',q) go to p = p'. Stops at a pair that shares neither factor.
 * Returns the visited pairs, starting with (a, b).
 */
inline std::vector<ChainStep> cancellation_chain(const TableauSet& set, std::size_t order, Label a, Label b) {
    std::vector<ChainStep> chain;
    while (a != b) {
        chain.push_back({order, std::min(a, b), std::max(a, b)});
        if (order == 0) break;
        const auto& sa = set.catalog(order).split(a);
        const auto& sb = set.catalog(order).split(b);
        if (sa.left_order == sb.left_order && sa.left == sb.left) {
            order = sa.right_order;
            a = sa.right;
            b = sb.right;
        } else if (sa.right_order == sb.right_order && sa.right == sb.right) {
            order = sa.left_order;
            a = sa.left;
            b = sb.left;
        } else {
            break;
        }
    }
    return chain;
}

struct FormalWitness {
    std::vector<ChainStep> chain;
};

/// The first merge derived below the defining order, with the formal
/// witnesses present at that moment.
struct Reduction {
    Derivation merge;
    std::vector<FormalWitness> witnesses;
};

// ---------------------------------------------------------------------------
// Closure state

class ClosureState {
public:
    ClosureState(const TableauSet& set, IdentitySpec spec, ClosureConfig config)
        : set_(&set), spec_(std::move(spec)), config_(config) {
        for (std::size_t m = 0; m <= config_.max_order; ++m) partitions_.emplace_back(set.catalog(m).size());
    }

    const TableauSet& tableaux() const noexcept { return *set_; }
    const IdentitySpec& spec() const noexcept { return spec_; }
    const ClosureConfig& config() const noexcept { return config_; }
    std::size_t max_order() const noexcept { return config_.max_order; }
    const std::vector<Derivation>& log() const noexcept { return log_; }
    const std::optional<Reduction>& reduction() const noexcept { return reduction_; }
    bool halted() const noexcept { return halted_; }

    const DisjointSet& partition(std::size_t m) const { return partitions_.at(require(m)); }
    Label find(std::size_t m, Label l) const { return partition(m).find(l); }
    bool same(std::size_t m, Label a, Label b) const { return partition(m).same(a, b); }

    /// Classes at order m, each sorted, listed by smallest member.
    std::vector<std::vector<Label>> classes(std::size_t m) const {
        const auto& ds = partition(m);
        std::map<Label, std::vector<Label>> by_root;
        for (Label l = 1; l <= ds.size(); ++l) by_root[ds.find(l)].push_back(l);
        std::vector<std::vector<Label>> out;
        out.reserve(by_root.size());
        for (auto& [root, members] : by_root) out.push_back(std::move(members));
        return out;
    }

    std::size_t classnumber(std::size_t m) const {
        const auto& ds = partition(m);
        std::size_t h = 0;
        for (Label l = 1; l <= ds.size(); ++l) h += ds.find(l) == l;
        return h;
    }

    std::size_t singletons(std::size_t m) const {
        std::size_t count = 0;
        for (const auto& c : classes(m)) count += c.size() == 1;
        return count;
    }

    /// h_n ... h_N.
    std::vector<std::size_t> classnumbers() const {
        std::vector<std::size_t> out;
        for (std::size_t m = spec_.order; m <= config_.max_order; ++m) out.push_back(classnumber(m));
        return out;
    }

    /// Effective union; logs it and records the first merge below order n.
    bool apply(const Derivation& d) {
        if (!partitions_.at(d.order).unite(d.a, d.b)) return false;
        log_.push_back(d);
        if (d.order < spec_.order && !reduction_) {
            reduction_ = Reduction{d, formal_witnesses()};
            if (config_.stop_at_reduction) halted_ = true;
        }
        return true;
    }

    /// Pairs in one class at an order >= n whose formal cancellation chain
    /// ends below order n.
    std::vector<FormalWitness> formal_witnesses() const {
        std::vector<FormalWitness> out;
        for (std::size_t m = spec_.order; m <= config_.max_order; ++m) {
            for (const auto& cls : classes(m)) {
                for (std::size_t x = 0; x < cls.size(); ++x) {
                    for (std::size_t y = x + 1; y < cls.size(); ++y) {
                        auto chain = cancellation_chain(*set_, m, cls[x], cls[y]);
                        if (chain.back().order < spec_.order) out.push_back({std::move(chain)});
                    }
                }
            }
        }
        return out;
    }

private:
    std::size_t require(std::size_t m) const {
        if (m > config_.max_order) {
            throw IndexOutOfRange("order " + std::to_string(m) + " exceeds closure order " +
                                  std::to_string(config_.max_order));
        }
        return m;
    }

    const TableauSet* set_;
    IdentitySpec spec_;
    ClosureConfig config_;
    std::vector<DisjointSet> partitions_;
    std::vector<Derivation> log_;
    std::optional<Reduction> reduction_;
    bool halted_ = false;
};

namespace detail {

inline bool upward_pass(ClosureState& st, std::size_t top) {
    const TableauSet& set = st.tableaux();
    const TableauMode mode = st.config().mode;
    bool changed = false;
    for (std::size_t m = 1; m < top && !st.halted(); ++m) {
        const std::size_t size = set.catalog(m).size();
        for (Label i = 1; i <= size && !st.halted(); ++i) {
            const Label r = st.find(m, i);
            if (r == i) continue;
            if (uses_a(mode)) {
                const auto& rows = set.a(m + 1).rows;
                for (std::size_t k = 0; k < rows.size() && !st.halted(); ++k) {
                    changed |= st.apply({m + 1, rows[k][i - 1], rows[k][r - 1], Rule::a_line, k + 1, m, r, i});
                }
            }
            if (uses_b(mode)) {
                const auto& rows = set.b(m + 1).rows;
                for (std::size_t k = 0; k < rows.size() && !st.halted(); ++k) {
                    changed |= st.apply({m + 1, rows[k][i - 1], rows[k][r - 1], Rule::b_row, k + 1, m, r, i});
                }
            }
        }
    }
    return changed;
}

inline bool cancellation_pass(ClosureState& st, std::size_t top) {
    const TableauSet& set = st.tableaux();
    bool changed = false;
    for (std::size_t m = top; m >= 1 && !st.halted(); --m) {
        const Catalog& cat = set.catalog(m);
        using Key = std::tuple<Label, std::size_t, Label>;
        std::map<Key, Label> first_left, first_right;
        for (Label u = 1; u <= cat.size() && !st.halted(); ++u) {
            const auto& s = cat.split(u);
            const Label root = st.find(m, u);
            auto [lit, lnew] = first_left.emplace(Key{root, s.left_order, st.find(s.left_order, s.left)}, u);
            if (!lnew) {
                const auto& f = cat.split(lit->second);
                changed |= st.apply({s.right_order, f.right, s.right, Rule::cancel_left, 0, m, lit->second, u});
            }
            if (st.halted()) break;
            auto [rit, rnew] = first_right.emplace(Key{root, s.right_order, st.find(s.right_order, s.right)}, u);
            if (!rnew) {
                const auto& f = cat.split(rit->second);
                changed |= st.apply({s.left_order, f.left, s.left, Rule::cancel_right, 0, m, rit->second, u});
            }
        }
    }
    return changed;
}

} // namespace detail

/**
 * Saturates the identities of the spec to a fixpoint over orders 0..N. Tableau
 * lines carry merges one order up; with unicity, cancellation carries them
 * down to the factors.
 */
inline ClosureState close(const TableauSet& set, const IdentitySpec& spec, const ClosureConfig& config) {
    spec.validate(set);
    if (config.max_order < spec.order) {
        throw InvalidSpec("closure order " + std::to_string(config.max_order) + " is below the identity order " +
                          std::to_string(spec.order));
    }
    if (config.max_order > set.max_order()) {
        throw OrderOverflow("closure order " + std::to_string(config.max_order) + " exceeds built order " +
                            std::to_string(set.max_order()));
    }
    ClosureState st(set, spec, config);
    for (auto [i, j] : spec.pairs) st.apply({spec.order, i, j, Rule::seed, 0, spec.order, i, j});
    for (std::size_t top = spec.order; top <= config.max_order && !st.halted(); ++top) {
        bool changed = true;
        while (changed && !st.halted()) {
            changed = detail::upward_pass(st, top);
            if (config.unicity && !st.halted()) changed |= detail::cancellation_pass(st, top);
        }
    }
    return st;
}

struct ReplayResult {
    bool ok = true;
    std::size_t failed_at = 0;
    std::string message;
};

/// Re-applies the log from scratch, checking each step's precondition, and
/// compares the resulting partitions with the state.
inline ReplayResult replay(const ClosureState& st) {
    const TableauSet& set = st.tableaux();
    std::vector<DisjointSet> ds;
    for (std::size_t m = 0; m <= st.max_order(); ++m) ds.emplace_back(set.catalog(m).size());
    auto fail = [](std::size_t idx, std::string why) { return ReplayResult{false, idx, std::move(why)}; };
    auto same_pair = [](Label x, Label y, Label a, Label b) { return (x == a && y == b) || (x == b && y == a); };

    const auto& log = st.log();
    for (std::size_t idx = 0; idx < log.size(); ++idx) {
        const Derivation& d = log[idx];
        switch (d.rule) {
        case Rule::seed: {
            const auto& ps = st.spec().pairs;
            const auto key = std::make_pair(std::min(d.a, d.b), std::max(d.a, d.b));
            if (d.order != st.spec().order || std::find(ps.begin(), ps.end(), key) == ps.end()) {
                return fail(idx, "seed is not a spec pair");
            }
            break;
        }
        case Rule::a_line:
        case Rule::b_row: {
            if (d.order != d.source_order + 1 || !ds[d.source_order].same(d.source_a, d.source_b)) {
                return fail(idx, "tableau source pair is not yet equal");
            }
            const std::size_t lines = d.rule == Rule::a_line ? set.a(d.order).rows.size() : 2;
            if (d.line < 1 || d.line > lines) return fail(idx, "line index out of range");
            const auto& row = d.rule == Rule::a_line ? set.a(d.order).rows[d.line - 1] : set.b(d.order).rows[d.line - 1];
            if (!same_pair(row[d.source_a - 1], row[d.source_b - 1], d.a, d.b)) {
                return fail(idx, "merged pair is not the image of the source on that line");
            }
            break;
        }
        case Rule::cancel_left:
        case Rule::cancel_right: {
            if (!ds[d.source_order].same(d.source_a, d.source_b)) return fail(idx, "cancellation source not equal");
            const auto& su = set.catalog(d.source_order).split(d.source_a);
            const auto& sv = set.catalog(d.source_order).split(d.source_b);
            const bool left = d.rule == Rule::cancel_left;
            const std::size_t kept_order = left ? su.left_order : su.right_order;
            const std::size_t kept_order_v = left ? sv.left_order : sv.right_order;
            if (kept_order != kept_order_v ||
                !ds[kept_order].same(left ? su.left : su.right, left ? sv.left : sv.right)) {
                return fail(idx, "cancelled factors are not equal");
            }
            const std::size_t other_order = left ? su.right_order : su.left_order;
            if (d.order != other_order || !same_pair(left ? su.right : su.left, left ? sv.right : sv.left, d.a, d.b)) {
                return fail(idx, "merged pair is not the remaining factors");
            }
            break;
        }
        }
        if (!ds[d.order].unite(d.a, d.b)) return fail(idx, "logged merge was not effective");
    }
    for (std::size_t m = 0; m <= st.max_order(); ++m) {
        for (Label l = 1; l <= ds[m].size(); ++l) {
            if (ds[m].find(l) != st.find(m, l)) return fail(log.size(), "replayed partition differs at order " + std::to_string(m));
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Classnumber formulas

/// h^A_{n+k} = S_{n+k} - c_{n+k+1, n+1}.
inline BigInt h_formula_a(std::size_t n, std::size_t k) { return catalan(n + k) - ballot(n + k + 1, n + 1); }

/// h^B_{n+k} = S_{n+k} - 2^k.
inline BigInt h_formula_b(std::size_t n, std::size_t k) { return catalan(n + k) - pow2(k); }

/// Sample formula for order-4 identities: S_m - 2(4^{m-3}-1)/3 + (m-2)(m-3)/2.
inline BigInt order4_sample_formula(std::size_t m) {
    BigInt p = 1;
    for (std::size_t i = 3; i < m; ++i) p *= 4;
    return catalan(m) - 2 * (p - 1) / 3 + BigInt((m - 2) * (m - 3) / 2);
}

// ---------------------------------------------------------------------------
// Classification

enum class Verdict { formally_reducible, semantically_reducible, essential_up_to };

struct Classification {
    Verdict verdict = Verdict::essential_up_to;
    std::size_t max_order = 0;
    std::optional<Reduction> reduction;

    std::string to_string() const {
        switch (verdict) {
        case Verdict::formally_reducible: return "formally-reducible";
        case Verdict::semantically_reducible: return "semantically-reducible";
        case Verdict::essential_up_to: return "essential-up-to " + std::to_string(max_order);
        }
        return "?";
    }
};

inline Classification classify_identity(const TableauSet& set, std::size_t n, std::pair<Label, Label> pair,
                                        std::size_t max_order) {
    IdentitySpec spec(n, {pair});
    spec.validate(set);
    const Catalog& cat = set.catalog(n);
    if (delta_oracle(cat.term(pair.first), cat.term(pair.second), TableauMode::ab)) {
        return {Verdict::formally_reducible, max_order, std::nullopt};
    }
    ClosureConfig cfg{max_order, TableauMode::ab, true, true};
    const ClosureState st = close(set, spec, cfg);
    if (st.reduction()) return {Verdict::semantically_reducible, max_order, st.reduction()};
    return {Verdict::essential_up_to, max_order, std::nullopt};
}

// ---------------------------------------------------------------------------
// Class algebra W

struct ClassRef {
    std::size_t order = 0;
    Label rep = 0;

    friend bool operator==(const ClassRef&, const ClassRef&) = default;
};

inline ClassRef class_of(const ClosureState& st, std::size_t order, Label label) {
    return {order, st.find(order, label)};
}

/// W(P, Q): the class of V(rep P, rep Q).
inline ClassRef compose_classes(const ClosureState& st, const ClassRef& p, const ClassRef& q) {
    const std::size_t n = p.order + q.order + 1;
    if (n > st.max_order()) {
        throw OrderOverflow("class product order " + std::to_string(n) + " exceeds closure order " +
                            std::to_string(st.max_order()));
    }
    const Label l = st.tableaux().compose(p.order, p.rep, q.order, q.rep);
    return class_of(st, n, l);
}

struct WellDefinedReport {
    bool ok = true;
    std::size_t class_pairs = 0;
    std::size_t representative_pairs = 0;
    std::string failure;
};

/// Checks that V(a, b) lands in one class for every choice of representatives,
/// over all orders with p+q+1 <= limit.
inline WellDefinedReport check_w_well_defined(const ClosureState& st, std::size_t limit) {
    WellDefinedReport rep;
    limit = std::min(limit, st.max_order());
    for (std::size_t n = 1; n <= limit; ++n) {
        for (std::size_t p = 0; p + 1 <= n; ++p) {
            const std::size_t q = n - 1 - p;
            std::map<std::pair<Label, Label>, Label> image;
            const std::size_t sp = st.tableaux().catalog(p).size();
            const std::size_t sq = st.tableaux().catalog(q).size();
            for (Label a = 1; a <= sp; ++a) {
                for (Label b = 1; b <= sq; ++b) {
                    ++rep.representative_pairs;
                    const Label target = st.find(n, st.tableaux().compose(p, a, q, b));
                    auto [it, inserted] = image.emplace(std::make_pair(st.find(p, a), st.find(q, b)), target);
                    if (!inserted && it->second != target && rep.ok) {
                        rep.ok = false;
                        rep.failure = "orders " + std::to_string(p) + "," + std::to_string(q) + ": representatives " +
                                      std::to_string(a) + "," + std::to_string(b) + " leave the class of " +
                                      std::to_string(it->second);
                    }
                }
            }
            rep.class_pairs += image.size();
        }
    }
    return rep;
}

/// Evaluates a tree shape in the class algebra, substituting the argument
/// classes for its leaves from left to right.
inline ClassRef evaluate_shape(const ClosureState& st, const Term& shape, const std::vector<ClassRef>& args) {
    if (args.size() != shape.leaf_count()) {
        throw IndexOutOfRange("shape has " + std::to_string(shape.leaf_count()) + " leaves but " +
                              std::to_string(args.size()) + " arguments were given");
    }
    std::size_t next = 0;
    auto go = [&](auto&& self, const Term& t) -> ClassRef {
        if (t.is_leaf()) return args[next++];
        const ClassRef l = self(self, t.left());
        const ClassRef r = self(self, t.right());
        return compose_classes(st, l, r);
    };
    return go(go, shape);
}

struct ShapeIdentityReport {
    bool ok = true;
    std::size_t tuples = 0;
};

/// For every tuple of argument classes that fits under the closure order,
/// both sides of every spec pair evaluate to the same class.
inline ShapeIdentityReport check_w_satisfies_spec(const ClosureState& st) {
    ShapeIdentityReport rep;
    const std::size_t n = st.spec().order;
    const std::size_t budget = st.max_order() - n;
    std::vector<std::vector<ClassRef>> classes_by_order(budget + 1);
    for (std::size_t m = 0; m <= budget; ++m) {
        for (const auto& c : st.classes(m)) classes_by_order[m].push_back({m, c.front()});
    }
    const Catalog& cat = st.tableaux().catalog(n);
    std::vector<ClassRef> args(n + 1);
    auto recurse = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
        if (pos == args.size()) {
            ++rep.tuples;
            for (auto [i, j] : st.spec().pairs) {
                if (!(evaluate_shape(st, cat.term(i), args) == evaluate_shape(st, cat.term(j), args))) rep.ok = false;
            }
            return;
        }
        for (std::size_t m = 0; used + m <= budget; ++m) {
            for (const ClassRef& c : classes_by_order[m]) {
                args[pos] = c;
                self(self, pos + 1, used + m);
            }
        }
    };
    recurse(recurse, 0, 0);
    return rep;
}

// ---------------------------------------------------------------------------
// Cancellation consequences

/// (n-k+1) S_{n-k} S_k (S_k - 1) / 2.
inline BigInt implication_pairs_formula(std::size_t n, std::size_t k) {
    const BigInt sk = catalan(k);
    return BigInt(n - k + 1) * catalan(n - k) * sk * (sk - 1) / 2;
}

struct ImplicationPairs {
    std::size_t count = 0;
    std::vector<std::pair<Label, Label>> pairs;
};

/// Unordered pairs at order n whose cancellation chain passes through two
/// distinct iterates of order k.
inline ImplicationPairs implication_pairs(const TableauSet& set, std::size_t n, std::size_t k) {
    if (k < 2 || k + 1 > n) throw IndexOutOfRange("implication pairs need 2 <= k <= n-1");
    ImplicationPairs out;
    const std::size_t size = set.catalog(n).size();
    for (Label i = 1; i <= size; ++i) {
        for (Label j = i + 1; j <= size; ++j) {
            const auto chain = cancellation_chain(set, n, i, j);
            const bool hits = std::any_of(chain.begin(), chain.end(), [&](const ChainStep& s) { return s.order == k; });
            if (hits) out.pairs.emplace_back(i, j);
        }
    }
    out.count = out.pairs.size();
    return out;
}

struct UnicityBounds {
    bool applicable = false;
    std::size_t classnumber = 0;
    BigInt lower_bound;
    std::size_t min_class_size = 0;
    bool holds = true;
};

/// h_n >= S_{n-1} and a class of at most 3 iterates at the defining order.
/// Only meaningful when the closure derived nothing below order n.
inline UnicityBounds unicity_bounds_check(const ClosureState& st) {
    UnicityBounds out;
    const std::size_t n = st.spec().order;
    out.applicable = st.config().unicity && !st.reduction();
    out.classnumber = st.classnumber(n);
    out.lower_bound = catalan(n - 1);
    out.min_class_size = st.tableaux().catalog(n).size();
    for (const auto& c : st.classes(n)) out.min_class_size = std::min(out.min_class_size, c.size());
    if (out.applicable) out.holds = BigInt(out.classnumber) >= out.lower_bound && out.min_class_size <= 3;
    return out;
}

/// Column pairs (V(J,x), V(x,J)) of B_n, normalized.
inline std::vector<std::pair<Label, Label>> b_column_pairs(const TableauSet& set, std::size_t n) {
    const TableauB& b = set.b(n);
    std::vector<std::pair<Label, Label>> out;
    for (std::size_t i = 0; i < b.rows[0].size(); ++i) {
        out.emplace_back(std::min(b.rows[0][i], b.rows[1][i]), std::max(b.rows[0][i], b.rows[1][i]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct PairVerdict {
    std::pair<Label, Label> pair;
    bool column = false;
    Classification verdict;
};

/// Classifies the B_n column pairs and every other formally irreducible pair.
inline std::vector<PairVerdict> essential_survey(const TableauSet& set, std::size_t n, std::size_t max_order) {
    const auto columns = b_column_pairs(set, n);
    std::vector<PairVerdict> out;
    for (auto p : irreducible_pairs(incidence_matrix(set, n, TableauMode::ab))) {
        const bool column = std::binary_search(columns.begin(), columns.end(), p);
        out.push_back({p, column, classify_identity(set, n, p, max_order)});
    }
    for (auto p : columns) {
        const bool listed = std::any_of(out.begin(), out.end(), [&](const PairVerdict& v) { return v.pair == p; });
        if (!listed) out.push_back({p, true, classify_identity(set, n, p, max_order)});
    }
    std::sort(out.begin(), out.end(), [](const PairVerdict& x, const PairVerdict& y) { return x.pair < y.pair; });
    return out;
}

struct ClassnumberRow {
    std::pair<Label, Label> pair;
    std::vector<std::size_t> h;
    std::vector<std::size_t> singletons;
};

/// h_n..h_N and singleton counts for every single identity at order n, using
/// both tableaux and no cancellation.
inline std::vector<ClassnumberRow> classnumber_table(const TableauSet& set, std::size_t n, std::size_t max_order) {
    std::vector<ClassnumberRow> out;
    const std::size_t size = set.catalog(n).size();
    for (Label i = 1; i <= size; ++i) {
        for (Label j = i + 1; j <= size; ++j) {
            const ClosureState st = close(set, IdentitySpec(n, {{i, j}}), {max_order, TableauMode::ab, false, false});
            ClassnumberRow row{{i, j}, {}, {}};
            for (std::size_t m = n; m <= max_order; ++m) {
                row.h.push_back(st.classnumber(m));
                row.singletons.push_back(st.singletons(m));
            }
            out.push_back(std::move(row));
        }
    }
    return out;
}

} // namespace iterforge
