#pragma once

#include "iterforge/polynomial.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

namespace iterforge {

/// P(x) = 1, P(V(J, J')) = a P(J) + b P(J').
inline BiPoly skein(const Term& t) {
    if (t.is_leaf()) return BiPoly::constant(1);
    return skein(t.left()).shifted(1, 0) + skein(t.right()).shifted(0, 1);
}

/// Q(x) = 0, Q(V(J, J')) = a Q(J) + b Q(J') + 1.
inline BiPoly skein_q(const Term& t) {
    if (t.is_leaf()) return BiPoly{};
    return skein_q(t.left()).shifted(1, 0) + skein_q(t.right()).shifted(0, 1) + BiPoly::constant(1);
}

struct CollisionGroup {
    BiPoly poly;
    std::vector<Label> labels;

    std::size_t multiplicity() const noexcept { return labels.size(); }
};

/// Labels of order n grouped by skein polynomial, listed by smallest label.
inline std::vector<CollisionGroup> collision_groups(const Catalog& catalog) {
    std::map<BiPoly, std::vector<Label>> by_poly;
    for (Label l = 1; l <= catalog.size(); ++l) by_poly[skein(catalog.term(l))].push_back(l);
    std::vector<CollisionGroup> out;
    for (auto& [p, labels] : by_poly) out.push_back({p, std::move(labels)});
    std::sort(out.begin(), out.end(),
              [](const CollisionGroup& x, const CollisionGroup& y) { return x.labels.front() < y.labels.front(); });
    return out;
}

struct NpRecursionEntry {
    BiPoly poly;
    std::size_t observed = 0;
    BigInt predicted;
    std::size_t decompositions = 0;
};

struct NpRecursionReport {
    bool ok = true;
    std::vector<NpRecursionEntry> entries;
};

/**
 * Compares each N_P at order n with sum N_{P_k} N_{P_l} over the ways of
 * writing P = a P_k + b P_l from polynomials of orders k + l + 1 = n.
 */
inline NpRecursionReport np_recursion_check(const TableauSet& set, std::size_t n) {
    std::vector<std::map<BiPoly, std::size_t>> counts(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        for (const auto& g : collision_groups(set.catalog(m))) counts[m][g.poly] = g.multiplicity();
    }
    std::map<BiPoly, std::pair<BigInt, std::size_t>> predicted;
    if (n >= 1) {
        for (std::size_t k = 0; k + 1 <= n; ++k) {
            const std::size_t l = n - 1 - k;
            for (const auto& [pk, nk] : counts[k]) {
                for (const auto& [pl, nl] : counts[l]) {
                    auto& slot = predicted[pk.shifted(1, 0) + pl.shifted(0, 1)];
                    slot.first += BigInt(nk) * nl;
                    ++slot.second;
                }
            }
        }
    } else {
        predicted[BiPoly::constant(1)] = {1, 0};
    }
    NpRecursionReport report;
    for (const auto& [p, observed] : counts[n]) {
        auto it = predicted.find(p);
        NpRecursionEntry e{p, observed, it == predicted.end() ? BigInt(0) : it->second.first,
                           it == predicted.end() ? 0 : it->second.second};
        report.ok = report.ok && e.predicted == observed;
        report.entries.push_back(std::move(e));
    }
    for (const auto& [p, v] : predicted) {
        if (!counts[n].count(p)) report.ok = false;
    }
    return report;
}

} // namespace iterforge
