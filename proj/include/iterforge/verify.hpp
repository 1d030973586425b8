#pragma once

#include "iterforge/catalan.hpp"
#include "iterforge/incidence.hpp"
#include "iterforge/polynomial.hpp"
#include "iterforge/report.hpp"
#include "iterforge/semantics.hpp"
#include "iterforge/series.hpp"
#include "iterforge/skein.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace iterforge {

enum class Status { pass, fail, report_only, skipped };

inline std::string to_string(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::report_only: return "report-only";
    case Status::skipped: return "skipped";
    }
    return "?";
}

struct VerifyEntry {
    std::string id;
    std::string anchor;
    Status status = Status::skipped;
    std::string expected;
    std::string computed;
};

struct VerifyReport {
    std::size_t max_order = 0;
    std::vector<VerifyEntry> entries;

    bool ok() const {
        return std::none_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.status == Status::fail; });
    }

    std::size_t count(Status s) const {
        return static_cast<std::size_t>(
            std::count_if(entries.begin(), entries.end(), [&](const VerifyEntry& e) { return e.status == s; }));
    }

    Json to_json() const {
        Json checks = Json::array();
        for (const auto& e : entries) {
            checks.push_back({{"id", e.id},
                              {"anchor", e.anchor},
                              {"status", to_string(e.status)},
                              {"expected", e.expected},
                              {"computed", e.computed}});
        }
        return {{"max_order", max_order}, {"ok", ok()}, {"checks", checks}};
    }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& e : entries) {
            out << '[' << to_string(e.status) << "] " << e.id << ' ' << e.anchor << '\n';
            out << "    expected: " << e.expected << '\n';
            out << "    computed: " << e.computed << '\n';
        }
        out << "passed " << count(Status::pass) << ", failed " << count(Status::fail) << ", report-only "
            << count(Status::report_only) << ", skipped " << count(Status::skipped) << '\n';
        return out.str();
    }

    std::string to_csv() const {
        auto quote = [](const std::string& s) {
            std::string q = "\"";
            for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            return q + "\"";
        };
        std::ostringstream out;
        out << "id,anchor,status,expected,computed\n";
        for (const auto& e : entries) {
            out << e.id << ',' << e.anchor << ',' << to_string(e.status) << ',' << quote(e.expected) << ','
                << quote(e.computed) << '\n';
        }
        return out.str();
    }
};

namespace verify_detail {

template <class Seq>
std::string join(const Seq& seq, const std::string& sep = " ") {
    std::ostringstream out;
    bool first = true;
    for (const auto& v : seq) {
        out << (first ? "" : sep) << v;
        first = false;
    }
    return out.str();
}

inline std::string grid_str(const Grid& g) {
    std::vector<std::string> rows;
    for (const auto& r : g) rows.push_back(join(r));
    return join(rows, " / ");
}

inline Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

using Family = std::set<std::set<Label>>;

inline Family family_of(const std::vector<std::vector<Label>>& classes) {
    Family f;
    for (const auto& c : classes) f.insert(std::set<Label>(c.begin(), c.end()));
    return f;
}

inline std::string family_str(const Family& f) {
    std::vector<std::vector<Label>> v;
    for (const auto& c : f) v.emplace_back(c.begin(), c.end());
    std::sort(v.begin(), v.end());
    return classes_text(v);
}

/// One-based Fibonacci numbers with F_1 = 1, F_2 = 2, so that F_3 = 3.
inline std::size_t fib_shifted(std::size_t n) {
    std::size_t a = 1, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

inline const std::vector<std::vector<long long>>& ballot_golden() {
    static const std::vector<std::vector<long long>> rows = {
        {1},
        {1, 1},
        {2, 2, 1},
        {5, 5, 3, 1},
        {14, 14, 9, 4, 1},
        {42, 42, 28, 14, 5, 1},
        {132, 132, 90, 48, 20, 6, 1},
        {429, 429, 297, 165, 75, 27, 7, 1},
        {1430, 1430, 1001, 572, 275, 110, 35, 8, 1},
        {4862, 4862, 3432, 2002, 1001, 429, 154, 44, 9, 1},
    };
    return rows;
}

inline const std::map<std::size_t, Grid>& a_golden() {
    static const std::map<std::size_t, Grid> g = {
        {1, {{1}}},
        {2, {{1}, {2}}},
        {3, {{1, 2}, {3, 4}, {2, 5}}},
        {4, {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}, {3, 4, 11, 12, 13}, {2, 5, 7, 10, 14}}},
        {5,
         {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14},
          {15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28},
          {6, 7, 8, 9, 10, 29, 30, 31, 32, 33, 34, 35, 36, 37},
          {3, 4, 11, 12, 13, 17, 18, 25, 26, 27, 38, 39, 40, 41},
          {2, 5, 7, 10, 14, 16, 19, 21, 24, 28, 30, 33, 37, 42}}},
    };
    return g;
}

inline const std::map<std::size_t, Grid>& b_golden() {
    static const std::map<std::size_t, Grid> g = {
        {1, {{1}, {1}}},
        {2, {{1}, {2}}},
        {3, {{1, 3}, {4, 5}}},
        {4, {{1, 3, 6, 8, 11}, {9, 10, 12, 13, 14}}},
        {5,
         {{1, 3, 6, 8, 11, 15, 17, 20, 22, 25, 29, 31, 34, 38},
          {23, 24, 26, 27, 28, 32, 33, 35, 36, 37, 39, 40, 41, 42}}},
    };
    return g;
}

/// Row i lists the j with delta(i, j) = 1.
inline const std::vector<std::set<Label>>& incidence3_golden() {
    static const std::vector<std::set<Label>> rows = {{1, 2}, {1, 2, 5}, {3, 4}, {3, 4}, {2, 5}};
    return rows;
}

inline const std::vector<std::set<Label>>& incidence4_golden() {
    static const std::set<Label> r1 = {1, 2, 3, 4, 5}, r2 = {1, 2, 3, 4, 5, 7, 10, 14}, r3 = {1, 2, 3, 4, 5, 11, 12, 13},
                                 r6 = {6, 7, 8, 9, 10}, r7 = {2, 5, 6, 7, 8, 9, 10, 14}, r11 = {3, 4, 11, 12, 13},
                                 r14 = {2, 5, 7, 10, 14};
    static const std::vector<std::set<Label>> rows = {r1, r2, r3, r3, r2, r6, r7, r6, r6, r7, r11, r11, r11, r14};
    return rows;
}

inline std::vector<std::set<Label>> matrix_sets(const IncidenceMatrix& m) {
    std::vector<std::set<Label>> out(m.size());
    for (Label i = 1; i <= m.size(); ++i) {
        for (Label j = 1; j <= m.size(); ++j) {
            if (m.delta(i, j)) out[i - 1].insert(j);
        }
    }
    return out;
}

} // namespace verify_detail

/**
 * Replays the acceptance checks at the given order cap. Checks that need a
 * higher order than available are skipped; checks with a larger natural scope
 * are clipped to the cap.
 */
inline VerifyReport run_verify(const TableauSet& set, std::size_t max_order) {
    using namespace verify_detail;
    max_order = std::min(max_order, set.max_order());
    VerifyReport report;
    report.max_order = max_order;
    const std::size_t N = max_order;
    const std::size_t closure_cap = std::min<std::size_t>(N, 7);

    auto add = [&](std::string id, std::string anchor, std::size_t needs, const std::function<VerifyEntry()>& body) {
        if (N < needs) {
            report.entries.push_back({std::move(id), std::move(anchor), Status::skipped,
                                      "needs order " + std::to_string(needs), "not run"});
            return;
        }
        VerifyEntry e = body();
        e.id = std::move(id);
        e.anchor = std::move(anchor);
        report.entries.push_back(std::move(e));
    };

    add("C01", "catalan-ballot-table", 0, [&] {
        const auto& golden = ballot_golden();
        const auto recursion = ballot_triangle(golden.size());
        bool ok = true;
        for (std::size_t n = 1; n <= golden.size(); ++n) {
            BigInt row_sum = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                ok = ok && ballot(n, j) == golden[n - 1][j - 1] && recursion[n - 1][j - 1] == golden[n - 1][j - 1];
                row_sum += golden[n - 1][j - 1];
            }
            ok = ok && catalan(n) == row_sum && catalan(n - 1) == golden[n - 1][0];
        }
        ok = ok && catalan(0) == 1 && catalan(4) == 14 && catalan(9) == 4862;
        std::vector<std::string> row10;
        for (std::size_t j = 1; j <= 10; ++j) row10.push_back(to_string(ballot(10, j)));
        return VerifyEntry{"", "", verdict(ok), "S_0..S_10 and triangle rows 1..10; row 10 = 4862 4862 3432 2002 1001 429 154 44 9 1",
                           "row 10 = " + join(row10) + "; S_10 = " + to_string(catalan(10))};
    });

    add("C02", "tableau-goldens", 5, [&] {
        bool ok = true;
        std::string bad;
        for (const auto& [n, g] : a_golden()) {
            if (set.a(n).rows != g) ok = false, bad += " A" + std::to_string(n);
        }
        for (const auto& [n, g] : b_golden()) {
            const Grid b = tableau_lines(set, n, TableauMode::b);
            if (b != g) ok = false, bad += " B" + std::to_string(n);
        }
        for (std::size_t n = 3; n <= 5; ++n) {
            Grid expected = a_golden().at(n);
            for (const auto& r : b_golden().at(n)) expected.push_back(r);
            if (tableau_lines(set, n, TableauMode::ab) != expected) ok = false, bad += " AB" + std::to_string(n);
        }
        return VerifyEntry{"", "", verdict(ok), "A_1..A_5, B_1..B_5, A_n+B_n for n=3..5 cell for cell",
                           ok ? "all grids equal; A_4 = " + grid_str(set.a(4).rows) : "mismatch in" + bad};
    });

    add("C03", "incidence-n3-n4", 4, [&] {
        const auto m3 = incidence_matrix(set, 3, TableauMode::a);
        const auto m4 = incidence_matrix(set, 4, TableauMode::a);
        bool ok = matrix_sets(m3) == incidence3_golden() && matrix_sets(m4) == incidence4_golden();
        ok = ok && count_reducible(m3) == 11 && count_reducible(m4) == 88;
        std::vector<std::size_t> sums3;
        for (Label i = 1; i <= 5; ++i) sums3.push_back(m3.row_sum(i));
        bool sums_by_mult = true;
        for (Label i = 1; i <= 14; ++i) {
            const std::size_t k = multiplicity(set.a(4), i);
            sums_by_mult = sums_by_mult && m4.row_sum(i) == (k == 1 ? 5u : 8u);
        }
        ok = ok && sums_by_mult && sums3 == std::vector<std::size_t>{2, 3, 2, 2, 2};
        return VerifyEntry{"", "", verdict(ok), "I_3 = 11 with row sums 2 3 2 2 2; I_4 = 88 with row sums 5/8 for multiplicity 1/2",
                           "I_3 = " + to_string(count_reducible(m3)) + " sums " + join(sums3) +
                               "; I_4 = " + to_string(count_reducible(m4)) +
                               (sums_by_mult ? "; row sums follow multiplicity" : "; row sums deviate")};
    });

    add("C04", "reducible-count-closed-form", 3, [&] {
        const std::size_t top = std::min<std::size_t>(N, 9);
        bool ok = true;
        std::vector<std::string> vals;
        for (std::size_t n = 3; n <= top; ++n) {
            const BigInt brute = count_reducible(incidence_matrix(set, n, TableauMode::a));
            ok = ok && brute == i_n_formula(n);
            vals.push_back(to_string(brute));
        }
        return VerifyEntry{"", "", verdict(ok), "matrix count = closed form for n = 3.." + std::to_string(top),
                           "I_3.. = " + join(vals)};
    });

    add("C05", "row-sum-by-multiplicity", 1, [&] {
        const std::size_t top = std::min<std::size_t>(N, 8);
        bool ok = true;
        std::size_t rows = 0;
        for (std::size_t n = 1; n <= top; ++n) {
            const auto m = incidence_matrix(set, n, TableauMode::a);
            const auto counts = occurrence_counts(set.a(n).rows, set.catalog(n).size());
            for (Label i = 1; i <= m.size(); ++i, ++rows) ok = ok && BigInt(m.row_sum(i)) == row_sum_value(n, counts[i - 1]);
        }
        return VerifyEntry{"", "", verdict(ok), "every row sum equals the multiplicity formula, n <= " + std::to_string(top),
                           std::to_string(rows) + " rows checked"};
    });

    add("C06", "multiplicity-counts", 1, [&] {
        const std::size_t top = std::min<std::size_t>(N, 9);
        bool ok = true;
        for (std::size_t n = 1; n <= top; ++n) {
            const auto hist = multiplicity_histogram(set, n);
            std::size_t covered = 0;
            for (std::size_t k = 1; 2 * k - 2 <= n - 1; ++k) {
                auto it = hist.find(k);
                const std::size_t observed = it == hist.end() ? 0 : it->second;
                ok = ok && multiplicity_count_formula(n, k) == observed;
                covered += observed;
            }
            ok = ok && covered == set.catalog(n).size();
        }
        bool identity = true;
        for (std::size_t n = 1; n <= 14; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                const auto [lhs, rhs] = multiplicity_binomial_identity(n, k);
                identity = identity && lhs == rhs;
            }
        }
        std::vector<std::string> h4;
        for (const auto& [k, c] : multiplicity_histogram(set, 4)) h4.push_back(std::to_string(k) + ":" + std::to_string(c));
        return VerifyEntry{"", "", verdict(ok && identity),
                           "histograms = T_nk for n <= " + std::to_string(top) + "; binomial identity for n <= 14",
                           "n=4 histogram {" + join(h4, ", ") + "}; identity " + (identity ? "holds" : "fails")};
    });

    add("C07", "reducible-fraction-trend", 3, [&] {
        const auto rows = frequency_report(set, 8);
        bool ok = true;
        std::vector<std::string> vals;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].n >= 5) ok = ok && rows[i].one_minus_ratio < rows[i - 1].one_minus_ratio;
            std::ostringstream v;
            v.precision(4);
            v << "n=" << rows[i].n << ":" << to_double(rows[i].one_minus_ratio) << "/" << rows[i].exp_minus_n_over_16;
            vals.push_back(v.str());
        }
        ok = ok && rows[0].ratio == Rational(11, 25) && rows[1].ratio == Rational(22, 49);
        return VerifyEntry{"", "", verdict(ok), "1 - I_n/S_n^2 strictly decreasing for 4 <= n <= 8",
                           "1-ratio / e^(-n/16): " + join(vals, " ")};
    });

    add("C08", "closure-goldens", 5, [&] {
        const Family a10 = {{1}, {2, 4, 12}, {3}, {5, 10}, {6}, {7, 9}, {8}, {11}, {13}, {14}};
        const Family ab8 = {{1}, {2, 4, 12}, {3, 8}, {5, 10, 13}, {6}, {7, 9}, {11}, {14}};
        const Family o4 = {{1, 5, 11}, {2, 9, 14}, {3, 13}, {4}, {6, 10}, {7}, {8}, {12}};
        const Family o5 = {{1, 5, 8, 11, 20, 24, 29, 33, 36, 40, 42}, {2, 9, 14, 30}, {3, 13, 22, 38}, {4, 26, 41},
                           {6, 10, 34}, {7, 32, 37}, {12}, {15, 19, 25}, {16, 23, 28, 39}, {17, 27}, {18}, {21}, {31}, {35}};
        const auto sa = close(set, IdentitySpec(3, {{2, 4}}), {4, TableauMode::a, false, false});
        const auto sab = close(set, IdentitySpec(3, {{2, 4}}), {4, TableauMode::ab, false, false});
        const auto s15 = close(set, IdentitySpec(3, {{1, 5}}), {5, TableauMode::ab, false, false});
        const bool ok = family_of(sa.classes(4)) == a10 && family_of(sab.classes(4)) == ab8 &&
                        family_of(s15.classes(4)) == o4 && family_of(s15.classes(5)) == o5;
        return VerifyEntry{"", "", verdict(ok), "2=4: 10 classes (A), 8 classes (AB); 1=5: 8 classes at order 4, 14 at order 5",
                           "h = " + std::to_string(sa.classnumber(4)) + ", " + std::to_string(sab.classnumber(4)) + ", " +
                               std::to_string(s15.classnumber(4)) + ", " + std::to_string(s15.classnumber(5)) +
                               "; 1=5 order 5: " + classes_text(s15.classes(5))};
    });

    add("C09", "classnumber-formulas", 4, [&] {
        const std::size_t top = std::min<std::size_t>(N, 6);
        bool ok = true;
        std::vector<std::string> ha, hb;
        for (Label i = 1; i <= 5; ++i) {
            for (Label j = i + 1; j <= 5; ++j) {
                const auto sa = close(set, IdentitySpec(3, {{i, j}}), {top, TableauMode::a, false, false});
                const auto sb = close(set, IdentitySpec(3, {{i, j}}), {top, TableauMode::b, false, false});
                for (std::size_t k = 0; 3 + k <= top; ++k) {
                    ok = ok && BigInt(sa.classnumber(3 + k)) == h_formula_a(3, k) &&
                         BigInt(sb.classnumber(3 + k)) == h_formula_b(3, k);
                }
            }
        }
        for (std::size_t k = 0; 3 + k <= top; ++k) {
            ha.push_back(to_string(h_formula_a(3, k)));
            hb.push_back(to_string(h_formula_b(3, k)));
        }
        return VerifyEntry{"", "", verdict(ok),
                           "all ten order-3 pairs: h^A = S - c, h^B = S - 2^k up to order " + std::to_string(top),
                           "h^A = " + join(ha) + "; h^B = " + join(hb)};
    });

    const auto table = N >= 5 ? classnumber_table(set, 3, closure_cap) : std::vector<ClassnumberRow>{};

    add("C10", "order3-classnumber-table", 5, [&] {
        const std::set<std::pair<Label, Label>> doubling = {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
        const std::set<std::pair<Label, Label>> fibonacci = {{1, 2}, {1, 3}, {2, 5}, {4, 5}};
        bool ok = table.size() == 10;
        std::vector<std::string> rows;
        for (const auto& row : table) {
            for (std::size_t n = 3; n <= 5; ++n) {
                const std::size_t h = row.h[n - 3];
                const std::size_t s = row.singletons[n - 3];
                const std::size_t expected_h = doubling.count(row.pair) ? (std::size_t{1} << (n - 1)) : std::vector<std::size_t>{4, 8, 14}[n - 3];
                const std::size_t expected_s = fibonacci.count(row.pair) ? fib_shifted(n) : n;
                ok = ok && h == expected_h && s == expected_s;
            }
            rows.push_back(std::to_string(row.pair.first) + "=" + std::to_string(row.pair.second) + ":" +
                           join(std::vector<std::size_t>(row.h.begin(), row.h.begin() + 3), ",") + "/" +
                           join(std::vector<std::size_t>(row.singletons.begin(), row.singletons.begin() + 3), ","));
        }
        return VerifyEntry{"", "", verdict(ok), "h_3..h_5 and singletons per the order-3 table",
                           join(rows, " ")};
    });

    add("C11", "order3-classification", 7, [&] {
        bool ok = true;
        std::string detail;
        for (auto p : std::vector<std::pair<Label, Label>>{{1, 5}, {2, 3}, {2, 4}}) {
            const auto c = classify_identity(set, 3, p, 7);
            ok = ok && c.verdict == Verdict::semantically_reducible && c.reduction && !c.reduction->witnesses.empty();
            detail += std::to_string(p.first) + "=" + std::to_string(p.second) + ":" + c.to_string() + " ";
            if (p == std::pair<Label, Label>{1, 5} && c.reduction) {
                const std::vector<ChainStep> want = {{5, 8, 11}, {4, 4, 5}, {2, 1, 2}};
                const bool found = std::any_of(c.reduction->witnesses.begin(), c.reduction->witnesses.end(),
                                               [&](const FormalWitness& w) { return w.chain == want; });
                ok = ok && found;
                detail += found ? "[chain 8~11 -> 4~5 -> 1~2] " : "[chain 8~11 missing] ";
            }
        }
        for (auto p : std::vector<std::pair<Label, Label>>{{1, 4}, {3, 5}}) {
            const auto c = classify_identity(set, 3, p, 7);
            ok = ok && c.verdict == Verdict::essential_up_to && c.max_order == 7;
            detail += std::to_string(p.first) + "=" + std::to_string(p.second) + ":" + c.to_string() + " ";
        }
        return VerifyEntry{"", "", verdict(ok),
                           "1=5, 2=3, 2=4 semantically reducible (1=5 via order-5 8~11); 1=4, 3=5 essential up to 7",
                           detail};
    });

    add("C12", "implication-pairs", 5, [&] {
        bool ok = true;
        std::vector<std::string> vals;
        for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}, {5, 4}}) {
            const auto ip = implication_pairs(set, n, k);
            ok = ok && implication_pairs_formula(n, k) == ip.count;
            vals.push_back("(" + std::to_string(n) + "," + std::to_string(k) + ")=" + std::to_string(ip.count));
        }
        const auto p52 = implication_pairs(set, 5, 2);
        const bool has = std::find(p52.pairs.begin(), p52.pairs.end(), std::pair<Label, Label>{8, 11}) != p52.pairs.end();
        return VerifyEntry{"", "", verdict(ok && has), "counts (n-k+1) S_{n-k} S_k (S_k-1)/2; (8,11) among the (5,2) pairs",
                           join(vals) + (has ? "; (8,11) listed" : "; (8,11) absent")};
    });

    add("C13", "class-algebra", 5, [&] {
        const auto st = close(set, IdentitySpec(3, {{2, 4}}), {5, TableauMode::ab, false, false});
        const auto w = check_w_well_defined(st, 5);
        const auto shapes = check_w_satisfies_spec(st);
        return VerifyEntry{"", "", verdict(w.ok && shapes.ok), "W independent of representatives for p+q+1 <= 5 under 2=4",
                           std::to_string(w.representative_pairs) + " representative pairs over " +
                               std::to_string(w.class_pairs) + " class pairs" + (w.ok ? "" : ": " + w.failure) + "; " +
                               std::to_string(shapes.tuples) + " argument tuples satisfy 2=4"};
    });

    add("C14", "skein-polynomials", 4, [&] {
        const std::vector<std::pair<std::string, std::string>> golden = {
            {"x", "1"},
            {"Vxx", "a+b"},
            {"VVxxx", "a^2+ab+b"},
            {"VxVxx", "a+ab+b^2"},
            {"VVVxxxx", "a^3+a^2b+ab+b"},
            {"VVxxVxx", "a^2+2ab+b^2"},
            {"VVxVxxx", "a^2+a^2b+ab^2+b"},
            {"VxVVxxx", "a+a^2b+ab^2+b^2"},
            {"VxVxVxx", "a+ab+ab^2+b^3"},
        };
        bool ok = true;
        for (const auto& [w, p] : golden) ok = ok && skein(parse_word(w)) == BiPoly::parse(p);
        const BiPoly shared = BiPoly::parse("a^2+ab+a^2b+ab^2+b^2");
        const auto groups = collision_groups(set.catalog(4));
        const bool pair47 = std::any_of(groups.begin(), groups.end(), [&](const CollisionGroup& g) {
            return g.labels == std::vector<Label>{4, 7} && g.poly == shared;
        });
        const std::size_t ptop = std::min<std::size_t>(N, 8);
        bool values = true;
        for (std::size_t n = 0; n <= ptop; ++n) {
            for (const Term& t : set.catalog(n).terms()) {
                const BiPoly p = skein(t);
                values = values && p.evaluate(1, 1) == n + 1 && p.substitute_b_one_minus_a() == BiPoly::constant(1) &&
                         (BiPoly::parse("a+b-1") * skein_q(t)) + BiPoly::constant(1) == p;
            }
        }
        const std::size_t rtop = std::min<std::size_t>(N, 7);
        bool rec = true;
        for (std::size_t n = 1; n <= rtop; ++n) rec = rec && np_recursion_check(set, n).ok;
        return VerifyEntry{"", "", verdict(ok && pair47 && values && rec),
                           "table through order 3; P(J_4)=P(J_7) with N=2; P(1,1)=n+1 and P|b=1-a = 1 to order " +
                               std::to_string(ptop) + "; N_P recursion to order " + std::to_string(rtop),
                           std::string(ok ? "table ok" : "table mismatch") + (pair47 ? "; {4,7} share " + shared.to_string() : "; {4,7} not grouped") +
                               (values ? "; evaluations ok" : "; evaluation failure") + (rec ? "; recursion ok" : "; recursion failure")};
    });

    add("C15", "generalized-catalan", 0, [&] {
        bool ok = true;
        for (std::size_t a : {2, 3, 4}) {
            const auto phi = series_mixed({a}, 12);
            for (std::size_t n = 0; n <= 12; ++n) ok = ok && phi[n] == catalan_general(a, n);
        }
        // Plane trees whose nodes have arity 2 or 3, counted by root arity.
        std::vector<BigInt> trees(8, 0);
        trees[0] = 1;
        auto forests = [&](std::size_t k, std::size_t nodes) {
            std::vector<BigInt> f(nodes + 1, 0);
            f[0] = 1;
            for (std::size_t c = 0; c < k; ++c) {
                std::vector<BigInt> g(nodes + 1, 0);
                for (std::size_t x = 0; x <= nodes; ++x) {
                    for (std::size_t y = 0; x + y <= nodes; ++y) g[x + y] += f[x] * trees[y];
                }
                f = g;
            }
            return f[nodes];
        };
        for (std::size_t n = 1; n <= 7; ++n) trees[n] = forests(2, n - 1) + forests(3, n - 1);
        const auto mixed = series_mixed({2, 3}, 7);
        for (std::size_t n = 0; n <= 7; ++n) ok = ok && mixed[n] == trees[n];
        return VerifyEntry{"", "", verdict(ok), "series = closed form for arities 2,3,4 to n=12; {2,3} = tree counts to n=7",
                           "{2,3}: " + join(mixed.coefficients()) + "; a=3,n=3: " + to_string(catalan_general(3, 3))};
    });

    add("C16", "word-language", 5, [&] {
        bool agree = true;
        std::size_t strings = 0;
        for (std::size_t len = 1; len <= 13; ++len) {
            for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
                std::string w(len, 'x');
                for (std::size_t i = 0; i < len; ++i) {
                    if (bits >> i & 1) w[i] = 'V';
                }
                bool parses = true;
                try {
                    parse_word(w);
                } catch (const MalformedWord&) {
                    parses = false;
                }
                agree = agree && parses == validate_word_diophantine(w);
                ++strings;
            }
        }
        const auto code = run_length_encode(set.catalog(5).word(11));
        const bool j11 = code && code->to_string() == "321113" && code->k() == 3;
        return VerifyEntry{"", "", verdict(agree && j11), "validator agrees with parser on all strings up to length 13; J_11 of order 5 = 321113, k=3",
                           std::to_string(strings) + " strings, " + (agree ? "no disagreement" : "disagreement") + "; code " +
                               (code ? code->to_string() + " k=" + std::to_string(code->k()) : "none")};
    });

    add("C17", "unicity-bounds", 4, [&] {
        bool ok = true;
        std::size_t applicable = 0, total = 0;
        for (std::size_t n : {3, 4}) {
            const std::size_t size = set.catalog(n).size();
            for (Label i = 1; i <= size; ++i) {
                for (Label j = i + 1; j <= size; ++j) {
                    const auto st = close(set, IdentitySpec(n, {{i, j}}), {closure_cap, TableauMode::ab, true, false});
                    const auto b = unicity_bounds_check(st);
                    ++total;
                    if (b.applicable) {
                        ++applicable;
                        ok = ok && b.holds;
                    }
                }
            }
        }
        return VerifyEntry{"", "", verdict(ok), "h_n >= S_{n-1} and min class size <= 3 for unicity-consistent single identities of orders 3 and 4",
                           std::to_string(applicable) + " of " + std::to_string(total) + " closures consistent to order " +
                               std::to_string(closure_cap) + ", all within bounds"};
    });

    add("C18", "essential-columns-order3", 7, [&] {
        const auto survey = essential_survey(set, 3, 7);
        std::set<std::pair<Label, Label>> essential, columns;
        std::string detail;
        for (const auto& v : survey) {
            if (v.verdict.verdict == Verdict::essential_up_to) essential.insert(v.pair);
            if (v.column) columns.insert(v.pair);
            detail += std::to_string(v.pair.first) + "=" + std::to_string(v.pair.second) + (v.column ? "*" : "") + ":" +
                      v.verdict.to_string() + " ";
        }
        const std::set<std::pair<Label, Label>> want = {{1, 4}, {3, 5}};
        return VerifyEntry{"", "", verdict(essential == want && columns == want),
                           "B_3 columns (1,4),(3,5) are exactly the essential order-3 identities", detail + "(* = column)"};
    });

    // Report-only entries.
    add("R01", "order3-table-h6-h7", 7, [&] {
        std::vector<std::string> rows;
        for (const auto& row : table) {
            rows.push_back(std::to_string(row.pair.first) + "=" + std::to_string(row.pair.second) + ":" +
                           std::to_string(row.h[3]) + "," + std::to_string(row.h[4]));
        }
        return VerifyEntry{"", "", Status::report_only, "table: 2^{n-1} rows 32,64; 1=5 20,16; 2=3 and 2=4 20,24",
                           "h_6,h_7 " + join(rows)};
    });

    add("R02", "essential-columns-order4", 7, [&] {
        std::vector<std::string> rows;
        for (auto p : b_column_pairs(set, 4)) {
            const auto c = classify_identity(set, 4, p, 7);
            std::string s = std::to_string(p.first) + "=" + std::to_string(p.second) + ":" + c.to_string();
            if (c.reduction) {
                s += " via " + std::to_string(c.reduction->merge.a) + "~" + std::to_string(c.reduction->merge.b) +
                     " at order " + std::to_string(c.reduction->merge.order);
            }
            rows.push_back(s);
        }
        return VerifyEntry{"", "", Status::report_only, "columns (1,9),(3,10),(6,12),(8,13),(11,14); no verdict given",
                           join(rows, "; ")};
    });

    add("R03", "order4-sample-formula", 5, [&] {
        const auto t4 = classnumber_table(set, 4, closure_cap);
        std::vector<std::string> formula;
        for (std::size_t m = 4; m <= closure_cap; ++m) formula.push_back(to_string(order4_sample_formula(m)));
        std::size_t full = 0;
        std::size_t upto6 = 0;
        std::vector<std::string> names;
        bool has_11_14 = false;
        for (const auto& row : t4) {
            bool all = true, first3 = true;
            for (std::size_t m = 4; m <= closure_cap; ++m) {
                const bool eq = BigInt(row.h[m - 4]) == order4_sample_formula(m);
                all = all && eq;
                if (m <= 6) first3 = first3 && eq;
            }
            if (all) {
                ++full;
                names.push_back(std::to_string(row.pair.first) + "=" + std::to_string(row.pair.second));
            }
            upto6 += first3;
            if (row.pair == std::pair<Label, Label>{11, 14}) has_11_14 = first3;
        }
        return VerifyEntry{"", "", Status::report_only, "sample formula " + join(formula) + " said to fit 8 of 10 sampled identities",
                           std::to_string(full) + " of 91 match through order " + std::to_string(closure_cap) +
                               (names.empty() ? "" : " (" + join(names) + ")") + "; " + std::to_string(upto6) +
                               " match through order 6; 11=14 " + (has_11_14 ? "matches" : "does not match") + " through 6"};
    });

    add("R04", "reducible-fraction-table", 3, [&] {
        std::vector<std::string> vals;
        for (const auto& r : frequency_report(set, std::min<std::size_t>(std::max<std::size_t>(N, 3), 9))) {
            std::ostringstream v;
            v.precision(4);
            v << r.n << ":" << to_string(r.ratio) << "~" << to_double(r.ratio);
            vals.push_back(v.str());
        }
        return VerifyEntry{"", "", Status::report_only, "I_n/S_n^2 against 1 - e^(-n/16)", join(vals)};
    });

    add("R05", "catalan-convolution-relations", 0, [&] {
        std::vector<std::string> vals;
        for (std::size_t lambda = 1; lambda <= 6; ++lambda) {
            const auto r = convolution_relation_check(lambda, 30);
            std::vector<std::string> fit;
            for (const auto& x : r.fitted) fit.push_back(to_string(x));
            std::ostringstream v;
            v.precision(4);
            v << "l=" << lambda << ":[" << join(fit, ",") << "]" << (r.fit_matches_general_term ? " general-term" : "")
              << (r.fit_matches_alternate_second ? " alternate-second" : "") << (r.pascal_holds ? " pascal" : " no-pascal")
              << " ratio " << r.ratio << "/" << r.ratio_limit;
            vals.push_back(v.str());
        }
        return VerifyEntry{"", "", Status::report_only, "relation 1 coefficients fitted; relation 2 at n=30; ratio vs (l+1)/2^l",
                           join(vals, "; ")};
    });

    add("R06", "weighted-recurrence", 0, [&] {
        const auto r = weighted_recurrence(2, 1, {1, 1}, 10);
        std::vector<std::string> vals;
        for (const auto& v : r.values) vals.push_back(to_string(v));
        const auto r11 = weighted_recurrence(1, 1, {1}, 4);
        return VerifyEntry{"", "", Status::report_only, "integrality of (n+l) S_n = sum S_s S_t",
                           "k=2,l=1,[1,1]: " + join(vals) + "; non-integral at " + join(r.non_integral, ",") +
                               "; k=1,l=1,[1]: first non-integral n=" +
                               (r11.first_non_integral() ? std::to_string(*r11.first_non_integral()) : std::string("none"))};
    });

    add("R07", "two-identity-classnumbers", 5, [&] {
        const auto st = close(set, IdentitySpec(3, {{1, 4}, {3, 5}}), {closure_cap, TableauMode::ab, false, false});
        return VerifyEntry{"", "", Status::report_only, "1=4 with 3=5: h_3=3, h_4=3, then 1",
                           "h_3.. = " + join(st.classnumbers())};
    });

    add("R08", "aplusb-multiplicities", 2, [&] {
        std::vector<std::string> vals;
        bool all = true;
        for (std::size_t n = 2; n <= std::min<std::size_t>(N, 9); ++n) {
            const auto hist = multiplicity_histogram_aplusb(set, n);
            std::size_t total = 0;
            for (const auto& [k, c] : hist) {
                all = all && t_nk_aplusb(n, k) == c;
                total += k * c;
            }
            for (std::size_t k = 1; k <= n + 2; ++k) {
                if (!hist.count(k)) all = all && t_nk_aplusb(n, k) == 0;
            }
            all = all && total == (n + 2) * set.catalog(n - 1).size();
            if (n == 4) {
                for (const auto& [k, c] : hist) vals.push_back(std::to_string(k) + ":" + std::to_string(c));
            }
        }
        return VerifyEntry{"", "", Status::report_only, "A+B grid histogram against T_nk + 2(T_{n-1,k-1} - T_{n-1,k})",
                           std::string(all ? "formula matches" : "formula deviates") + "; n=4 {" + join(vals, ", ") + "}"};
    });

    return report;
}

} // namespace iterforge
