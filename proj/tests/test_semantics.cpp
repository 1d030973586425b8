#include "iterforge/report.hpp"
#include "iterforge/semantics.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace iterforge;

namespace {

const TableauSet& shared() {
    static const TableauSet set(8);
    return set;
}

using Family = std::set<std::set<Label>>;

Family family(const std::vector<std::vector<Label>>& classes) {
    Family f;
    for (const auto& c : classes) f.insert(std::set<Label>(c.begin(), c.end()));
    return f;
}

std::size_t word_order(const std::string& w) { return (w.size() - 1) / 2; }

std::pair<std::string, std::string> split_word(const std::string& w) {
    long long balance = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        balance += w[i] == 'V' ? 1 : -1;
        if (balance == -1) return {w.substr(1, i), w.substr(i + 1)};
    }
    return {};
}

std::string substitute(const std::string& w, std::size_t k) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 'x' && ++seen == k) return w.substr(0, i) + "Vxx" + w.substr(i + 1);
    }
    return {};
}

// Closure recomputed on words with a plain map-based union-find. The rules
// are applied to every order in every sweep until nothing changes.
class WordClosure {
public:
    WordClosure(const TableauSet& set, const IdentitySpec& spec, std::size_t max_order, TableauMode mode, bool unicity)
        : set_(set), max_(max_order) {
        for (std::size_t m = 0; m <= max_order; ++m) {
            for (const auto& w : set.catalog(m).words()) parent_[w] = w;
        }
        for (auto [i, j] : spec.pairs) unite(set.catalog(spec.order).word(i), set.catalog(spec.order).word(j));
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t m = 1; m <= max_order; ++m) {
                const auto cls = classes_of(m);
                for (const auto& members : cls) {
                    if (members.size() < 2) continue;
                    const std::string& r = members.front();
                    for (std::size_t idx = 1; idx < members.size() && m < max_order; ++idx) {
                        const std::string& w = members[idx];
                        if (uses_a(mode)) {
                            for (std::size_t k = 1; k <= m + 1; ++k) changed |= unite(substitute(w, k), substitute(r, k));
                        }
                        if (uses_b(mode)) {
                            changed |= unite("V" + w + "x", "V" + r + "x");
                            changed |= unite("Vx" + w, "Vx" + r);
                        }
                    }
                    if (!unicity) continue;
                    for (std::size_t x = 0; x < members.size(); ++x) {
                        for (std::size_t y = x + 1; y < members.size(); ++y) {
                            const auto [a, b] = split_word(members[x]);
                            const auto [c, d] = split_word(members[y]);
                            if (a.size() == c.size() && find(a) == find(c)) changed |= unite(b, d);
                            if (b.size() == d.size() && find(b) == find(d)) changed |= unite(a, c);
                        }
                    }
                }
            }
        }
    }

    Family family_at(std::size_t m) const {
        Family f;
        for (const auto& members : classes_of(m)) {
            std::set<Label> s;
            for (const auto& w : members) s.insert(*set_.catalog(m).find(w));
            f.insert(s);
        }
        return f;
    }

private:
    std::string find(const std::string& w) const {
        std::string r = w;
        while (parent_.at(r) != r) r = parent_.at(r);
        return r;
    }

    bool unite(const std::string& a, const std::string& b) {
        const std::string ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent_[ra] = rb;
        return true;
    }

    std::vector<std::vector<std::string>> classes_of(std::size_t m) const {
        std::map<std::string, std::vector<std::string>> by_root;
        for (const auto& w : set_.catalog(m).words()) by_root[find(w)].push_back(w);
        std::vector<std::vector<std::string>> out;
        for (auto& [r, ms] : by_root) out.push_back(ms);
        return out;
    }

    const TableauSet& set_;
    std::size_t max_;
    std::map<std::string, std::string> parent_;
};

// Cancellation chain on words: strip an identical first or second factor.
std::vector<std::size_t> word_chain_orders(std::string u, std::string v) {
    std::vector<std::size_t> orders;
    while (u != v) {
        orders.push_back(word_order(u));
        if (u == "x") break;
        const auto [a, b] = split_word(u);
        const auto [c, d] = split_word(v);
        if (a == c) {
            u = b, v = d;
        } else if (b == d) {
            u = a, v = c;
        } else {
            break;
        }
    }
    return orders;
}

} // namespace

TEST(IdentitySpec, NormalizeAndValidate) {
    IdentitySpec s(3, {{5, 1}, {2, 4}});
    EXPECT_EQ(s.pairs, (std::vector<std::pair<Label, Label>>{{1, 5}, {2, 4}}));
    EXPECT_THROW(IdentitySpec(3, {{2, 2}}), InvalidSpec);
    EXPECT_THROW(IdentitySpec(3, {{1, 2}, {2, 1}}), InvalidSpec);
    EXPECT_THROW(IdentitySpec(3, {{1, 6}}).validate(shared()), InvalidSpec);
    EXPECT_THROW(IdentitySpec(0, {{1, 2}}).validate(shared()), InvalidSpec);
    EXPECT_THROW(IdentitySpec(3, {}).validate(shared()), InvalidSpec);
}

TEST(IdentitySpec, ParseText) {
    const auto s = IdentitySpec::parse("# two identities\norder 3\n1 4\n\n3 5  # columns\n");
    EXPECT_EQ(s.order, 3u);
    EXPECT_EQ(s.pairs, (std::vector<std::pair<Label, Label>>{{1, 4}, {3, 5}}));
    EXPECT_EQ(IdentitySpec::parse(s.to_text()).pairs, s.pairs);
    EXPECT_THROW(IdentitySpec::parse("1 2\n"), InvalidSpec);
    EXPECT_THROW(IdentitySpec::parse("order 3\n1\n"), InvalidSpec);
    EXPECT_THROW(IdentitySpec::parse("order 3\n1 2 3\n"), InvalidSpec);
    EXPECT_THROW(IdentitySpec::parse("order 3\na b\n"), InvalidSpec);
    EXPECT_THROW(IdentitySpec::parse(""), InvalidSpec);
}

TEST(Close, ConfigErrors) {
    EXPECT_THROW(close(shared(), IdentitySpec(3, {{2, 4}}), {2, TableauMode::a, false, false}), InvalidSpec);
    EXPECT_THROW(close(shared(), IdentitySpec(3, {{2, 4}}), {9, TableauMode::a, false, false}), OrderOverflow);
}

TEST(Close, OrderFourGoldens) {
    const auto a = close(shared(), IdentitySpec(3, {{2, 4}}), {4, TableauMode::a, false, false});
    EXPECT_EQ(family(a.classes(4)), (Family{{1}, {2, 4, 12}, {3}, {5, 10}, {6}, {7, 9}, {8}, {11}, {13}, {14}}));
    EXPECT_EQ(a.classnumber(4), 10u);
    const auto ab = close(shared(), IdentitySpec(3, {{2, 4}}), {4, TableauMode::ab, false, false});
    EXPECT_EQ(family(ab.classes(4)), (Family{{1}, {2, 4, 12}, {3, 8}, {5, 10, 13}, {6}, {7, 9}, {11}, {14}}));
    const auto s15 = close(shared(), IdentitySpec(3, {{1, 5}}), {4, TableauMode::ab, false, false});
    EXPECT_EQ(family(s15.classes(4)), (Family{{1, 5, 11}, {2, 9, 14}, {3, 13}, {4}, {6, 10}, {7}, {8}, {12}}));
}

TEST(Close, AgreesWithWordClosure) {
    struct Case {
        IdentitySpec spec;
        std::size_t max_order;
        TableauMode mode;
        bool unicity;
    };
    std::vector<Case> cases;
    for (Label i = 1; i <= 5; ++i) {
        for (Label j = i + 1; j <= 5; ++j) {
            cases.push_back({IdentitySpec(3, {{i, j}}), 6, TableauMode::ab, false});
            cases.push_back({IdentitySpec(3, {{i, j}}), 6, TableauMode::ab, true});
            cases.push_back({IdentitySpec(3, {{i, j}}), 5, TableauMode::a, false});
            cases.push_back({IdentitySpec(3, {{i, j}}), 5, TableauMode::b, true});
        }
    }
    cases.push_back({IdentitySpec(3, {{1, 4}, {3, 5}}), 6, TableauMode::ab, false});
    cases.push_back({IdentitySpec(4, {{1, 9}}), 6, TableauMode::ab, true});
    cases.push_back({IdentitySpec(4, {{6, 12}}), 6, TableauMode::ab, true});
    cases.push_back({IdentitySpec(2, {{1, 2}}), 5, TableauMode::a, true});
    for (const auto& c : cases) {
        const auto st = close(shared(), c.spec, {c.max_order, c.mode, c.unicity, false});
        const WordClosure oracle(shared(), c.spec, c.max_order, c.mode, c.unicity);
        for (std::size_t m = 0; m <= c.max_order; ++m) {
            ASSERT_EQ(family(st.classes(m)), oracle.family_at(m))
                << c.spec.to_text() << "order " << m << " mode " << to_string(c.mode) << " unicity " << c.unicity;
        }
    }
}

TEST(Close, ReplayAndDeterminism) {
    for (Label i = 1; i <= 5; ++i) {
        for (Label j = i + 1; j <= 5; ++j) {
            for (bool unicity : {false, true}) {
                const ClosureConfig cfg{7, TableauMode::ab, unicity, false};
                const auto st = close(shared(), IdentitySpec(3, {{i, j}}), cfg);
                const auto r = replay(st);
                EXPECT_TRUE(r.ok) << i << "=" << j << ": " << r.message;
                const auto again = close(shared(), IdentitySpec(3, {{i, j}}), cfg);
                for (std::size_t m = 0; m <= 7; ++m) EXPECT_EQ(st.classes(m), again.classes(m));
                EXPECT_EQ(st.log().size(), again.log().size());
            }
        }
    }
}

TEST(Close, LogOnlyHoldsEffectiveMerges) {
    const auto st = close(shared(), IdentitySpec(3, {{2, 4}}), {6, TableauMode::ab, false, false});
    std::size_t merges = 0;
    for (std::size_t m = 0; m <= 6; ++m) merges += shared().catalog(m).size() - st.classnumber(m);
    EXPECT_EQ(st.log().size(), merges);
    EXPECT_EQ(st.log().front().rule, Rule::seed);
}

TEST(Close, LowerOrdersStayDiscreteWithoutUnicity) {
    for (Label i = 1; i <= 5; ++i) {
        for (Label j = i + 1; j <= 5; ++j) {
            const auto st = close(shared(), IdentitySpec(3, {{i, j}}), {7, TableauMode::ab, false, false});
            for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(st.classnumber(m), shared().catalog(m).size());
            EXPECT_EQ(st.classnumber(3), 4u);
            EXPECT_FALSE(st.reduction());
        }
    }
}

TEST(Close, BothTableauxNeverRaiseClassnumbers) {
    for (Label i = 1; i <= 5; ++i) {
        for (Label j = i + 1; j <= 5; ++j) {
            const auto a = close(shared(), IdentitySpec(3, {{i, j}}), {7, TableauMode::a, false, false});
            const auto ab = close(shared(), IdentitySpec(3, {{i, j}}), {7, TableauMode::ab, false, false});
            for (std::size_t m = 3; m <= 7; ++m) EXPECT_LE(ab.classnumber(m), a.classnumber(m));
        }
    }
}

TEST(Classnumbers, FormulasForEveryOrderThreePair) {
    EXPECT_EQ(h_formula_a(3, 1), 10);
    EXPECT_EQ(h_formula_a(3, 0), 4);
    EXPECT_EQ(h_formula_b(3, 2), 38);
    for (Label i = 1; i <= 5; ++i) {
        for (Label j = i + 1; j <= 5; ++j) {
            const auto a = close(shared(), IdentitySpec(3, {{i, j}}), {6, TableauMode::a, false, false});
            const auto b = close(shared(), IdentitySpec(3, {{i, j}}), {6, TableauMode::b, false, false});
            for (std::size_t k = 0; k <= 3; ++k) {
                const BigInt s = catalan(3 + k);
                EXPECT_EQ(BigInt(a.classnumber(3 + k)), s - ballot(4 + k, 4));
                EXPECT_EQ(BigInt(b.classnumber(3 + k)), s - pow2(k));
                EXPECT_EQ(h_formula_a(3, k), s - ballot(4 + k, 4));
                EXPECT_EQ(h_formula_b(3, k), s - pow2(k));
            }
        }
    }
}

TEST(Classnumbers, TableExamples) {
    const auto s15 = close(shared(), IdentitySpec(3, {{1, 5}}), {6, TableauMode::ab, false, false});
    EXPECT_EQ(s15.classnumbers(), (std::vector<std::size_t>{4, 8, 14, 20}));
    const auto s12 = close(shared(), IdentitySpec(3, {{1, 2}}), {6, TableauMode::ab, false, false});
    EXPECT_EQ(s12.classnumbers(), (std::vector<std::size_t>{4, 8, 16, 32}));
    std::vector<std::size_t> singles;
    for (std::size_t m = 3; m <= 6; ++m) singles.push_back(s12.singletons(m));
    EXPECT_EQ(singles, (std::vector<std::size_t>{3, 5, 8, 13}));
    const auto two = close(shared(), IdentitySpec(3, {{1, 4}, {3, 5}}), {7, TableauMode::ab, false, false});
    EXPECT_EQ(two.classnumbers(), (std::vector<std::size_t>{3, 3, 1, 1, 1}));
}

TEST(Classnumbers, OrderFiveFamilyForOneFive) {
    const auto st = close(shared(), IdentitySpec(3, {{1, 5}}), {5, TableauMode::ab, false, false});
    const Family expected = {{1, 5, 8, 11, 20, 24, 29, 33, 36, 40, 42}, {2, 9, 14, 30}, {3, 13, 22, 38}, {4, 26, 41},
                             {6, 10, 34}, {7, 32, 37}, {12}, {15, 19, 25}, {16, 23, 28, 39}, {17, 27}, {18}, {21},
                             {31}, {35}};
    EXPECT_EQ(family(st.classes(5)), expected);
}

TEST(Classify, OrderThreeVerdicts) {
    EXPECT_EQ(classify_identity(shared(), 3, {1, 2}, 7).verdict, Verdict::formally_reducible);
    EXPECT_EQ(classify_identity(shared(), 3, {1, 4}, 7).to_string(), "essential-up-to 7");
    EXPECT_EQ(classify_identity(shared(), 3, {3, 5}, 7).to_string(), "essential-up-to 7");
    for (auto p : std::vector<std::pair<Label, Label>>{{2, 3}, {2, 4}}) {
        const auto c = classify_identity(shared(), 3, p, 7);
        EXPECT_EQ(c.verdict, Verdict::semantically_reducible);
        ASSERT_TRUE(c.reduction);
        EXPECT_LT(c.reduction->merge.order, 3u);
    }
}

TEST(Classify, OneFiveReducesThroughAssociativity) {
    const auto c = classify_identity(shared(), 3, {1, 5}, 5);
    ASSERT_EQ(c.verdict, Verdict::semantically_reducible);
    ASSERT_TRUE(c.reduction);
    const std::vector<ChainStep> chain = {{5, 8, 11}, {4, 4, 5}, {2, 1, 2}};
    bool found = false;
    for (const auto& w : c.reduction->witnesses) found = found || w.chain == chain;
    EXPECT_TRUE(found);
    // The endpoint 1~2 at order 2 is associativity: V(Vxx,x) = V(x,Vxx).
    EXPECT_EQ(shared().catalog(2).word(1), "VVxxx");
    EXPECT_EQ(shared().catalog(2).word(2), "VxVxx");
    EXPECT_EQ(shared().catalog(5).word(8), "VVVxxVVxxxx");
    EXPECT_EQ(shared().catalog(5).word(11), "VVVxxVxVxxx");
}

TEST(Classify, WitnessChainsAreFormal) {
    const auto c = classify_identity(shared(), 3, {1, 5}, 6);
    ASSERT_TRUE(c.reduction);
    for (const auto& w : c.reduction->witnesses) {
        const auto& first = w.chain.front();
        const auto orders = word_chain_orders(shared().catalog(first.order).word(first.a),
                                              shared().catalog(first.order).word(first.b));
        ASSERT_EQ(orders.size(), w.chain.size());
        for (std::size_t i = 0; i < orders.size(); ++i) EXPECT_EQ(orders[i], w.chain[i].order);
        EXPECT_LT(w.chain.back().order, 3u);
    }
}

TEST(ClassAlgebra, WellDefinedUnderTwoFour) {
    const auto st = close(shared(), IdentitySpec(3, {{2, 4}}), {5, TableauMode::ab, false, false});
    const auto w = check_w_well_defined(st, 5);
    EXPECT_TRUE(w.ok) << w.failure;
    std::size_t reps = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t p = 0; p < n; ++p) reps += shared().catalog(p).size() * shared().catalog(n - 1 - p).size();
    }
    EXPECT_EQ(w.representative_pairs, reps);
    const ClassRef xx = compose_classes(st, class_of(st, 0, 1), class_of(st, 0, 1));
    EXPECT_EQ(xx, (ClassRef{1, 1}));
    EXPECT_THROW(compose_classes(st, class_of(st, 3, 1), class_of(st, 2, 1)), OrderOverflow);
    EXPECT_TRUE(check_w_satisfies_spec(st).ok);
}

TEST(ClassAlgebra, ShapesEvaluateToTheirLabels) {
    const auto st = close(shared(), IdentitySpec(3, {{2, 4}}), {5, TableauMode::a, false, false});
    const std::vector<ClassRef> leaves(4, ClassRef{0, 1});
    for (Label l = 1; l <= 5; ++l) {
        EXPECT_EQ(evaluate_shape(st, shared().catalog(3).term(l), leaves), class_of(st, 3, l));
    }
    EXPECT_EQ(evaluate_shape(st, shared().catalog(3).term(2), leaves),
              evaluate_shape(st, shared().catalog(3).term(4), leaves));
    EXPECT_THROW(evaluate_shape(st, shared().catalog(3).term(2), {}), IndexOutOfRange);
}

TEST(ClassAlgebra, CanFailWithoutClosure) {
    // Seeding the identity but closing only at its own order leaves W
    // dependent on representatives one order up.
    const auto st = close(shared(), IdentitySpec(3, {{2, 4}}), {4, TableauMode::ab, false, false});
    EXPECT_TRUE(check_w_well_defined(st, 4).ok);
    EXPECT_EQ(check_w_well_defined(st, 9).class_pairs, check_w_well_defined(st, 4).class_pairs);
}

TEST(ImplicationPairs, CountsMatchFormulaAndWordOracle) {
    const std::vector<std::pair<std::size_t, std::size_t>> cases = {{3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}, {5, 4}, {6, 3}};
    for (auto [n, k] : cases) {
        const auto ip = implication_pairs(shared(), n, k);
        const auto& words = shared().catalog(n).words();
        std::size_t oracle = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                const auto orders = word_chain_orders(words[i], words[j]);
                oracle += std::find(orders.begin(), orders.end(), k) != orders.end();
            }
        }
        const BigInt sk = catalan(k);
        EXPECT_EQ(ip.count, oracle) << n << "," << k;
        EXPECT_EQ(BigInt(oracle), BigInt(n - k + 1) * catalan(n - k) * sk * (sk - 1) / 2) << n << "," << k;
        EXPECT_EQ(implication_pairs_formula(n, k), BigInt(oracle));
    }
    EXPECT_EQ(implication_pairs(shared(), 5, 2).count, 20u);
    const auto p52 = implication_pairs(shared(), 5, 2).pairs;
    EXPECT_NE(std::find(p52.begin(), p52.end(), std::pair<Label, Label>{8, 11}), p52.end());
    EXPECT_THROW(implication_pairs(shared(), 5, 1), IndexOutOfRange);
    EXPECT_THROW(implication_pairs(shared(), 5, 5), IndexOutOfRange);
}

TEST(UnicityBounds, SingleIdentitiesOfOrdersThreeAndFour) {
    std::size_t applicable = 0;
    for (std::size_t n : {3, 4}) {
        const std::size_t size = shared().catalog(n).size();
        for (Label i = 1; i <= size; ++i) {
            for (Label j = i + 1; j <= size; ++j) {
                const auto st = close(shared(), IdentitySpec(n, {{i, j}}), {7, TableauMode::ab, true, false});
                const auto b = unicity_bounds_check(st);
                EXPECT_EQ(b.lower_bound, catalan(n - 1));
                EXPECT_EQ(b.applicable, !st.reduction());
                if (b.applicable) {
                    ++applicable;
                    const WordClosure oracle(shared(), IdentitySpec(n, {{i, j}}), 7, TableauMode::ab, true);
                    const auto fam = oracle.family_at(n);
                    std::size_t smallest = size;
                    for (const auto& c : fam) smallest = std::min(smallest, c.size());
                    EXPECT_EQ(b.classnumber, fam.size());
                    EXPECT_LE(b.classnumber, size - 1);
                    if (n == 3) {
                        EXPECT_EQ(b.classnumber, 4u);
                    }
                    EXPECT_EQ(b.min_class_size, smallest);
                    EXPECT_EQ(b.holds, BigInt(fam.size()) >= catalan(n - 1) && smallest <= 3);
                    EXPECT_TRUE(b.holds);
                }
            }
        }
    }
    EXPECT_GT(applicable, 0u);
    const auto off = close(shared(), IdentitySpec(3, {{1, 4}}), {5, TableauMode::ab, false, false});
    EXPECT_FALSE(unicity_bounds_check(off).applicable);
}

TEST(Survey, ColumnPairs) {
    EXPECT_EQ(b_column_pairs(shared(), 3), (std::vector<std::pair<Label, Label>>{{1, 4}, {3, 5}}));
    EXPECT_EQ(b_column_pairs(shared(), 4),
              (std::vector<std::pair<Label, Label>>{{1, 9}, {3, 10}, {6, 12}, {8, 13}, {11, 14}}));
}

TEST(Survey, OrderThreeEssentialsAreTheColumns) {
    const auto survey = essential_survey(shared(), 3, 7);
    ASSERT_EQ(survey.size(), 5u);
    for (const auto& v : survey) {
        const bool column = v.pair == std::pair<Label, Label>{1, 4} || v.pair == std::pair<Label, Label>{3, 5};
        EXPECT_EQ(v.column, column);
        EXPECT_EQ(v.verdict.verdict, column ? Verdict::essential_up_to : Verdict::semantically_reducible);
    }
}

TEST(Survey, ClassnumberTableShape) {
    const auto table = classnumber_table(shared(), 3, 5);
    ASSERT_EQ(table.size(), 10u);
    for (const auto& row : table) {
        EXPECT_EQ(row.h.size(), 3u);
        EXPECT_EQ(row.h[0], 4u);
    }
}

TEST(SampleFormula, Values) {
    for (std::size_t m = 4; m <= 7; ++m) {
        const BigInt expected = catalan(m) - BigInt(2) * (pow2(2 * (m - 3)) - 1) / 3 + BigInt((m - 2) * (m - 3) / 2);
        EXPECT_EQ(order4_sample_formula(m), expected);
    }
    EXPECT_EQ(order4_sample_formula(4), 13);
}

TEST(Report, ClosureJsonShape) {
    const auto st = close(shared(), IdentitySpec(3, {{2, 4}}), {4, TableauMode::ab, false, false});
    const Json j = closure_json(st);
    EXPECT_EQ(j["per_order"]["4"]["h"], 8);
    EXPECT_EQ(j["derivations"].size(), st.log().size());
    EXPECT_EQ(j["derivations"][0]["rule"], "seed");
    EXPECT_EQ(j["spec"]["pairs"][0], Json::array({2, 4}));
}
