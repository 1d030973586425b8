#include "iterforge/series.hpp"
#include "iterforge/skein.hpp"
#include "iterforge/tableaux.hpp"

#include <boost/rational.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace iterforge;

namespace {

const TableauSet& shared() {
    static const TableauSet set(8);
    return set;
}

// Skein polynomial rebuilt from the word: each leaf contributes a^s b^t where
// s and t count the left and right descents on its path from the root.
std::map<std::pair<unsigned, unsigned>, long long> word_skein(const std::string& w) {
    std::map<std::pair<unsigned, unsigned>, long long> out;
    std::vector<std::pair<std::pair<unsigned, unsigned>, int>> stack;  // exponent, children seen
    std::pair<unsigned, unsigned> here{0, 0};
    for (char c : w) {
        if (c == 'V') {
            stack.push_back({here, 0});
            here = {here.first + 1, here.second};
            continue;
        }
        ++out[here];
        while (!stack.empty() && stack.back().second == 1) stack.pop_back();
        if (stack.empty()) break;
        stack.back().second = 1;
        here = {stack.back().first.first, stack.back().first.second + 1};
    }
    return out;
}

std::map<std::pair<unsigned, unsigned>, long long> as_map(const BiPoly& p) {
    std::map<std::pair<unsigned, unsigned>, long long> out;
    for (unsigned s = 0; s <= 12; ++s) {
        for (unsigned t = 0; t <= 12; ++t) {
            const BigInt c = p.coefficient(s, t);
            if (c != 0) out[{s, t}] = c.convert_to<long long>();
        }
    }
    return out;
}

// Preorder codes of plane trees with colored node kinds, counted by search.
std::size_t count_trees(const std::vector<std::size_t>& arities, std::size_t nodes) {
    std::size_t total = 0;
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t open, std::size_t used) {
        if (open == 0) {
            total += used == nodes;
            return;
        }
        go(open - 1, used);
        if (used == nodes) return;
        for (std::size_t a : arities) go(open - 1 + a, used + 1);
    };
    go(1, 0);
    return total;
}

using Q = boost::rational<long long>;

long long small_catalan(long long n) {
    long long c = 1;
    for (long long i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

long long small_binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Sum over compositions of d into parts i_1..i_m of S_{i_1}..S_{i_m}.
long long compositions(std::size_t parts, long long d) {
    if (parts == 0) return d == 0;
    long long total = 0;
    for (long long i = 0; i <= d; ++i) total += small_catalan(i) * compositions(parts - 1, d - i);
    return total;
}

} // namespace

TEST(BiPoly, ArithmeticAndText) {
    const BiPoly a = BiPoly::monomial(1, 0), b = BiPoly::monomial(0, 1), one = BiPoly::constant(1);
    EXPECT_EQ((a + b) * (a + b), BiPoly::parse("a^2 + 2*a*b + b^2"));
    EXPECT_EQ((a + b - one).to_string(), "a + b - 1");
    EXPECT_EQ((a - a).to_string(), "0");
    EXPECT_EQ(BiPoly::parse("-a^2b + 3").to_string(), "-a^2*b + 3");
    EXPECT_EQ(BiPoly::parse("a*a*b").coefficient(2, 1), 1);
    EXPECT_EQ(BiPoly::parse("s^2+t^2+2", 's', 't').to_string('s', 't'), "s^2 + t^2 + 2");
    EXPECT_EQ(BiPoly::parse("a b^2").evaluate(2, 3), 18);
    EXPECT_EQ((a * b).shifted(1, 2), BiPoly::monomial(2, 3));
    EXPECT_EQ(BiPoly::parse("a + b").substitute_b_one_minus_a(), one);
    EXPECT_EQ(BiPoly::parse("a^2 + 2a").scaled(-1).to_string(), "-a^2 - 2*a");
    EXPECT_EQ(BiPoly::parse("a^3 b + b").total_degree(), 4u);
    EXPECT_THROW(BiPoly::parse(""), InvalidSpec);
    EXPECT_THROW(BiPoly::parse("a +"), InvalidSpec);
    EXPECT_THROW(BiPoly::parse("a^"), InvalidSpec);
    EXPECT_THROW(BiPoly::parse("a b c"), InvalidSpec);
}

TEST(Skein, TableValues) {
    EXPECT_EQ(skein(parse_word("x")).to_string(), "1");
    EXPECT_EQ(skein(parse_word("Vxx")).to_string(), "a + b");
    EXPECT_EQ(skein(parse_word("VVxxx")).to_string(), "a^2 + a*b + b");
    EXPECT_EQ(skein(parse_word("VxVxx")).to_string(), "a*b + a + b^2");
    EXPECT_EQ(skein(parse_word("VVxxVxx")), BiPoly::parse("a^2 + 2ab + b^2"));
    EXPECT_EQ(skein_q(parse_word("x")).to_string(), "0");
    EXPECT_EQ(skein_q(parse_word("Vxx")).to_string(), "1");
    EXPECT_EQ(skein_q(parse_word("VVxxx")).to_string(), "a + 1");
}

TEST(Skein, MatchesLeafPathOracle) {
    for (std::size_t n = 0; n <= 7; ++n) {
        for (const auto& w : shared().catalog(n).words()) EXPECT_EQ(as_map(skein(parse_word(w))), word_skein(w)) << w;
    }
}

TEST(Skein, Invariants) {
    const BiPoly a_plus_b_minus_1 = BiPoly::parse("a + b - 1");
    for (std::size_t n = 0; n <= 8; ++n) {
        for (Label l = 1; l <= shared().catalog(n).size(); ++l) {
            const Term& t = shared().catalog(n).term(l);
            const BiPoly p = skein(t);
            EXPECT_EQ(p.evaluate(1, 1), BigInt(n + 1));
            EXPECT_EQ(p.substitute_b_one_minus_a(), BiPoly::constant(1));
            EXPECT_EQ(a_plus_b_minus_1 * skein_q(t) + BiPoly::constant(1), p);
            EXPECT_LE(p.total_degree(), n);
        }
    }
}

TEST(Skein, CollisionGroups) {
    for (std::size_t n = 0; n <= 3; ++n) {
        for (const auto& g : collision_groups(shared().catalog(n))) EXPECT_EQ(g.multiplicity(), 1u);
    }
    const auto g4 = collision_groups(shared().catalog(4));
    bool found = false;
    for (const auto& g : g4) {
        if (g.labels == std::vector<Label>{4, 7}) {
            found = true;
            EXPECT_EQ(g.poly, BiPoly::parse("a^2 + ab + a^2 b + a b^2 + b^2"));
        } else {
            EXPECT_EQ(g.multiplicity(), 1u);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(g4.size(), 13u);
    for (std::size_t n = 0; n <= 8; ++n) {
        std::size_t total = 0;
        Label last = 0;
        for (const auto& g : collision_groups(shared().catalog(n))) {
            total += g.multiplicity();
            EXPECT_GT(g.labels.front(), last);
            last = g.labels.front();
            for (Label l : g.labels) EXPECT_EQ(skein(shared().catalog(n).term(l)), g.poly);
        }
        EXPECT_EQ(BigInt(total), catalan(n));
    }
}

TEST(Skein, CollisionRecursion) {
    for (std::size_t n = 0; n <= 7; ++n) EXPECT_TRUE(np_recursion_check(shared(), n).ok) << n;
    const auto r1 = np_recursion_check(shared(), 1);
    ASSERT_EQ(r1.entries.size(), 1u);
    EXPECT_EQ(r1.entries[0].decompositions, 1u);
    for (const auto& e : np_recursion_check(shared(), 4).entries) {
        EXPECT_EQ(e.decompositions, e.poly == BiPoly::parse("a^2 + ab + a^2 b + a b^2 + b^2") ? 2u : 1u);
    }
}

TEST(Series, GeneralizedCatalanClosedForm) {
    EXPECT_EQ(catalan_general(3, 3), 12);
    for (std::size_t a : {2, 3, 4}) {
        const auto phi = series_mixed({a}, 12);
        for (std::size_t n = 0; n <= 12; ++n) {
            EXPECT_EQ(phi[n], catalan_general(a, n));
            EXPECT_EQ(catalan_general(a, n), binomial(a * n, n) / ((a - 1) * n + 1));
            if (a == 2) {
                EXPECT_EQ(phi[n], catalan(n));
            }
        }
    }
    EXPECT_THROW(series_mixed({1}, 4), BadArity);
    EXPECT_THROW(series_mixed({}, 4), BadArity);
    EXPECT_THROW(catalan_general(1, 4), BadArity);
}

TEST(Series, MixedAritiesMatchTreeCount) {
    for (const auto& arities : std::vector<std::vector<std::size_t>>{{2, 3}, {2, 2}, {3, 4}, {2, 3, 3}}) {
        const auto phi = series_mixed(arities, 7);
        for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(phi[n], BigInt(count_trees(arities, n))) << n;
    }
    const auto phi = series_mixed({2, 3}, 7);
    EXPECT_EQ(phi.coefficients(), (std::vector<BigInt>{1, 2, 10, 66, 498, 4066, 34970, 312066}));
}

TEST(Series, PowerSeriesArithmetic) {
    const PowerSeries c(6, catalan_sequence(6));
    const auto sq = c * c;
    for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(sq[n], catalan(n + 1));
    EXPECT_EQ(c.pow(0), PowerSeries::one(6));
    EXPECT_EQ(c.pow(3), c * c * c);
    EXPECT_EQ((PowerSeries::one(6) + c.pow(2).times_t()), c);
    EXPECT_EQ(c.times_t()[0], 0);
    EXPECT_EQ(c.degree(), 6u);
}

TEST(Series, RelativeCatalan) {
    const auto plain = catalan_relative(BiPoly::parse("s + t + 1", 's', 't'), {{0, 1}}, 10);
    for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(plain[n], catalan(n));
    const auto quad = catalan_relative(BiPoly::parse("s^2 + t^2 + 2", 's', 't'), {{0, 1}}, 8);
    EXPECT_EQ(quad[1], 0);
    EXPECT_EQ(quad[2], 1);
    EXPECT_EQ(quad[3], 0);
    EXPECT_EQ(quad[4], 0);
    for (BigInt v : catalan_relative(BiPoly::parse("s + t + 1", 's', 't'), {{0, 0}}, 8)) EXPECT_EQ(v, 0);
    EXPECT_THROW(catalan_relative(BiPoly::parse("s + t", 's', 't'), {{0, 1}}, 5), IllFoundedRecursion);
    EXPECT_THROW(catalan_relative(BiPoly::parse("s + t", 's', 't'), {{0, 1}, {1, 1}}, 5), IllFoundedRecursion);
    const auto seeded = catalan_relative(BiPoly::parse("s + t + 2", 's', 't'), {{0, 1}, {1, 3}}, 6);
    EXPECT_EQ(seeded, (std::vector<BigInt>{1, 3, 1, 6, 11, 18, 59}));
}

TEST(Series, RelativeQuadraticOracle) {
    const std::size_t d = 12;
    const auto got = catalan_relative(BiPoly::parse("s^2 + t^2 + 2", 's', 't'), {{0, 1}}, d);
    std::vector<long long> want(d + 1, 0);
    want[0] = 1;
    for (std::size_t n = 1; n <= d; ++n) {
        for (std::size_t s = 0; s * s + 2 <= n; ++s) {
            for (std::size_t t = 0; s * s + t * t + 2 <= n; ++t) {
                if (s * s + t * t + 2 == n) want[n] += want[s] * want[t];
            }
        }
    }
    for (std::size_t n = 0; n <= d; ++n) EXPECT_EQ(got[n], want[n]) << n;
}

TEST(Series, WeightedRecurrence) {
    const auto r11 = weighted_recurrence(1, 1, {1}, 6);
    ASSERT_TRUE(r11.first_non_integral());
    EXPECT_EQ(*r11.first_non_integral(), 1u);
    EXPECT_EQ(r11.values[1], Rational(1, 2));
    EXPECT_THROW(weighted_recurrence_strict(1, 1, {1}, 6), NonIntegralTerm);
    EXPECT_THROW(weighted_recurrence(1, 0, {1}, 6), IndexOutOfRange);
    EXPECT_THROW(weighted_recurrence(0, 1, {}, 6), IndexOutOfRange);
    EXPECT_THROW(weighted_recurrence(2, 1, {1}, 6), IndexOutOfRange);
    EXPECT_THROW(weighted_recurrence(3, 1, {1, 1, 1}, 2), IndexOutOfRange);

    const auto r21 = weighted_recurrence(2, 1, {1, 1}, 10);
    std::vector<Q> v = {1, 1};
    std::vector<std::size_t> fractional;
    for (std::size_t n = 2; n <= 10; ++n) {
        Q conv = 0;
        for (std::size_t s = 0; s <= n - 2; ++s) conv += v[s] * v[n - 2 - s];
        v.push_back(conv / Q(static_cast<long long>(n + 1)));
        if (v.back().denominator() != 1) fractional.push_back(n);
    }
    ASSERT_EQ(r21.values.size(), v.size());
    for (std::size_t n = 0; n <= 10; ++n) {
        EXPECT_EQ(r21.values[n], Rational(v[n].numerator(), v[n].denominator())) << n;
    }
    EXPECT_EQ(r21.non_integral, fractional);
}

TEST(Series, WeightedRecurrenceOtherWeight) {
    const auto r = weighted_recurrence(1, 2, {2}, 5);
    std::vector<Q> v = {2};
    for (std::size_t n = 1; n <= 5; ++n) {
        Q conv = 0;
        for (std::size_t s = 0; s <= n - 1; ++s) conv += v[s] * v[n - 1 - s];
        v.push_back(conv / Q(static_cast<long long>(n + 2)));
    }
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(r.values[n], Rational(v[n].numerator(), v[n].denominator()));
}

TEST(Convolution, Values) {
    for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(catalan_convolution(1, n), catalan(n));
    for (std::size_t lambda = 1; lambda <= 4; ++lambda) {
        for (std::size_t n = 0; n <= 12; ++n) {
            const long long want = n < lambda ? 0 : compositions(lambda + 1, static_cast<long long>(n - lambda));
            EXPECT_EQ(catalan_convolution(lambda, n), want) << lambda << "," << n;
        }
    }
}

TEST(Convolution, AlternatingFormHasCoefficientMinusLambdaMinusOne) {
    for (std::size_t lambda = 1; lambda <= 6; ++lambda) {
        for (std::size_t n = lambda; n <= 14; ++n) {
            long long sum = 0;
            for (std::size_t j = 0; 2 * j <= lambda; ++j) {
                const long long c = small_binomial(static_cast<long long>(lambda - j), static_cast<long long>(j));
                sum += (j % 2 ? -c : c) * small_catalan(static_cast<long long>(n - j));
            }
            EXPECT_EQ(catalan_convolution(lambda, n), sum) << lambda << "," << n;
        }
        const auto r = convolution_relation_check(lambda, std::max<std::size_t>(lambda, 10));
        ASSERT_TRUE(r.fit_confirmed);
        EXPECT_TRUE(r.fit_matches_general_term);
        EXPECT_FALSE(r.fit_matches_alternate_second);
        ASSERT_GE(r.fitted.size(), 2u);
        EXPECT_EQ(r.fitted[0], Rational(1));
        EXPECT_EQ(r.fitted[1], Rational(-static_cast<long long>(lambda - 1)));
    }
    EXPECT_THROW(convolution_relation_check(0, 5), IndexOutOfRange);
    EXPECT_THROW(convolution_relation_check(6, 5), IndexOutOfRange);
}

TEST(Convolution, PascalRelation) {
    for (std::size_t lambda = 1; lambda <= 5; ++lambda) {
        for (std::size_t n = lambda; n <= 12; ++n) {
            const auto r = convolution_relation_check(lambda, n);
            EXPECT_TRUE(r.pascal_holds) << lambda << "," << n;
        }
    }
    // The row with coefficients 2, 2, 1 is the third ballot row.
    EXPECT_EQ(ballot(3, 1), 2);
    EXPECT_EQ(ballot(3, 2), 2);
    EXPECT_EQ(ballot(3, 3), 1);
    for (std::size_t n = 3; n <= 12; ++n) {
        const long long want = 2 * compositions(2, static_cast<long long>(n - 3)) +
                               2 * compositions(3, static_cast<long long>(n - 3)) +
                               compositions(4, static_cast<long long>(n - 3));
        EXPECT_EQ(BigInt(want), catalan(n)) << n;
    }
}

TEST(Convolution, RatioLimit) {
    const auto r = convolution_relation_check(2, 30);
    EXPECT_DOUBLE_EQ(r.ratio_limit, 0.75);
    EXPECT_LT(std::abs(r.ratio / 0.75 - 1.0), 0.02);
    const auto r3 = convolution_relation_check(3, 200);
    EXPECT_LT(std::abs(r3.ratio / r3.ratio_limit - 1.0), 0.01);
}
