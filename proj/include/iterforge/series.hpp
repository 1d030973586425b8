#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/catalan.hpp"
#include "iterforge/error.hpp"
#include "iterforge/polynomial.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iterforge {

/// Number of a-ary trees with n internal nodes: (an choose n) / ((a-1)n + 1).
inline BigInt catalan_general(std::size_t a, std::size_t n) {
    if (a < 2) throw BadArity("arity " + std::to_string(a) + " is below 2");
    return binomial(static_cast<long long>(a * n), static_cast<long long>(n)) / ((a - 1) * n + 1);
}

/**
 * Solves phi = 1 + t (phi^{a_1} + ... + phi^{a_k}) modulo t^{D+1} by fixpoint
 * iteration. Coefficient n counts plane trees with n internal nodes, each node
 * carrying one of the listed arities.
 */
inline PowerSeries series_mixed(const std::vector<std::size_t>& arities, std::size_t degree) {
    if (arities.empty()) throw BadArity("at least one arity is required");
    for (std::size_t a : arities) {
        if (a < 2) throw BadArity("arity " + std::to_string(a) + " is below 2");
    }
    PowerSeries phi = PowerSeries::one(degree);
    for (std::size_t iter = 0; iter <= degree; ++iter) {
        PowerSeries sum(degree);
        for (std::size_t a : arities) sum += phi.pow(a);
        phi = PowerSeries::one(degree) + sum.times_t();
    }
    return phi;
}

/**
 * S_n = sum over lattice points P(s,t) = n of S_s S_t, with base values fixed
 * for the orders listed in base. Points are searched in 0 <= s,t <= D.
 */
inline std::vector<BigInt> catalan_relative(const BiPoly& p, const std::map<std::size_t, BigInt>& base,
                                            std::size_t degree) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> points(degree + 1);
    for (std::size_t s = 0; s <= degree; ++s) {
        for (std::size_t t = 0; t <= degree; ++t) {
            const BigInt v = p.evaluate(s, t);
            if (v < 0 || v > degree) continue;
            const auto n = v.convert_to<std::size_t>();
            if (base.count(n)) continue;
            if (s >= n || t >= n) {
                throw IllFoundedRecursion("P(" + std::to_string(s) + "," + std::to_string(t) + ") = " +
                                          std::to_string(n) + " refers to an order not below " + std::to_string(n));
            }
            points[n].emplace_back(s, t);
        }
    }
    std::vector<BigInt> out(degree + 1, 0);
    for (std::size_t n = 0; n <= degree; ++n) {
        if (auto it = base.find(n); it != base.end()) {
            out[n] = it->second;
            continue;
        }
        for (auto [s, t] : points[n]) out[n] += out[s] * out[t];
    }
    return out;
}

struct WeightedRecurrence {
    std::vector<Rational> values;
    /// Indices n >= k where (n + l) does not divide the convolution.
    std::vector<std::size_t> non_integral;

    std::optional<std::size_t> first_non_integral() const {
        if (non_integral.empty()) return std::nullopt;
        return non_integral.front();
    }
};

/// (n + l) S_n = sum_{s+t=n-k} S_s S_t for n >= k, first k values given.
inline WeightedRecurrence weighted_recurrence(std::size_t k, std::size_t l, const std::vector<BigInt>& initial,
                                              std::size_t degree) {
    if (k < 1) throw IndexOutOfRange("k must be at least 1");
    if (l < 1) throw IndexOutOfRange("l must be at least 1");
    if (initial.size() != k) {
        throw IndexOutOfRange("expected " + std::to_string(k) + " initial values, got " + std::to_string(initial.size()));
    }
    if (degree < k) throw IndexOutOfRange("degree must be at least k");
    WeightedRecurrence out;
    for (const BigInt& v : initial) out.values.emplace_back(v);
    for (std::size_t n = k; n <= degree; ++n) {
        Rational conv = 0;
        for (std::size_t s = 0; s <= n - k; ++s) conv += out.values[s] * out.values[n - k - s];
        Rational v = conv / Rational(n + l);
        if (!is_integral(v)) out.non_integral.push_back(n);
        out.values.push_back(v);
    }
    return out;
}

/// As weighted_recurrence, but throws NonIntegralTerm at the first fraction.
inline std::vector<BigInt> weighted_recurrence_strict(std::size_t k, std::size_t l, const std::vector<BigInt>& initial,
                                                      std::size_t degree) {
    const auto r = weighted_recurrence(k, l, initial, degree);
    if (auto bad = r.first_non_integral()) {
        throw NonIntegralTerm("term " + std::to_string(*bad) + " equals " + to_string(r.values[*bad]));
    }
    std::vector<BigInt> out;
    for (const auto& v : r.values) out.push_back(boost::multiprecision::numerator(v));
    return out;
}

// ---------------------------------------------------------------------------
// Convolution powers of the Catalan sequence

/// C(lambda, n) = sum over i_1 + ... + i_{lambda+1} = n - lambda of the
/// products S_{i_1} ... S_{i_{lambda+1}}; zero when n < lambda.
inline BigInt catalan_convolution(std::size_t lambda, std::size_t n) {
    if (n < lambda) return 0;
    const std::size_t d = n - lambda;
    PowerSeries c(d, catalan_sequence(d));
    return c.pow(lambda + 1)[d];
}

namespace detail {

/// Solves a square system exactly; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

} // namespace detail

struct ConvolutionReport {
    std::size_t lambda = 0;
    std::size_t n = 0;
    BigInt value;

    /// Coefficients x_j with C(lambda, m) = sum_j x_j S_{m-j}, fitted on
    /// m = lambda..2 lambda and confirmed up to `confirmed_to`.
    std::vector<Rational> fitted;
    bool fit_confirmed = false;
    std::size_t confirmed_to = 0;
    /// (-1)^j (lambda-j choose j) for j <= lambda/2, zero beyond.
    std::vector<BigInt> general_term;
    bool fit_matches_general_term = false;
    /// The alternative second coefficient -(lambda+1 choose 1).
    BigInt alternate_second;
    bool fit_matches_alternate_second = false;

    /// S_n against sum_j c_{lambda,j} C(j, n - lambda + j).
    BigInt pascal_sum;
    bool pascal_holds = false;

    /// C(lambda, n)/S_n against (lambda+1)/2^lambda.
    double ratio = 0.0;
    double ratio_limit = 0.0;
};

inline ConvolutionReport convolution_relation_check(std::size_t lambda, std::size_t n) {
    if (lambda < 1 || lambda > n) throw IndexOutOfRange("need 1 <= lambda <= n");
    ConvolutionReport r;
    r.lambda = lambda;
    r.n = n;
    r.value = catalan_convolution(lambda, n);

    const std::size_t unknowns = lambda + 1;
    std::vector<std::vector<Rational>> m(unknowns, std::vector<Rational>(unknowns));
    std::vector<Rational> rhs(unknowns);
    for (std::size_t row = 0; row < unknowns; ++row) {
        const std::size_t idx = lambda + row;
        for (std::size_t j = 0; j < unknowns; ++j) m[row][j] = Rational(catalan(idx - j));
        rhs[row] = Rational(catalan_convolution(lambda, idx));
    }
    if (auto fit = detail::solve_exact(m, rhs)) {
        r.fitted = *fit;
        r.confirmed_to = 2 * lambda + 12;
        r.fit_confirmed = true;
        for (std::size_t idx = lambda; idx <= r.confirmed_to; ++idx) {
            Rational s = 0;
            for (std::size_t j = 0; j < unknowns; ++j) s += r.fitted[j] * Rational(catalan(idx - j));
            if (s != Rational(catalan_convolution(lambda, idx))) r.fit_confirmed = false;
        }
    }
    for (std::size_t j = 0; j < unknowns; ++j) {
        BigInt g = 2 * j <= lambda ? binomial(static_cast<long long>(lambda - j), static_cast<long long>(j)) : BigInt(0);
        r.general_term.push_back(j % 2 ? BigInt(-g) : g);
    }
    r.fit_matches_general_term = r.fit_confirmed;
    for (std::size_t j = 0; j < unknowns && r.fit_confirmed; ++j) {
        if (r.fitted[j] != Rational(r.general_term[j])) r.fit_matches_general_term = false;
    }
    r.alternate_second = -BigInt(lambda + 1);
    r.fit_matches_alternate_second = r.fit_confirmed && r.fitted.size() > 1 && r.fitted[1] == Rational(r.alternate_second);

    for (std::size_t j = 1; j <= lambda; ++j) r.pascal_sum += ballot(lambda, j) * catalan_convolution(j, n - lambda + j);
    r.pascal_holds = r.pascal_sum == catalan(n);

    r.ratio = Rational(r.value, catalan(n)).convert_to<double>();
    r.ratio_limit = static_cast<double>(lambda + 1) / static_cast<double>(std::size_t{1} << lambda);
    return r;
}

} // namespace iterforge
