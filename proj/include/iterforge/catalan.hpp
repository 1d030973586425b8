#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/error.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace iterforge {

/// S_n = (2n choose n) / (n+1), the number of iterates of order n.
inline BigInt catalan(std::size_t n) {
    BigInt s = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        s *= 2 * (2 * m - 1);
        s /= m + 1;
    }
    return s;
}

inline std::vector<BigInt> catalan_sequence(std::size_t n_max) {
    std::vector<BigInt> out;
    out.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) out.push_back(catalan(n));
    return out;
}

/// c_{n,j} = (j/n) (2n-j-1 choose n-1): the number of fresh labels on line j
/// of tableau A_n.
inline BigInt ballot(std::size_t n, std::size_t j) {
    if (n < 1 || j < 1 || j > n) {
        throw IndexOutOfRange("ballot number c(" + std::to_string(n) + "," + std::to_string(j) +
                              ") needs 1 <= j <= n");
    }
    BigInt v = binomial(static_cast<long long>(2 * n - j - 1), static_cast<long long>(n - 1));
    v *= j;
    v /= n;
    return v;
}

/// Rows 1..n_max of the ballot triangle built with the recursion
/// c_{n,j} = c_{n-1,j-1} + c_{n-1,j} + ... + c_{n-1,n-1} (the leading term is
/// absent for j = 1), seeded by c_{1,1} = 1. rows[n-1][j-1] holds c_{n,j}.
inline std::vector<std::vector<BigInt>> ballot_triangle(std::size_t n_max) {
    std::vector<std::vector<BigInt>> rows;
    if (n_max == 0) return rows;
    rows.push_back({BigInt(1)});
    for (std::size_t n = 2; n <= n_max; ++n) {
        const auto& prev = rows.back();
        std::vector<BigInt> row(n);
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t i = (j > 1 ? j - 1 : 1); i <= n - 1; ++i) row[j - 1] += prev[i - 1];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace iterforge
