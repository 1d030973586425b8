#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/catalan.hpp"
#include "iterforge/error.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace iterforge {

/// Which tableaux contribute lines: A_n only, B_n only, or both.
enum class TableauMode { a, b, ab };

inline bool uses_a(TableauMode m) { return m != TableauMode::b; }
inline bool uses_b(TableauMode m) { return m != TableauMode::a; }

inline std::string to_string(TableauMode m) {
    switch (m) {
    case TableauMode::a: return "A";
    case TableauMode::b: return "B";
    case TableauMode::ab: return "AB";
    }
    return "?";
}

inline TableauMode parse_mode(const std::string& s) {
    if (s == "A" || s == "a") return TableauMode::a;
    if (s == "B" || s == "b") return TableauMode::b;
    if (s == "AB" || s == "ab" || s == "A+B" || s == "AxB") return TableauMode::ab;
    throw InvalidSpec("unknown tableau mode \"" + s + "\" (expected A, B or AB)");
}

/// Lines of the chosen tableaux at order n, each a list of labels.
inline std::vector<std::vector<Label>> tableau_lines(const TableauSet& set, std::size_t n, TableauMode mode) {
    std::vector<std::vector<Label>> lines;
    if (uses_a(mode)) {
        for (const auto& row : set.a(n).rows) lines.push_back(row);
    }
    if (uses_b(mode)) {
        for (const auto& row : set.b(n).rows) lines.push_back(row);
    }
    return lines;
}

/// Square bit matrix with packed 64-bit rows.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const noexcept { return n_; }

    bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
    std::size_t words_per_row() const noexcept { return words_; }

    std::size_t row_popcount(std::size_t i) const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(row(i)[w]));
        return c;
    }

    friend bool operator==(const BitMatrix& x, const BitMatrix& y) { return x.n_ == y.n_ && x.bits_ == y.bits_; }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/**
 * delta(i,j) over the labels of order n. Entry (i-1, j-1) is set when labels
 * i and j share a line of the chosen tableaux; the diagonal is always set.
 */
struct IncidenceMatrix {
    std::size_t order = 0;
    TableauMode mode = TableauMode::a;
    BitMatrix bits;

    std::size_t size() const noexcept { return bits.size(); }
    int delta(Label i, Label j) const { return bits.get(i - 1, j - 1) ? 1 : 0; }
    std::size_t row_sum(Label i) const { return bits.row_popcount(i - 1); }
};

/// Reducibility of t = u read off the trees: a shared cherry position, or in
/// B modes both left or both right children being the variable.
inline int delta_oracle(const Term& t, const Term& u, TableauMode mode) {
    if (t.order() != u.order()) {
        throw OrderMismatch("orders " + std::to_string(t.order()) + " and " + std::to_string(u.order()) + " differ");
    }
    if (t.order() == 0) throw OrderZero("identities need order at least 1");
    if (t == u) return 1;
    if (uses_a(mode)) {
        const auto ct = cherries(t);
        const auto cu = cherries(u);
        for (std::size_t p : ct) {
            if (std::binary_search(cu.begin(), cu.end(), p)) return 1;
        }
    }
    if (uses_b(mode)) {
        if (t.right().is_leaf() && u.right().is_leaf()) return 1;
        if (t.left().is_leaf() && u.left().is_leaf()) return 1;
    }
    return 0;
}

inline IncidenceMatrix incidence_matrix(const TableauSet& set, std::size_t n, TableauMode mode) {
    const std::size_t size = set.catalog(n).size();
    const auto lines = tableau_lines(set, n, mode);

    std::vector<std::vector<std::uint64_t>> masks;
    std::vector<std::vector<std::size_t>> lines_of(size);
    const std::size_t words = (size + 63) / 64;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        std::vector<std::uint64_t> mask(words, 0);
        for (Label l : lines[k]) {
            mask[(l - 1) / 64] |= std::uint64_t{1} << ((l - 1) % 64);
            lines_of[l - 1].push_back(k);
        }
        masks.push_back(std::move(mask));
    }

    IncidenceMatrix m{n, mode, BitMatrix(size)};
    for (std::size_t i = 0; i < size; ++i) {
        std::uint64_t* row = m.bits.row(i);
        for (std::size_t k : lines_of[i]) {
            for (std::size_t w = 0; w < words; ++w) row[w] |= masks[k][w];
        }
        m.bits.set(i, i);
    }
    return m;
}

/// I_n: ordered pairs with delta = 1, diagonal included.
inline BigInt count_reducible(const IncidenceMatrix& m) {
    BigInt total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) total += m.bits.row_popcount(i);
    return total;
}

/// Unordered pairs i < j with delta = 1.
inline BigInt count_reducible_unordered(const IncidenceMatrix& m) {
    return (count_reducible(m) - m.size()) / 2;
}

/// Unordered pairs i < j with delta = 0, in lexicographic order.
inline std::vector<std::pair<Label, Label>> irreducible_pairs(const IncidenceMatrix& m) {
    std::vector<std::pair<Label, Label>> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (!m.bits.get(i, j)) out.emplace_back(static_cast<Label>(i + 1), static_cast<Label>(j + 1));
        }
    }
    return out;
}

/// I_n = sum_{k>=1} (-1)^{k-1} (n-k+1 choose k) S_{n-k}^2.
inline BigInt i_n_formula(std::size_t n) {
    BigInt total = 0;
    for (std::size_t k = 1; k <= n && k <= n - k + 1; ++k) {
        const BigInt s = catalan(n - k);
        BigInt term = binomial(static_cast<long long>(n - k + 1), static_cast<long long>(k)) * s * s;
        if (k % 2 == 1) total += term;
        else total -= term;
    }
    return total;
}

/// Row sum of a label of multiplicity k: sum_{v=1}^{k} (-1)^{v-1} (k choose v) S_{n-v}.
inline BigInt row_sum_value(std::size_t n, std::size_t k) {
    BigInt total = 0;
    for (std::size_t v = 1; v <= k && v <= n; ++v) {
        BigInt term = binomial(static_cast<long long>(k), static_cast<long long>(v)) * catalan(n - v);
        if (v % 2 == 1) total += term;
        else total -= term;
    }
    return total;
}

/// T^{A+B}_{n,k} = T_{n,k} + 2 (T_{n-1,k-1} - T_{n-1,k}).
inline BigInt t_nk_aplusb(std::size_t n, std::size_t k) {
    if (n < 2) throw IndexOutOfRange("the A+B multiplicity formula needs n >= 2");
    const BigInt prev_lower = k >= 1 ? multiplicity_count_formula(n - 1, k - 1) : BigInt(0);
    return multiplicity_count_formula(n, k) + 2 * (prev_lower - multiplicity_count_formula(n - 1, k));
}

inline std::map<std::size_t, std::size_t> multiplicity_histogram_aplusb(const TableauSet& set, std::size_t n) {
    return multiplicity_histogram(tableau_lines(set, n, TableauMode::ab), set.catalog(n).size());
}

struct FrequencyRow {
    std::size_t n = 0;
    BigInt catalan;
    std::optional<BigInt> i_matrix;
    BigInt i_formula;
    Rational ratio;
    Rational one_minus_ratio;
    double exp_minus_n_over_16 = 0.0;
};

/// Reducible fraction I_n/S_n^2 for 3 <= n <= n_max. The matrix column is
/// filled for orders available in the set.
inline std::vector<FrequencyRow> frequency_report(const TableauSet& set, std::size_t n_max) {
    if (n_max < 3) throw IndexOutOfRange("frequency report needs n_max >= 3");
    std::vector<FrequencyRow> rows;
    for (std::size_t n = 3; n <= n_max; ++n) {
        FrequencyRow r;
        r.n = n;
        r.catalan = catalan(n);
        r.i_formula = i_n_formula(n);
        if (n <= set.max_order()) r.i_matrix = count_reducible(incidence_matrix(set, n, TableauMode::a));
        const BigInt& i = r.i_matrix ? *r.i_matrix : r.i_formula;
        r.ratio = Rational(i, r.catalan * r.catalan);
        r.one_minus_ratio = 1 - r.ratio;
        r.exp_minus_n_over_16 = std::exp(-static_cast<double>(n) / 16.0);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string frequency_csv(const std::vector<FrequencyRow>& rows) {
    std::ostringstream out;
    out << "n,S_n,I_n_matrix,I_n_formula,ratio,one_minus_ratio,exp_minus_n_over_16\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.catalan << ',' << (r.i_matrix ? to_string(*r.i_matrix) : std::string()) << ','
            << r.i_formula << ',' << to_string(r.ratio) << ',' << to_string(r.one_minus_ratio) << ',';
        out.precision(6);
        out << std::fixed << r.exp_minus_n_over_16 << '\n';
        out.unsetf(std::ios::fixed);
    }
    return out.str();
}

} // namespace iterforge
