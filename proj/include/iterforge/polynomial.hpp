#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iterforge {

/**
 * Sparse polynomial in two variables with exact integer coefficients. The key
 * (s, t) stands for the monomial a^s b^t. Zero coefficients are never stored.
 */
class BiPoly {
public:
    using Exponent = std::pair<unsigned, unsigned>;
    using Terms = std::map<Exponent, BigInt>;

    BiPoly() = default;
    static BiPoly constant(const BigInt& c) { return monomial(0, 0, c); }
    static BiPoly monomial(unsigned s, unsigned t, const BigInt& c = 1) {
        BiPoly p;
        p.add_term(s, t, c);
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    BigInt coefficient(unsigned s, unsigned t) const {
        auto it = terms_.find({s, t});
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    void add_term(unsigned s, unsigned t, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(Exponent{s, t}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
        return *this;
    }
    friend BiPoly operator+(BiPoly x, const BiPoly& y) { return x += y; }
    friend BiPoly operator-(BiPoly x, const BiPoly& y) { return x -= y; }

    friend BiPoly operator*(const BiPoly& x, const BiPoly& y) {
        BiPoly out;
        for (const auto& [ex, cx] : x.terms_) {
            for (const auto& [ey, cy] : y.terms_) out.add_term(ex.first + ey.first, ex.second + ey.second, cx * cy);
        }
        return out;
    }

    BiPoly scaled(const BigInt& c) const {
        BiPoly out;
        for (const auto& [e, v] : terms_) out.add_term(e.first, e.second, v * c);
        return out;
    }

    /// Multiplies by a^ds b^dt.
    BiPoly shifted(unsigned ds, unsigned dt) const {
        BiPoly out;
        for (const auto& [e, v] : terms_) out.terms_.emplace(Exponent{e.first + ds, e.second + dt}, v);
        return out;
    }

    BigInt evaluate(const BigInt& a, const BigInt& b) const {
        BigInt total = 0;
        for (const auto& [e, c] : terms_) total += c * pow(a, e.first) * pow(b, e.second);
        return total;
    }

    /// The polynomial in a alone obtained by b := 1 - a.
    BiPoly substitute_b_one_minus_a() const {
        BiPoly out;
        const BiPoly one_minus_a = constant(1) - monomial(1, 0);
        for (const auto& [e, c] : terms_) {
            BiPoly factor = monomial(e.first, 0, c);
            for (unsigned i = 0; i < e.second; ++i) factor = factor * one_minus_a;
            out += factor;
        }
        return out;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
        return d;
    }

    /// Terms in descending (s, t) order, e.g. "a^2 + a*b + b".
    std::string to_string(char x = 'a', char y = 'b') const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto [s, t] = it->first;
            BigInt c = it->second;
            const bool negative = c < 0;
            if (negative) c = -c;
            if (out.empty()) out += negative ? "-" : "";
            else out += negative ? " - " : " + ";
            std::string mono;
            auto power = [&](char v, unsigned e) {
                if (e == 0) return;
                if (!mono.empty()) mono += '*';
                mono += v;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            power(x, s);
            power(y, t);
            if (mono.empty()) out += c.str();
            else if (c == 1) out += mono;
            else out += c.str() + "*" + mono;
        }
        return out;
    }

    /**
     * Parses sums of monomials such as "a^2 + 2*a*b - b" or "s^2+t^2+2". The
     * two variable names are given; '*' between factors is optional.
     */
    static BiPoly parse(std::string_view text, char x = 'a', char y = 'b') {
        BiPoly out;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        auto fail = [&](const std::string& why) -> void {
            throw InvalidSpec("polynomial \"" + std::string(text) + "\": " + why);
        };
        auto number = [&]() -> BigInt {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            return BigInt(std::string(text.substr(start, i - start)));
        };
        skip();
        if (i == text.size()) fail("empty");
        bool first = true;
        while (true) {
            skip();
            if (i == text.size()) break;
            int sign = 1;
            if (text[i] == '+' || text[i] == '-') {
                sign = text[i] == '-' ? -1 : 1;
                ++i;
                skip();
            } else if (!first) {
                fail("expected + or - at offset " + std::to_string(i));
            }
            first = false;
            BigInt coef = 1;
            unsigned s = 0, t = 0;
            bool any = false;
            while (i < text.size()) {
                skip();
                if (i == text.size()) break;
                const char c = text[i];
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    coef *= number();
                    any = true;
                } else if (c == x || c == y) {
                    ++i;
                    unsigned e = 1;
                    skip();
                    if (i < text.size() && text[i] == '^') {
                        ++i;
                        skip();
                        if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("bad exponent");
                        e = number().convert_to<unsigned>();
                    }
                    (c == x ? s : t) += e;
                    any = true;
                } else if (c == '*') {
                    ++i;
                    continue;
                } else {
                    break;
                }
                skip();
                if (i < text.size() && text[i] == '*') ++i;
            }
            if (!any) fail("missing term at offset " + std::to_string(i));
            out.add_term(s, t, coef * sign);
        }
        return out;
    }

    friend bool operator==(const BiPoly& x, const BiPoly& y) { return x.terms_ == y.terms_; }
    friend bool operator<(const BiPoly& x, const BiPoly& y) { return x.terms_ < y.terms_; }

private:
    static BigInt pow(const BigInt& base, unsigned e) {
        BigInt r = 1;
        for (unsigned i = 0; i < e; ++i) r *= base;
        return r;
    }

    Terms terms_;
};

/// Formal power series truncated after t^degree.
class PowerSeries {
public:
    explicit PowerSeries(std::size_t degree) : c_(degree + 1, 0) {}
    PowerSeries(std::size_t degree, std::vector<BigInt> coefficients) : c_(std::move(coefficients)) {
        c_.resize(degree + 1);
    }

    static PowerSeries one(std::size_t degree) {
        PowerSeries p(degree);
        p.c_[0] = 1;
        return p;
    }

    std::size_t degree() const noexcept { return c_.size() - 1; }
    const BigInt& operator[](std::size_t i) const { return c_.at(i); }
    BigInt& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<BigInt>& coefficients() const noexcept { return c_; }

    PowerSeries& operator+=(const PowerSeries& o) {
        for (std::size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    friend PowerSeries operator+(PowerSeries x, const PowerSeries& y) { return x += y; }

    friend PowerSeries operator*(const PowerSeries& x, const PowerSeries& y) {
        PowerSeries out(std::min(x.degree(), y.degree()));
        for (std::size_t i = 0; i <= out.degree(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; i + j <= out.degree(); ++j) out.c_[i + j] += x.c_[i] * y.c_[j];
        }
        return out;
    }

    PowerSeries pow(std::size_t e) const {
        PowerSeries result = one(degree());
        PowerSeries base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    /// Multiplies by t, dropping the coefficient that falls off the end.
    PowerSeries times_t() const {
        PowerSeries out(degree());
        for (std::size_t i = 0; i < degree(); ++i) out.c_[i + 1] = c_[i];
        return out;
    }

    friend bool operator==(const PowerSeries& x, const PowerSeries& y) { return x.c_ == y.c_; }

private:
    std::vector<BigInt> c_;
};

} // namespace iterforge
