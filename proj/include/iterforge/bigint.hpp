#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>

namespace iterforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

inline BigInt pow2(std::size_t e) {
    BigInt r = 1;
    r <<= e;
    return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

inline bool is_integral(const Rational& v) {
    return boost::multiprecision::denominator(v) == 1;
}

inline double to_double(const Rational& v) { return v.convert_to<double>(); }

} // namespace iterforge
