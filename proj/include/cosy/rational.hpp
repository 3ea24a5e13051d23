#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosy {

/// Exact scalar type: arbitrary-precision rational, always in canonical
/// reduced form (gcd(num, den) = 1, den > 0).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

/// Parses "p", "-p" or "p/q". Any valid input is canonicalized.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] {
        return std::invalid_argument("not a rational literal: '" + std::string(s) + "'");
    };
    if (s.empty()) throw bad();
    std::size_t pos = 0;
    auto scan_int = [&]() -> std::string {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) throw bad();
        return std::string(s.substr(start, pos - start));
    };
    BigInt num(scan_int());
    BigInt den = 1;
    if (pos < s.size()) {
        if (s[pos] != '/') throw bad();
        ++pos;
        den = BigInt(scan_int());
        if (pos != s.size()) throw bad();
        if (den == 0) throw bad();
    }
    return Rational(num, den);
}

/// Canonical "p/q" (or "p" for integers), matching the model-file format.
inline std::string to_string(const Rational& r) {
    return r.str();
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace cosy
