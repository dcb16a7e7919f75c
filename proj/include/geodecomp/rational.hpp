#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "geodecomp/errors.hpp"

namespace geodecomp {

/// Exact arbitrary-precision rational scalar used by all exact-mode code.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) {
    return q.template convert_to<double>();
}

namespace detail {

inline std::string trim_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string{s};
}

}  // namespace detail

namespace detail {

// digit run -> cpp_int, with leading zeros stripped so boost never reads octal
inline boost::multiprecision::cpp_int parse_digits(std::string digits, const std::string& source) {
    if (digits.empty()) throw SpecParseError("bad rational literal: '" + source + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw SpecParseError("bad rational literal: '" + source + "'");
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    return boost::multiprecision::cpp_int{digits};
}

}  // namespace detail

/// Parses "p/q" or a plain integer (optionally signed) into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s = detail::trim_ws(text);
    if (s.empty()) throw SpecParseError("empty rational literal");
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    const auto slash = s.find('/');
    boost::multiprecision::cpp_int num, den{1};
    if (slash == std::string::npos) {
        num = detail::parse_digits(s, s);
    } else {
        num = detail::parse_digits(s.substr(0, slash), s);
        den = detail::parse_digits(s.substr(slash + 1), s);
        if (den == 0) throw SpecParseError("zero denominator in '" + s + "'");
    }
    Rational q(num, den);
    return neg ? Rational(-q) : q;
}

/// As parse_rational, but also accepts plain decimals ("-0.25"), converted
/// exactly (mantissa over a power of ten). Used for command-line coordinates.
inline Rational parse_rational_or_decimal(std::string_view text) {
    const std::string s = detail::trim_ws(text);
    const auto dot = s.find('.');
    if (dot == std::string::npos) return parse_rational(s);
    if (s.find('/') != std::string::npos) throw SpecParseError("mixed decimal and fraction: '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const size_t frac_len = s.size() - dot - 1;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty()) throw SpecParseError("bad decimal literal: '" + s + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw SpecParseError("bad decimal literal: '" + s + "'");
    // avoid the octal reading of a leading zero
    const auto first_nonzero = digits.find_first_not_of('0');
    digits = first_nonzero == std::string::npos ? "0" : digits.substr(first_nonzero);
    boost::multiprecision::cpp_int num{digits}, den{1};
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    return neg ? Rational(-q) : q;
}

/// Canonical serialization: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& q) {
    return q.str();
}

}  // namespace geodecomp
