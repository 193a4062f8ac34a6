#ifndef QHRES_ALGEBRA_RATIONAL_HPP
#define QHRES_ALGEBRA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "qhres/error.hpp"

namespace qhres::algebra {

/// Arbitrary precision integer.
using Integer = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

/// Parses "p", "-p", "p/q" (optionally surrounded by whitespace). Decimal
/// notation is rejected.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s, bool allow_sign) -> Integer {
        s = trim(s);
        bool negative = false;
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) throw ArgumentError("malformed rational '" + std::string(text) + "'");
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ArgumentError("malformed rational '" + std::string(text) + "'");
        Integer v{std::string(s)};
        return negative ? Integer(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    Integer p = parse_int(text.substr(0, slash), true);
    Integer q = parse_int(text.substr(slash + 1), false);
    if (q == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

} // namespace qhres::algebra

#endif // QHRES_ALGEBRA_RATIONAL_HPP
