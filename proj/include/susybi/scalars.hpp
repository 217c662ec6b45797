#pragma once

// Coefficient rings for the series algebra.
//
// Two rings are supported and kept as distinct C++ types, so mixed-ring
// arithmetic does not compile:
//   * Rational — arbitrary-precision rationals (GMP backed), always held in
//     lowest terms with positive denominator.
//   * BigFloat — arbitrary-precision floats (MPFR backed), defaulting to
//     50 significant decimal digits.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace susybi {

using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultFloatDigits = 50;
inline constexpr unsigned kMinFloatDigits = 10;

/// Sets the working precision (significant decimal digits) of BigFloat.
inline void set_float_digits(unsigned digits) {
    if (digits < kMinFloatDigits)
        throw std::invalid_argument("set_float_digits: at least " +
                                    std::to_string(kMinFloatDigits) + " digits required, got " +
                                    std::to_string(digits));
    BigFloat::default_precision(digits);
}

inline unsigned float_digits() { return BigFloat::default_precision(); }

namespace detail {
// Establishes the 50-digit default before main() runs in any binary that
// includes this header.
inline const bool float_precision_initialized = [] {
    BigFloat::default_precision(kDefaultFloatDigits);
    return true;
}();
}  // namespace detail

/// Parses "p", "-p" or "p/q" into an exact rational in canonical form.
inline Rational parse_rational(std::string_view text) {
    const auto fail = [&] {
        throw std::invalid_argument("parse_rational: malformed rational '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    const auto slash = text.find('/');
    const std::string_view num_part = text.substr(0, slash);
    const std::string_view den_part =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    const auto is_integer = [](std::string_view s) {
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        return true;
    };
    if (!is_integer(num_part) || !is_integer(den_part)) fail();
    const Rational num{std::string(num_part)};
    const Rational den{std::string(den_part)};
    if (den == 0) fail();
    return num / den;  // division canonicalizes
}

/// Ring-dependent behaviour: naming, exactness, string round-trip.
template <class Scalar>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static constexpr bool is_exact = true;
    static constexpr const char* name = "rational";

    static std::string to_string(const Rational& v) {
        std::string s = numerator(v).str();
        if (denominator(v) != 1) {
            s += '/';
            s += denominator(v).str();
        }
        return s;
    }
    static Rational from_string(std::string_view s) { return parse_rational(s); }
};

template <>
struct RingTraits<BigFloat> {
    static constexpr bool is_exact = false;
    static constexpr const char* name = "float";

    static std::string to_string(const BigFloat& v) { return v.str(); }
    static BigFloat from_string(std::string_view s) {
        if (s.find('/') != std::string_view::npos) {
            const Rational q = parse_rational(s);
            return BigFloat(numerator(q)) / BigFloat(denominator(q));
        }
        try {
            return BigFloat(std::string(s));
        } catch (const std::exception&) {
            throw std::invalid_argument("RingTraits<BigFloat>: malformed value '" + std::string(s) + "'");
        }
    }
};

/// p/q as a value of the requested ring.
template <class Scalar>
Scalar scalar_ratio(long long p, long long q) {
    return Scalar(p) / Scalar(q);
}

}  // namespace susybi
