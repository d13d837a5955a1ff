#pragma once

// Exact scalar arithmetic: arbitrary-precision integers and rationals.
//
// Rationals are always stored in lowest terms with a positive denominator,
// so two values are equal iff their representations are equal.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace abelsim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat &q) { return numerator(q); }
inline Int den(const Rat &q) { return denominator(q); }

inline bool is_integer(const Rat &q) { return denominator(q) == 1; }

inline Int int_abs(const Int &a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(const Int &a, const Int &b) { return boost::multiprecision::gcd(a, b); }

inline Int int_lcm(const Int &a, const Int &b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    return int_abs(a / int_gcd(a, b) * b);
}

// Floor division. Built-in integer division truncates toward zero.
inline Int floor_div(const Int &a, const Int &b) {
    if (b == 0) {
        throw std::domain_error("floor_div: division by zero");
    }
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

// Representative of a modulo b in [0, |b|). Requires b != 0.
inline Int mod_floor(const Int &a, const Int &b) {
    return a - b * floor_div(a, b);
}

inline Int rat_floor(const Rat &q) { return floor_div(num(q), den(q)); }

// Representative of q modulo m in [0, m). Requires m > 0.
inline Rat rat_mod(const Rat &q, const Rat &m) {
    if (m <= 0) {
        throw std::domain_error("rat_mod: modulus must be positive");
    }
    Rat r = q - m * Rat(rat_floor(q / m));
    // Guard against any residual representative drift.
    if (r < 0) {
        r += m;
    }
    if (r >= m) {
        r -= m;
    }
    return r;
}

// Nearest integer, ties broken upward (used for minimal representatives).
inline Int round_half_up(const Rat &q) { return rat_floor(q + Rat(1, 2)); }

inline std::string to_string(const Int &a) { return a.str(); }

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat &q) {
    if (is_integer(q)) {
        return num(q).str();
    }
    return num(q).str() + "/" + den(q).str();
}

// Parses "p" or "p/q" with optional leading '-'. Throws std::invalid_argument
// on malformed input or zero denominator.
inline Rat parse_rational(const std::string &text) {
    auto fail = [&text]() -> Rat {
        throw std::invalid_argument("malformed rational '" + text + "'");
    };
    auto parse_int = [&](const std::string &part, bool allow_sign) -> Int {
        if (part.empty()) {
            fail();
        }
        size_t start = allow_sign && (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) {
            fail();
        }
        for (size_t k = start; k < part.size(); k++) {
            if (part[k] < '0' || part[k] > '9') {
                fail();
            }
        }
        return Int(part);
    };
    size_t slash = text.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int(text, true));
    }
    Int p = parse_int(text.substr(0, slash), true);
    Int q = parse_int(text.substr(slash + 1), false);
    if (q == 0) {
        fail();
    }
    return Rat(p, q);
}

}  // namespace abelsim
