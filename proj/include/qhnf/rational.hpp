#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cctype>
#include <string>
#include <type_traits>

#include "errors.hpp"

namespace qhnf {

// Exact rational scalar: arbitrary-precision, always reduced, denominator > 0.
// GMP canonicalizes after every operation.
using rational = boost::multiprecision::mpq_rational;
using bigint = boost::multiprecision::mpz_int;

// Formats as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const rational& q) {
    return q.str();
}

// Parses "p", "p/q", or "-p/q" (optional leading +). Exact; never lossy.
// line/col feed the error message when parsing embedded in a file.
inline rational parse_rational(const std::string& s, int line = 0, int col = 0) {
    auto bad = [&](const std::string& msg) -> rational {
        throw parse_error("bad rational '" + s + "': " + msg, line, col);
    };
    if (s.empty()) return bad("empty");
    std::string num = s, den = "1";
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
        if (num.empty() || den.empty()) return bad("missing numerator or denominator");
        if (den.find('/') != std::string::npos) return bad("multiple '/'");
    }
    auto check_int = [&](const std::string& part, bool sign_ok) {
        std::size_t i = 0;
        if (sign_ok && (part[0] == '+' || part[0] == '-')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    if (!check_int(num, true)) return bad("numerator not an integer");
    if (!check_int(den, false)) return bad("denominator not a positive integer");
    if (num[0] == '+') num.erase(0, 1);
    bigint n(num), d(den);
    if (d == 0) return bad("zero denominator");
    return rational(n) / rational(d);
}

// Minimal scalar classification used by the generic linear algebra:
// exact scalars pivot on the first nonzero entry, floating scalars pivot by
// magnitude with a scale-relative zero threshold.
template <class S>
inline constexpr bool is_floating_scalar = std::is_floating_point_v<S>;

} // namespace qhnf
