#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sn {

// Exact scalar arithmetic. All coefficients in the library are rationals with
// arbitrary-precision integer numerator and denominator, kept in canonical
// form (gcd(|num|, den) = 1, den > 0) by the backing type.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// (-1)^e for a possibly negative exponent.
inline int parity_sign(long long e) {
    return (e & 1LL) ? -1 : 1;
}

}  // namespace sn
