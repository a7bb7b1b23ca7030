#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gwsym {

using Integer = boost::multiprecision::cpp_int;

// Exact rational, always in lowest terms with positive denominator.
// All numerical values in the library are of this type; there is no
// floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline Rational pow_rational(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("pow_rational: zero to negative power");
        return Rational(1) / pow_rational(base, -e);
    }
    Rational r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Integer pow_integer(const Integer& base, unsigned e) {
    Integer r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s);

}  // namespace gwsym
