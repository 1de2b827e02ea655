#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace ruin {

// Canonical arbitrary-precision fraction backed by GMP. Expression templates are
// off so that `auto` in generic formula code always holds a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

// Accepts "p/q" or "p" (optional sign); rejects decimals and zero denominators.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_pow(const Rational& base, int exponent);

}  // namespace ruin
