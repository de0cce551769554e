#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace graphconfig {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses `p/q` or `p` (optionally signed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Lowest-terms `p/q`, or `p` when the denominator is one.
std::string to_string(const Rational& value);

BigInt lcm_of_denominators(const BigInt& acc, const Rational& value);

}  // namespace graphconfig
