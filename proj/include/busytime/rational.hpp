#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace busytime {

// All cost arithmetic is exact: power-of-two rounding and competitive-ratio
// assertions are sharp inequalities, never float comparisons.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int pow2(unsigned k);

// Smallest p >= 0 with 2^p >= x. Requires x >= 1.
unsigned ceil_log2(const Rational& x);

// Accepts "7", "-7", "3/2". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

// "7" for integers, "3/2" otherwise.
std::string rational_to_string(const Rational& value);

double rational_to_double(const Rational& value);

}  // namespace busytime
