#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sdlab {

// Exact arithmetic used throughout the analyses. Binary inputs stay integer
// during elimination; coefficients and sparsity values are exact rationals.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders "17/25" for proper fractions, "5" for integers.
std::string to_fraction_string(const Rational& value);

/// Fixed-point decimal rendering, truncated toward zero ("0.6800").
std::string to_decimal_string(const Rational& value, int places = 4);

/// Accepts "3", "-2/5" and plain decimals like "0.25".
Rational parse_rational(const std::string& text);

}  // namespace sdlab
