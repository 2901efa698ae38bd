#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace orbihear {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using IntVector = std::vector<std::int64_t>;
using RationalPoint = std::vector<Rational>;

/// Parses "p/q", "p", or a finite decimal such as "-0.125" exactly.
/// Throws Error(ParseError) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

/// Exact value of a finite double.
Rational exact_rational(double value);

/// Shortest continued-fraction convergent within rel_tol * max(1, |value|)
/// of a finite double.
Rational approximate_rational(double value, double rel_tol = 1e-12);

std::int64_t gcd_of(const IntVector& v);

}  // namespace orbihear
