#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ldint {

/// Exact rational, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Correctly rounded (round-half-even) conversion to double.
double to_double(const Rational& r);

/// Exact binary value of a finite double.
Rational from_double(double x);

BigInt factorial(unsigned n);

std::string to_string(const Rational& r);

}  // namespace ldint
