#include "ldint/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ldint {

namespace mp = boost::multiprecision;

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  const bool negative = r < 0;
  BigInt num = mp::abs(mp::numerator(r));
  BigInt den = mp::denominator(r);

  // Scale so that the integer quotient carries 64..66 significant bits.
  const long shift = 65 - (static_cast<long>(mp::msb(num)) - static_cast<long>(mp::msb(den)));
  if (shift >= 0) {
    num <<= static_cast<unsigned>(shift);
  } else {
    den <<= static_cast<unsigned>(-shift);
  }
  BigInt quotient;
  BigInt remainder;
  mp::divide_qr(num, den, quotient, remainder);

  const long bits = static_cast<long>(mp::msb(quotient)) + 1;
  const long drop = bits - 53;
  BigInt mantissa = quotient >> static_cast<unsigned>(drop);
  const BigInt dropped = quotient - (mantissa << static_cast<unsigned>(drop));
  const BigInt half = BigInt(1) << static_cast<unsigned>(drop - 1);
  if (dropped > half || (dropped == half && (remainder != 0 || (mantissa & 1) != 0))) {
    ++mantissa;
  }
  const double value = std::ldexp(mantissa.convert_to<double>(), static_cast<int>(drop - shift));
  return negative ? -value : value;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: value is not finite");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double frac = std::frexp(x, &exponent);
  // frac * 2^53 is an exact integer.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(frac, 53));
  Rational r{BigInt(scaled)};
  exponent -= 53;
  if (exponent >= 0) {
    r *= Rational(BigInt(1) << exponent);
  } else {
    r /= Rational(BigInt(1) << (-exponent));
  }
  return r;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace ldint
