#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cubedim {

// All cube masses, ratios and spec parameters are exact rationals; logarithms
// are taken only at the reporting boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// q^e for integer e (negative allowed when q != 0).
Rational pow_rational(const Rational& q, long e);

// Natural log of arbitrarily large positive values (double conversion of a
// cpp_int overflows past ~1e308, so this works from the bit length).
double log_big(const BigInt& v);
double log_rational(const Rational& q);

// Sign of log(a)/la - log(b)/lb for positive rationals and positive integer
// lengths, decided exactly via the cross power a^lb <=> b^la.
int compare_log_mean(const Rational& a, long la, const Rational& b, long lb);

struct ParsedRational {
  Rational value;
  bool inexact = false;  // decimal input truncated to 9 fractional digits
};

// Accepts "num/den", plain integers, and decimal literals. Decimals are read
// digit-exactly ("0.05" -> 1/20); more than 9 fractional digits are rounded
// to denominator 1e9 and flagged inexact.
ParsedRational parse_rational(const std::string& text);

std::string rational_string(const Rational& q);  // "num/den", or "num" when den == 1

}  // namespace cubedim
