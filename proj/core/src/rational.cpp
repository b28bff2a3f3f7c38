#include "cubedim/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "cubedim/errors.hpp"

namespace cubedim {

Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0) {
    if (e < 0) fail(Errc::InvalidParams, "0 cannot be raised to a negative power");
    return Rational(0);
  }
  const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  BigInt num = boost::multiprecision::pow(numerator(q), static_cast<unsigned>(a));
  BigInt den = boost::multiprecision::pow(denominator(q), static_cast<unsigned>(a));
  Rational out(num, den);
  if (e < 0) out = Rational(1) / out;
  return out;
}

double log_big(const BigInt& v) {
  if (v <= 0) fail(Errc::InvalidParams, "log of a non-positive value");
  if (v < (BigInt(1) << 62)) return std::log(v.convert_to<double>());
  const unsigned bits = boost::multiprecision::msb(v);  // floor(log2 v)
  const BigInt top = v >> (bits - 52);
  return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

double log_rational(const Rational& q) {
  if (q <= 0) fail(Errc::InvalidParams, "log of a non-positive rational");
  return log_big(numerator(q)) - log_big(denominator(q));
}

int compare_log_mean(const Rational& a, long la, const Rational& b, long lb) {
  if (a <= 0 || b <= 0 || la <= 0 || lb <= 0)
    fail(Errc::InvalidParams, "compare_log_mean needs positive ratios and lengths");
  using boost::multiprecision::pow;
  // log(a)/la <=> log(b)/lb  <=>  a^lb <=> b^la, both sides positive rationals.
  const BigInt lhs = pow(numerator(a), static_cast<unsigned>(lb)) *
                     pow(denominator(b), static_cast<unsigned>(la));
  const BigInt rhs = pow(numerator(b), static_cast<unsigned>(la)) *
                     pow(denominator(a), static_cast<unsigned>(lb));
  return lhs.compare(rhs);
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

ParsedRational parse_rational(const std::string& text) {
  std::string s = text;
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) fail(Errc::InvalidParams, "empty rational literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s.erase(s.begin());
  }

  ParsedRational out;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(Errc::InvalidParams, "bad rational literal '" + text + "'");
    BigInt d(den);
    if (d == 0) fail(Errc::InvalidParams, "zero denominator in '" + text + "'");
    out.value = Rational(BigInt(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ipart = s.substr(0, dot), fpart = s.substr(dot + 1);
    if (ipart.empty()) ipart = "0";
    if (!all_digits(ipart) || (!fpart.empty() && !all_digits(fpart)))
      fail(Errc::InvalidParams, "bad decimal literal '" + text + "'");
    constexpr std::size_t kMaxFractionDigits = 9;  // denominator capped at 1e9
    if (fpart.size() > kMaxFractionDigits) {
      const bool round_up = fpart[kMaxFractionDigits] >= '5';
      fpart.resize(kMaxFractionDigits);
      BigInt f(fpart.empty() ? "0" : fpart);
      if (round_up) ++f;
      out.value = Rational(BigInt(ipart)) + Rational(f, boost::multiprecision::pow(BigInt(10), kMaxFractionDigits));
      out.inexact = true;
    } else {
      const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fpart.size()));
      out.value = Rational(BigInt(ipart) * scale + BigInt(fpart.empty() ? "0" : fpart), scale);
    }
  } else {
    if (!all_digits(s)) fail(Errc::InvalidParams, "bad rational literal '" + text + "'");
    out.value = Rational(BigInt(s));
  }
  if (negative) out.value = -out.value;
  return out;
}

std::string rational_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace cubedim
