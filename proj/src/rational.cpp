#include "sdlab/rational.hpp"

#include <stdexcept>

namespace sdlab {

namespace {

// cpp_int's string constructor reads a leading '0' as an octal prefix; force base 10.
BigInt decimal_int(const std::string& text) {
  std::string body = text;
  std::string sign;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    if (body.front() == '-') sign = "-";
    body.erase(body.begin());
  }
  if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad integer literal \"" + text + "\"");
  }
  const auto first = body.find_first_not_of('0');
  body = (first == std::string::npos) ? "0" : body.substr(first);
  return BigInt(sign + body);
}

}  // namespace

std::string to_fraction_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& value, int places) {
  BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt scaled = num * scale / den;
  const BigInt whole = scaled / scale;
  if (places == 0) return sign + whole.str();
  const BigInt remainder = scaled % scale;
  std::string frac = remainder.str();
  frac.insert(frac.begin(), static_cast<std::size_t>(places) - frac.size(), '0');
  return sign + whole.str() + "." + frac;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt num = decimal_int(text.substr(0, slash));
    const BigInt den = decimal_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t places = text.size() - dot - 1;
    if (places == 0) throw std::invalid_argument("bad rational literal \"" + text + "\"");
    BigInt den = 1;
    for (std::size_t i = 0; i < places; ++i) den *= 10;
    return Rational(decimal_int(digits), den);
  }
  return Rational(decimal_int(text));
}

}  // namespace sdlab
