#include "ruin/rational.hpp"

#include <cctype>

#include "ruin/errors.hpp"

namespace ruin {

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw RuinError(ErrorKind::ParseError, "not a rational: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  BigInt n(num), d(den);
  if (d == 0) throw RuinError(ErrorKind::ParseError, "zero denominator: '" + text + "'");
  return Rational(n, d);
}

std::string to_string(const Rational& q) { return q.str(); }

Rational rational_pow(const Rational& base, int exponent) {
  Rational acc = 1;
  Rational b = exponent < 0 ? Rational(1 / base) : base;
  for (int e = exponent < 0 ? -exponent : exponent; e > 0; --e) acc *= b;
  return acc;
}

}  // namespace ruin
