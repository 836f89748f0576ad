#include "busytime/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace busytime {

Int pow2(unsigned k) { return Int(1) << k; }

unsigned ceil_log2(const Rational& x) {
  if (x < 1) throw std::invalid_argument("ceil_log2 requires x >= 1");
  unsigned p = 0;
  Rational power = 1;
  while (power < x) {
    power *= 2;
    ++p;
  }
  return p;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> Int {
    if (s.empty()) throw std::invalid_argument("empty number");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("sign without digits");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("invalid digit");
    }
    return Int(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("cost must be finite");
  return Rational(value);
}

std::string rational_to_string(const Rational& value) {
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double rational_to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace busytime
