#include "graphconfig/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace graphconfig {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_token(text)) {
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den.front() == '-') {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  const BigInt d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt lcm_of_denominators(const BigInt& acc, const Rational& value) {
  return boost::multiprecision::lcm(acc, BigInt(boost::multiprecision::denominator(value)));
}

}  // namespace graphconfig
