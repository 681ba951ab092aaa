#include "polyskel/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polyskel {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
  q.canonicalize();
  return q;
}

Rational make_ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(BigInt(std::to_string(num), 10), BigInt(std::to_string(den), 10));
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::domain_error("zero denominator");
    q.canonicalize();
    return q;
  }

  // Decimal with optional exponent.
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    const char c = s[pos];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad decimal: " + s);
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++scale;
    } else {
      throw std::invalid_argument("bad decimal: " + s);
    }
  }
  if (!any_digit) throw std::invalid_argument("bad decimal: " + s);
  if (pos < s.size()) {
    const std::string exp = s.substr(pos + 1);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent: " + s);
    }
    if (used != exp.size()) throw std::invalid_argument("bad exponent: " + s);
    scale -= e;
  }

  BigInt num(digits, 10);
  BigInt den(1);
  if (scale > 0) {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  } else if (scale < 0) {
    BigInt f;
    mpz_ui_pow_ui(f.get_mpz_t(), 10, static_cast<unsigned long>(-scale));
    num *= f;
  }
  if (negative) num = -num;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& q, unsigned k) {
  Rational out(1);
  for (unsigned i = 0; i < k; ++i) out *= q;
  return out;
}

}  // namespace polyskel
