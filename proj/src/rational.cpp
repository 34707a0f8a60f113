#include "curlset/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace curlset {
namespace {

Integer parseDigits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  return Integer(std::string(digits));
}

}  // namespace

Rational parseRational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  if (rest.starts_with(kUnicodeMinus)) {
    negative = true;
    rest.remove_prefix(kUnicodeMinus.size());
  } else if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  Integer num, den(1);
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    num = parseDigits(rest.substr(0, slash), text);
    den = parseDigits(rest.substr(slash + 1), text);
  } else {
    num = parseDigits(rest, text);
  }
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r = Rational(num) / Rational(den);
  return negative ? Rational(-r) : r;
}

std::string formatRational(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool lexLess(const VectorQ& a, const VectorQ& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (isZero(base)) throw std::domain_error("zero to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  Rational result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace curlset
