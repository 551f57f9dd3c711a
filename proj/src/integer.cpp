#include "cartan/integer.hpp"

#include "cartan/errors.hpp"

#include <cctype>

namespace cartan {

std::string to_decimal(const Integer& value) { return value.str(); }

Integer parse_integer(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw FormatError("not an integer: '" + std::string(text) + "'");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw FormatError("not an integer: '" + std::string(text) + "'");
    }
    value *= 10;
    value += c - '0';
  }
  return negative ? Integer(-value) : value;
}

Integer abs(const Integer& value) { return value < 0 ? Integer(-value) : value; }

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

}  // namespace cartan
