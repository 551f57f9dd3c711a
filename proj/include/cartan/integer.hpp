#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cartan {

/// Arbitrary-precision signed integer used for every multiplicity,
/// intersection number and matrix entry.
using Integer = boost::multiprecision::cpp_int;

std::string to_decimal(const Integer& value);

/// Parses an optionally signed decimal string. Throws FormatError.
Integer parse_integer(std::string_view text);

Integer abs(const Integer& value);
Integer gcd(const Integer& a, const Integer& b);

}  // namespace cartan
