#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace crossmin {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational coordinate type. Always in lowest terms with a positive
// denominator (maintained by the backend); all arithmetic is exact.
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Parses "p", "-p" or "p/q". Returns false on malformed input or q == 0.
bool try_parse_rat(std::string_view text, Rat& out);

// Renders as "p" or "p/q" with positive q, matching the instance file syntax.
std::string rat_to_string(const Rat& r);

}  // namespace crossmin
