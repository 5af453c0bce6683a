#include "crossmin/rational.hpp"

#include <cctype>

namespace crossmin {

static bool parse_bigint(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = neg ? -v : v;
  return true;
}

bool try_parse_rat(std::string_view text, Rat& out) {
  auto slash = text.find('/');
  BigInt num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_bigint(text, num)) return false;
  } else {
    if (!parse_bigint(text.substr(0, slash), num)) return false;
    if (!parse_bigint(text.substr(slash + 1), den)) return false;
    if (den == 0) return false;
  }
  out = Rat(num, den);
  return true;
}

std::string rat_to_string(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

}  // namespace crossmin
