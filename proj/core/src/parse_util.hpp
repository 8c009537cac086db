#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "ecscan/curve.hpp"

namespace ecscan::detail {

inline std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(strip(cur));
  return out;
}

inline Integer parse_integer(const std::string& text) {
  std::string t = strip(text);
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  Integer v;
  if (t.empty() || v.set_str(t, 10) != 0) throw DomainError("not an integer: '" + text + "'");
  return v;
}

inline Rational parse_rational(const std::string& text) {
  std::string t = strip(text);
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(t));
  Integer den = parse_integer(t.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator: '" + text + "'");
  Rational q(parse_integer(t.substr(0, slash)), den);
  q.canonicalize();
  return q;
}

}  // namespace ecscan::detail
