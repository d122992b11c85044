#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "hkverify/errors.hpp"

namespace hkverify {

/// Exact rational, always in lowest terms with a positive denominator.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Scalar& s) { return s.str(); }

inline double to_double(const Scalar& s) { return s.convert_to<double>(); }

/// Parses "3", "-7", "1/2", "-3/2" (surrounding whitespace allowed).
inline Scalar parse_scalar(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  auto parse_int = [&](std::string_view v) -> Integer {
    v = trim(v);
    std::string_view digits = v;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw ParseError("", "empty integer in scalar '" + std::string(text) + "'");
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("", "invalid scalar '" + std::string(text) + "'");
    }
    return Integer(std::string(v.front() == '+' ? v.substr(1) : v));
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  if (den < 0) throw ParseError("", "negative denominator in '" + std::string(text) + "'");
  return Scalar(parse_int(text.substr(0, slash)), den);
}

}  // namespace hkverify
