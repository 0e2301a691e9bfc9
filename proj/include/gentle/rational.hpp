#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "gentle/error.hpp"

namespace gentle {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or a bare integer "p". Rejects decimals and q = 0.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw PreconditionError("malformed rational '" + std::string(text) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw PreconditionError("malformed rational '" + std::string(text) + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw PreconditionError("malformed rational '" + std::string(text) + "'");
      v = v * 10 + (s[i] - '0');
      if (v > (std::int64_t{1} << 52))
        throw PreconditionError("rational component too large in '" + std::string(text) + "'");
    }
    return neg ? -v : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto num = parse_int(text.substr(0, slash));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// True iff 0 < eps < 1.
inline bool is_open_unit(const Rational& eps) { return eps > 0 && eps < 1; }

}  // namespace gentle
