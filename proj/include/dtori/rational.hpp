#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "dtori/error.hpp"

namespace dtori {

using Integer = mpz_class;
using Rational = mpq_class;

/// p/q in lowest terms with positive denominator.
inline Rational rat(const Integer& p, const Integer& q = 1) {
  if (q == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

/// Representative of q modulo m in [0, m).
inline Rational mod_into(const Rational& q, const Rational& m) {
  Rational ratio = q / m;
  Rational r = q - m * Rational(floor_of(ratio));
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

namespace detail {

inline bool parse_integer(std::string_view text, Integer& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) return false;
  for (std::size_t k = i; k < text.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) return false;
  out = Integer(std::string(text.substr(i)), 10);
  if (negative) out = -out;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "p", "-p" or "p/q". Throws ParseError (position 0) on anything else.
inline Rational parse_rational(std::string_view text) {
  text = detail::trim(text);
  Integer num, den = 1;
  const auto slash = text.find('/');
  bool ok;
  if (slash == std::string_view::npos) {
    ok = detail::parse_integer(text, num);
  } else {
    ok = detail::parse_integer(detail::trim(text.substr(0, slash)), num) &&
         detail::parse_integer(detail::trim(text.substr(slash + 1)), den);
  }
  if (!ok) throw ParseError(0, "malformed rational '" + std::string(text) + "'");
  if (den == 0) throw ParseError(0, "zero denominator in '" + std::string(text) + "'");
  return rat(num, den);
}

}  // namespace dtori
