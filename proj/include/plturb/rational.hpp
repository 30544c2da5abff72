#pragma once

/// Exact rational numbers backed by GMP.
///
/// Every coordinate handled by the library is a `Rational`. Values are kept
/// in canonical form (lowest terms, positive denominator) at all times, so
/// equality is structural and the textual form `"p/q"` is unique.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plturb {

using Rational = mpq_class;

/// Thrown when a string is not a rational literal of the form `p`, `-p`, `p/q`.
class RationalSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses `"p"`, `"-p"`, `"p/q"` or `"-p/q"` with decimal digits and q != 0.
/// The result is canonicalized, so `"2/4"` parses to 1/2.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw RationalSyntaxError("not a rational literal: \"" + std::string(text) + "\"");
  };
  if (text.empty()) fail();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  std::size_t digits = 0;
  std::size_t slash = std::string_view::npos;
  for (std::size_t k = i; k < text.size(); ++k) {
    char ch = text[k];
    if (ch == '/') {
      if (slash != std::string_view::npos || digits == 0) fail();
      slash = k;
      digits = 0;
    } else if (ch >= '0' && ch <= '9') {
      ++digits;
    } else {
      fail();
    }
  }
  if (digits == 0) fail();
  std::string body(text.substr(text[0] == '+' ? 1 : 0));
  Rational q;
  if (q.set_str(body, 10) != 0) fail();
  if (slash != std::string_view::npos && q.get_den() == 0) fail();
  q.canonicalize();
  return q;
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = a + b;
  m /= 2;
  return m;
}

inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Rational abs_of(const Rational& a) {
  Rational r = a;
  if (sgn(r) < 0) r = -r;
  return r;
}

/// Bit length of the denominator; the size measure used for precision caps.
inline std::size_t denominator_bits(const Rational& q) {
  return mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

/// Approximate double value, for plotting and diagnostics only.
inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace plturb
