#ifndef HZ_RATIONAL_HPP
#define HZ_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace hz {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rational: cannot parse '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// "num/den", or just "num" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

Integer factorial(unsigned n);

// q^e for integer e (negative e inverts; q must be nonzero then).
Rational pow_rational(const Rational& q, long e);

}  // namespace hz

#endif
