#ifndef HZ_EXACT_SCALAR_HPP
#define HZ_EXACT_SCALAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace hz {

// Finite sum of terms coeff * sqrt(radicand) with rational coeff and
// square-free positive integer radicand. Radicand 1 is the rational part.
// Closed under +, -, *; the square of a single-term value is rational.
class ExactScalar {
 public:
  struct Term {
    Rational coeff;
    Integer radicand;  // square-free, >= 1
  };

  ExactScalar() = default;
  ExactScalar(const Rational& q);
  ExactScalar(long n) : ExactScalar(Rational(n)) {}

  // Exact square root of a nonnegative rational. Throws on negative input.
  static ExactScalar sqrt(const Rational& q);

  ExactScalar operator-() const;
  ExactScalar operator+(const ExactScalar& o) const;
  ExactScalar operator-(const ExactScalar& o) const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  bool operator==(const ExactScalar& o) const;
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  ExactScalar square() const { return *this * *this; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  // Value as a pure rational; throws if irrational terms remain.
  Rational rational_value() const;

  double to_double() const;
  std::string to_string() const;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  // kept sorted by radicand, no duplicate radicands, no zero coeffs
  std::vector<Term> terms_;
  void normalize();
};

// Largest-square extraction: returns (free, root) with n = free * root^2
// and free square-free. n must be positive.
std::pair<Integer, Integer> extract_square(const Integer& n);

}  // namespace hz

#endif
