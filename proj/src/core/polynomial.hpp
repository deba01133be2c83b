#ifndef HZ_POLYNOMIAL_HPP
#define HZ_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "exact_scalar.hpp"

namespace hz {

// Univariate polynomial with ExactScalar coefficients, indexed by power of r.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<ExactScalar> coeffs) : coeffs_(std::move(coeffs)) { strip(); }
  static Polynomial constant(const ExactScalar& c) { return Polynomial({c}); }
  static Polynomial monomial(const ExactScalar& c, size_t power);

  bool is_zero() const { return coeffs_.empty(); }
  // degree of the zero polynomial is reported as 0
  size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  ExactScalar coeff(size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : ExactScalar();
  }
  const std::vector<ExactScalar>& coeffs() const { return coeffs_; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const ExactScalar& c) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  Polynomial derivative() const;
  // p(c*r) for rational c
  Polynomial scale_argument(const Rational& c) const;
  // p(r) * r^k
  Polynomial times_r_power(size_t k) const;
  // p(r) / r; requires zero constant term
  Polynomial divide_by_r() const;

  double evaluate(double r) const;
  ExactScalar evaluate_exact(const Rational& r) const;

  std::string to_string() const;

 private:
  std::vector<ExactScalar> coeffs_;
  void strip();
};

// Associated Laguerre polynomial L^mu_lambda(r) =
// (d/dr)^mu ( e^r (d/dr)^lambda ( e^{-r} r^lambda ) ), by repeated symbolic
// differentiation. Requires 0 <= mu <= lambda.
Polynomial laguerre(unsigned lambda, unsigned mu);

// integral_0^inf r^k p(r) e^{-a r} dr, termwise via j!/a^{j+1}. Requires a > 0.
ExactScalar integrate_poly_exp(const Polynomial& p, const Rational& a, unsigned k);

}  // namespace hz

#endif
