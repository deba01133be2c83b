#include "polynomial.hpp"

namespace hz {

void Polynomial::strip() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(const ExactScalar& c, size_t power) {
  std::vector<ExactScalar> v(power + 1);
  v[power] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<ExactScalar> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<ExactScalar> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<ExactScalar> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      v[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const ExactScalar& c) const {
  std::vector<ExactScalar> v = coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<ExactScalar> v(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i)
    v[i - 1] = coeffs_[i] * ExactScalar(Rational(static_cast<long>(i)));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::scale_argument(const Rational& c) const {
  std::vector<ExactScalar> v = coeffs_;
  Rational p(1);
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] *= ExactScalar(p);
    p *= c;
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::times_r_power(size_t k) const {
  if (is_zero()) return Polynomial();
  std::vector<ExactScalar> v(coeffs_.size() + k);
  for (size_t i = 0; i < coeffs_.size(); ++i) v[i + k] = coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::divide_by_r() const {
  if (is_zero()) return Polynomial();
  if (!coeffs_[0].is_zero())
    throw std::logic_error("Polynomial::divide_by_r: nonzero constant term");
  std::vector<ExactScalar> v(coeffs_.begin() + 1, coeffs_.end());
  return Polynomial(std::move(v));
}

double Polynomial::evaluate(double r) const {
  double v = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) v = v * r + coeffs_[i].to_double();
  return v;
}

ExactScalar Polynomial::evaluate_exact(const Rational& r) const {
  ExactScalar v;
  ExactScalar x(r);
  for (size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i];
  return v;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs_[i].to_string() + ")";
    if (i == 1) s += "*r";
    if (i > 1) s += "*r^" + std::to_string(i);
  }
  return s;
}

Polynomial laguerre(unsigned lambda, unsigned mu) {
  if (mu > lambda) throw std::invalid_argument("laguerre: requires mu <= lambda");
  // f(r) = p(r) e^{-r} with p = r^lambda; then d/dr f = (p' - p) e^{-r}
  Polynomial p = Polynomial::monomial(ExactScalar(Rational(1)), lambda);
  for (unsigned i = 0; i < lambda; ++i) p = p.derivative() - p;
  // multiply by e^r: the polynomial p remains; now mu plain derivatives
  for (unsigned i = 0; i < mu; ++i) p = p.derivative();
  return p;
}

ExactScalar integrate_poly_exp(const Polynomial& p, const Rational& a, unsigned k) {
  if (a <= 0) throw std::invalid_argument("integrate_poly_exp: requires a > 0");
  ExactScalar out;
  for (size_t j = 0; j < p.coeffs().size(); ++j) {
    if (p.coeff(j).is_zero()) continue;
    Rational g = Rational(factorial(static_cast<unsigned>(j) + k)) /
                 pow_rational(a, static_cast<long>(j + k + 1));
    g.canonicalize();
    out += p.coeff(j) * ExactScalar(g);
  }
  return out;
}

}  // namespace hz
