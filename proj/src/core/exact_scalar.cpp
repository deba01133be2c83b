#include "exact_scalar.hpp"

#include <algorithm>
#include <cmath>

namespace hz {

std::pair<Integer, Integer> extract_square(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("extract_square: input must be positive");
  Integer rem = n;
  Integer root = 1;
  Integer free = 1;
  // trial division; all radicands in this project are built from small primes
  for (unsigned long p = 2; p * p <= 1000000UL && rem > 1; p += (p == 2 ? 1 : 2)) {
    if (!mpz_divisible_ui_p(rem.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) root *= p;
    if (e & 1) free *= p;
  }
  if (rem > 1) {
    if (mpz_perfect_square_p(rem.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
      root *= s;
    } else {
      // leftover cofactor has no small square divisor; treat as square-free
      free *= rem;
    }
  }
  return {free, root};
}

ExactScalar::ExactScalar(const Rational& q) {
  if (q != 0) terms_.push_back({q, Integer(1)});
}

ExactScalar ExactScalar::sqrt(const Rational& q) {
  if (q < 0) throw std::invalid_argument("ExactScalar::sqrt: negative radicand");
  ExactScalar out;
  if (q == 0) return out;
  // p/q = p*q / q^2, so sqrt(p/q) = sqrt(p*q)/q
  Integer n = q.get_num() * q.get_den();
  auto [free, root] = extract_square(n);
  Rational coeff(root, q.get_den());
  coeff.canonicalize();
  out.terms_.push_back({coeff, free});
  return out;
}

void ExactScalar::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
  std::vector<Term> merged;
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().radicand == t.radicand) {
      merged.back().coeff += t.coeff;
      if (merged.back().coeff == 0) merged.pop_back();
    } else if (t.coeff != 0) {
      merged.push_back(t);
    }
  }
  terms_ = std::move(merged);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar out = *this;
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
  ExactScalar out;
  out.terms_ = terms_;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  out.normalize();
  return out;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  ExactScalar out;
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      Integer prod = a.radicand * b.radicand;
      auto [free, root] = extract_square(prod);
      Rational c = a.coeff * b.coeff * Rational(root);
      c.canonicalize();
      out.terms_.push_back({c, free});
    }
  }
  out.normalize();
  return out;
}

bool ExactScalar::operator==(const ExactScalar& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].radicand != o.terms_[i].radicand)
      return false;
  return true;
}

bool ExactScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

Rational ExactScalar::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].radicand == 1) return terms_[0].coeff;
  throw std::logic_error("ExactScalar: value is not rational: " + to_string());
}

double ExactScalar::to_double() const {
  double v = 0;
  for (const Term& t : terms_)
    v += t.coeff.get_d() * std::sqrt(t.radicand.get_d());
  return v;
}

std::string ExactScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i > 0) s += " + ";
    s += hz::to_string(t.coeff);
    if (t.radicand != 1) s += "*sqrt(" + t.radicand.get_str() + ")";
  }
  return s;
}

}  // namespace hz
