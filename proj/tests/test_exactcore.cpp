#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "exact_scalar.hpp"
#include "polynomial.hpp"

using namespace hz;

namespace {

ExactScalar rat(long n, long d = 1) { return ExactScalar(make_rational(n, d)); }

// independent numeric quadrature oracle for int_0^inf r^k p(r) e^{-a r} dr
double quadrature_oracle(const Polynomial& p, double a, unsigned k) {
  double h = 1e-4, sum = 0, r = h / 2;
  while (r < 400.0 / a) {
    sum += std::pow(r, k) * p.evaluate(r) * std::exp(-a * r) * h;
    r += h;
  }
  return sum;
}

std::mt19937 rng(12345);

ExactScalar random_scalar() {
  std::uniform_int_distribution<long> coeff(-5, 5), rad(1, 12);
  ExactScalar s;
  int terms = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < terms; ++i)
    s += rat(coeff(rng), 1 + std::abs(coeff(rng))) * ExactScalar::sqrt(Rational(rad(rng)));
  return s;
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(to_string(make_rational(6, 8)) == "3/4");
  CHECK(to_string(make_rational(-6, 8)) == "-3/4");
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK(rational_from_string("192/1953125") == make_rational(192, 1953125));
  CHECK_THROWS(make_rational(1, 0));
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == Integer("2432902008176640000"));
  CHECK(pow_rational(make_rational(1, 2), -4) == Rational(16));
  CHECK(pow_rational(Rational(-1), -4) == Rational(1));
}

TEST_CASE("square-free extraction") {
  auto [f1, r1] = extract_square(Integer(8));
  CHECK(f1 == 2);
  CHECK(r1 == 2);
  auto [f2, r2] = extract_square(Integer(1));
  CHECK(f2 == 1);
  CHECK(r2 == 1);
  auto [f3, r3] = extract_square(Integer(360));  // 2^3 3^2 5
  CHECK(f3 == 10);
  CHECK(r3 == 6);
}

TEST_CASE("exact square roots") {
  CHECK(ExactScalar::sqrt(make_rational(4, 9)) == rat(2, 3));
  CHECK(ExactScalar::sqrt(make_rational(1, 3)).square().rational_value() ==
        make_rational(1, 3));
  // sqrt(8) = 2 sqrt(2)
  ExactScalar s = ExactScalar::sqrt(Rational(8));
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].coeff == Rational(2));
  CHECK(s.terms()[0].radicand == 2);
  CHECK_THROWS(ExactScalar::sqrt(Rational(-1)));
}

TEST_CASE("scalar arithmetic properties on random inputs") {
  for (int trial = 0; trial < 50; ++trial) {
    ExactScalar a = random_scalar(), b = random_scalar(), c = random_scalar();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    // normalization is idempotent: re-adding zero does not change the form
    CHECK(a + ExactScalar() == a);
  }
}

TEST_CASE("single-term square is rational") {
  ExactScalar s = rat(3, 7) * ExactScalar::sqrt(Rational(5));
  CHECK(s.square().is_rational());
  CHECK(s.square().rational_value() == make_rational(45, 49));
}

TEST_CASE("laguerre examples") {
  CHECK(laguerre(0, 0) == Polynomial({rat(1)}));
  CHECK(laguerre(1, 0) == Polynomial({rat(1), rat(-1)}));
  CHECK(laguerre(1, 1) == Polynomial({rat(-1)}));
  CHECK_THROWS(laguerre(1, 2));
}

TEST_CASE("laguerre degree and leading coefficient") {
  for (unsigned lam = 0; lam <= 12; ++lam) {
    for (unsigned mu = 0; mu <= lam; ++mu) {
      Polynomial p = laguerre(lam, mu);
      if (lam == mu) {
        CHECK(p.degree() == 0);
      } else {
        CHECK(p.degree() == lam - mu);
      }
      // leading coefficient (-1)^lam lam!/(lam-mu)!
      Rational lead = Rational(factorial(lam)) / Rational(factorial(lam - mu));
      if (lam % 2) lead = -lead;
      lead.canonicalize();
      CHECK(p.coeff(lam - mu).rational_value() == lead);
    }
  }
}

TEST_CASE("integrate_poly_exp examples") {
  Polynomial one({rat(1)});
  CHECK(integrate_poly_exp(one, Rational(1), 0).rational_value() == 1);
  CHECK(integrate_poly_exp(one, Rational(1), 2).rational_value() == 2);
  Polynomial p({rat(1), rat(-1)});  // 1 - r
  CHECK(integrate_poly_exp(p, make_rational(1, 2), 3).rational_value() == -672);
  CHECK_THROWS(integrate_poly_exp(one, Rational(0), 0));
  CHECK_THROWS(integrate_poly_exp(one, Rational(-1), 0));
}

TEST_CASE("integrate_poly_exp against numeric quadrature") {
  Polynomial p({rat(2), rat(-3, 2), rat(0), rat(1, 5)});
  double exact = integrate_poly_exp(p, make_rational(3, 4), 2).to_double();
  double numeric = quadrature_oracle(p, 0.75, 2);
  CHECK(exact == doctest::Approx(numeric).epsilon(1e-6));
}

TEST_CASE("integrate_poly_exp is linear and matches j!/a^{j+1} on monomials") {
  Rational a = make_rational(2, 3);
  for (unsigned j = 0; j <= 6; ++j) {
    Polynomial mono = Polynomial::monomial(rat(1), j);
    Rational expected = Rational(factorial(j)) / pow_rational(a, j + 1);
    expected.canonicalize();
    CHECK(integrate_poly_exp(mono, a, 0).rational_value() == expected);
  }
  Polynomial p({rat(1), rat(2)}), q({rat(0), rat(-1), rat(3)});
  CHECK(integrate_poly_exp(p + q, a, 1) ==
        integrate_poly_exp(p, a, 1) + integrate_poly_exp(q, a, 1));
}

TEST_CASE("polynomial operations") {
  Polynomial p({rat(1), rat(2)});  // 1 + 2r
  Polynomial q = p * p;
  CHECK(q.coeff(0).rational_value() == 1);
  CHECK(q.coeff(1).rational_value() == 4);
  CHECK(q.coeff(2).rational_value() == 4);
  CHECK(p.derivative() == Polynomial({rat(2)}));
  CHECK(p.scale_argument(make_rational(1, 2)) == Polynomial({rat(1), rat(1)}));
  CHECK(p.times_r_power(2).coeff(3).rational_value() == 2);
  CHECK_THROWS(p.divide_by_r());
  CHECK(p.times_r_power(1).divide_by_r() == p);
  CHECK(p.evaluate(0.5) == doctest::Approx(2.0));
}
